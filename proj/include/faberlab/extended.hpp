#ifndef FABERLAB_EXTENDED_HPP
#define FABERLAB_EXTENDED_HPP

#include <cmath>
#include <complex>

namespace faberlab {

// Double-double arithmetic: an unevaluated sum hi + lo carrying roughly 32
// significant digits. High-degree Faber coefficients reach 1e19, so plain
// doubles cannot pin the polynomial down well enough for its outer zeros;
// carrying coefficients and Horner sweeps in this type removes that wall.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

namespace ddops {

inline void two_sum_fast(double a, double b, double& s, double& e) {
    // requires |a| >= |b|
    s = a + b;
    e = b - (s - a);
}

inline void two_sum_full(double a, double b, double& s, double& e) {
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

inline void two_prod_fma(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

}  // namespace ddops

inline dd operator+(dd a, dd b) {
    double s, e;
    ddops::two_sum_full(a.hi, b.hi, s, e);
    e += a.lo + b.lo;
    double hi, lo;
    ddops::two_sum_fast(s, e, hi, lo);
    return dd{hi, lo};
}

inline dd operator-(dd a) { return dd{-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    double p, e;
    ddops::two_prod_fma(a.hi, b.hi, p, e);
    e += a.hi * b.lo + a.lo * b.hi;
    double hi, lo;
    ddops::two_sum_fast(p, e, hi, lo);
    return dd{hi, lo};
}

inline dd operator/(dd a, dd b) {
    const double q1 = a.hi / b.hi;
    dd r = a - b * dd{q1};
    const double q2 = r.hi / b.hi;
    r = r - b * dd{q2};
    const double q3 = r.hi / b.hi;
    double hi, lo;
    ddops::two_sum_full(q1, q2, hi, lo);
    dd q{hi, lo};
    return q + dd{q3};
}

inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }

// Complex double-double built from components.
struct ddcplx {
    dd re;
    dd im;

    ddcplx() = default;
    ddcplx(dd r, dd i) : re(r), im(i) {}
    ddcplx(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> value() const { return {re.value(), im.value()}; }
};

inline ddcplx operator+(ddcplx a, ddcplx b) {
    return ddcplx{a.re + b.re, a.im + b.im};
}

inline ddcplx operator-(ddcplx a, ddcplx b) {
    return ddcplx{a.re - b.re, a.im - b.im};
}

inline ddcplx operator*(ddcplx a, ddcplx b) {
    return ddcplx{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline ddcplx operator*(dd a, ddcplx b) {
    return ddcplx{a * b.re, a * b.im};
}

inline ddcplx operator/(ddcplx a, dd b) {
    return ddcplx{a.re / b, a.im / b};
}

inline ddcplx operator/(ddcplx a, ddcplx b) {
    const dd n = b.re * b.re + b.im * b.im;
    return ddcplx{(a.re * b.re + a.im * b.im) / n,
                  (a.im * b.re - a.re * b.im) / n};
}

inline double abs_estimate(ddcplx a) { return std::abs(a.value()); }

}  // namespace faberlab

#endif
