#ifndef FABERLAB_FABER_HPP
#define FABERLAB_FABER_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "faberlab/conformal.hpp"
#include "faberlab/extended.hpp"
#include "faberlab/special.hpp"

namespace faberlab {

// Degree-n Faber polynomial in the monomial basis, coefficients ascending.
struct FaberPolynomial {
    int n = 0;
    std::vector<cplx> coeffs;  // size n + 1
};

// Horner evaluation.
inline cplx eval_faber(const FaberPolynomial& p, cplx z) {
    cplx acc{0.0, 0.0};
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

// F_0, ..., F_{n_max} from the generating-function recurrence. Writing
// psi(w) = c w + c0 + sum_{j>=1} c_j w^{-j} and matching powers of w in
// psi'(w) = (psi(w) - z) sum_n F_n(z) w^{-n-1} gives
//   c F_{n+1}(z) = (z - c0) F_n(z) - sum_{j=1}^{n} c_j F_{n-j}(z) - n c_n.
inline std::vector<FaberPolynomial> faber_sequence(const MapBundle& b,
                                                   int n_max) {
    if (n_max < 0) throw DomainError("faber_sequence: n_max must be >= 0");
    const int K = b.map.truncation();
    if (n_max >= 1 && K < n_max - 1)
        throw PrecisionError(
            "faber_sequence: Laurent truncation too small, need K >= " +
                std::to_string(n_max - 1),
            n_max - 1);
    const cplx c = b.map.leading;
    const cplx c0 = b.map.constant;
    std::vector<FaberPolynomial> F(n_max + 1);
    F[0].n = 0;
    F[0].coeffs = {cplx{1.0, 0.0}};
    for (int n = 0; n < n_max; ++n) {
        FaberPolynomial next;
        next.n = n + 1;
        next.coeffs.assign(n + 2, cplx{0.0, 0.0});
        // (z - c0) F_n
        for (int i = 0; i <= n; ++i) {
            next.coeffs[i + 1] += F[n].coeffs[i];
            next.coeffs[i] -= c0 * F[n].coeffs[i];
        }
        // - sum_{j=1}^{n} c_j F_{n-j}
        for (int j = 1; j <= n && j <= K; ++j) {
            const cplx cj = b.map.tail[j - 1];
            if (cj == cplx{0.0, 0.0}) continue;
            for (int i = 0; i <= n - j; ++i)
                next.coeffs[i] -= cj * F[n - j].coeffs[i];
        }
        // - n c_n
        if (n >= 1 && n <= K)
            next.coeffs[0] -= static_cast<double>(n) * b.map.tail[n - 1];
        for (auto& cc : next.coeffs) cc /= c;
        F[n + 1] = std::move(next);
    }
    return F;
}

// Explicit lemniscate Faber polynomial: for n = s m + l, 0 <= l < s,
//   F_{sm+l}(z) = sum_{j=0}^m (-1)^j C(m + l/s, j) z^{s(m-j)+l}.
inline FaberPolynomial faber_lemniscate_closed(int s, int n) {
    if (s < 2) throw DomainError("faber_lemniscate_closed: s must be >= 2");
    if (n < 0) throw DomainError("faber_lemniscate_closed: n must be >= 0");
    const int m = n / s, l = n % s;
    FaberPolynomial p;
    p.n = n;
    p.coeffs.assign(n + 1, cplx{0.0, 0.0});
    for (int j = 0; j <= m; ++j) {
        const double c = gen_binomial(m + static_cast<double>(l) / s, j);
        p.coeffs[s * (m - j) + l] += (j % 2 ? -c : c);
    }
    return p;
}

// Wide-coefficient polynomial for high degrees. Coefficients of F_n grow
// past 1e19 by n = 200, at which point double rounding alone displaces the
// outermost zeros by order one; double-double coefficients keep the
// represented polynomial close enough to the true one for root work.
struct WideFaberPolynomial {
    int n = 0;
    std::vector<ddcplx> coeffs;  // size n + 1

    FaberPolynomial rounded() const {
        FaberPolynomial p;
        p.n = n;
        p.coeffs.reserve(coeffs.size());
        for (const auto& cc : coeffs) p.coeffs.push_back(cc.value());
        return p;
    }
};

inline cplx eval_faber(const WideFaberPolynomial& p, cplx z) {
    ddcplx acc;
    const ddcplx zz{z};
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        acc = acc * zz + *it;
    return acc.value();
}

// faber_lemniscate_closed carried out in double-double throughout; the
// binomials C(m + l/s, j) come from the ratio recurrence.
inline WideFaberPolynomial faber_lemniscate_closed_wide(int s, int n) {
    if (s < 2)
        throw DomainError("faber_lemniscate_closed_wide: s must be >= 2");
    if (n < 0)
        throw DomainError("faber_lemniscate_closed_wide: n must be >= 0");
    const int m = n / s, l = n % s;
    WideFaberPolynomial p;
    p.n = n;
    p.coeffs.assign(n + 1, ddcplx{});
    const dd a = dd{static_cast<double>(m)} +
                 dd{static_cast<double>(l)} / dd{static_cast<double>(s)};
    dd c{1.0};
    for (int j = 0; j <= m; ++j) {
        const dd signed_c = (j % 2) ? -c : c;
        p.coeffs[s * (m - j) + l] =
            p.coeffs[s * (m - j) + l] + ddcplx{signed_c, dd{0.0}};
        c = c * (a - dd{static_cast<double>(j)}) /
            dd{static_cast<double>(j + 1)};
    }
    return p;
}

// faber_sequence with the recurrence run in double-double. The Laurent
// data stays double (it is only known to that accuracy anyway); what this
// buys is a coefficient set consistent with one fixed nearby map instead
// of one polluted by the n-fold accumulation of recurrence round-off.
inline std::vector<WideFaberPolynomial> faber_sequence_wide(
    const MapBundle& b, int n_max) {
    if (n_max < 0)
        throw DomainError("faber_sequence_wide: n_max must be >= 0");
    const int K = b.map.truncation();
    if (n_max >= 1 && K < n_max - 1)
        throw PrecisionError(
            "faber_sequence_wide: Laurent truncation too small, need K >= " +
                std::to_string(n_max - 1),
            n_max - 1);
    const ddcplx c{b.map.leading};
    const ddcplx c0{b.map.constant};
    std::vector<WideFaberPolynomial> F(n_max + 1);
    F[0].n = 0;
    F[0].coeffs = {ddcplx{cplx{1.0, 0.0}}};
    for (int n = 0; n < n_max; ++n) {
        WideFaberPolynomial next;
        next.n = n + 1;
        next.coeffs.assign(n + 2, ddcplx{});
        for (int i = 0; i <= n; ++i) {
            next.coeffs[i + 1] = next.coeffs[i + 1] + F[n].coeffs[i];
            next.coeffs[i] = next.coeffs[i] - c0 * F[n].coeffs[i];
        }
        for (int j = 1; j <= n && j <= K; ++j) {
            const cplx cj = b.map.tail[j - 1];
            if (cj == cplx{0.0, 0.0}) continue;
            const ddcplx cjd{cj};
            for (int i = 0; i <= n - j; ++i)
                next.coeffs[i] = next.coeffs[i] - cjd * F[n - j].coeffs[i];
        }
        if (n >= 1 && n <= K)
            next.coeffs[0] =
                next.coeffs[0] -
                dd{static_cast<double>(n)} * ddcplx{b.map.tail[n - 1]};
        for (auto& cc : next.coeffs) cc = cc / c;
        F[n + 1] = std::move(next);
    }
    return F;
}

// Contour-integral oracle for F_n(z): trapezoidal discretization of
// (1/2pi i) \oint t^n psi'(t) dt / (psi(t) - z) on |t| = R, plus phi(z)^n
// when z lies exterior to the level curve L_R.
inline cplx contour_oracle(const MapBundle& b, int n, cplx z, double R = 1.2,
                           int M = 0) {
    if (!(R > 1.0)) throw DomainError("contour_oracle: R must be > 1");
    // locate the pole phi(z) of the integrand, if z is exterior
    std::optional<cplx> w;
    try {
        w = exterior_inverse(b, z);
    } catch (const DomainError&) {
    }
    // the trapezoid rule converges geometrically in the distance ratio
    // between the contour and the nearest singularity; a pole sitting on
    // or near |t| = R would stall it, so nudge the contour away while
    // keeping R small (round-off grows like R^{n+1} eps)
    if (w) {
        const double r0 = std::abs(*w);
        if (r0 / R > 0.78 && r0 / R < 1.28)
            R = (r0 / 1.15 > 1.05) ? std::min(R, r0 / 1.15)
                                   : std::max(R, r0 * 1.15);
    }
    if (M <= 0) {
        double need = std::max(512.0, 8.0 * (n + b.map.truncation()));
        // the |t| = 1 branch points of psi
        need = std::max(need, 35.0 * std::log(10.0) / std::log(R));
        // a pole outside the contour carries an n-th power residue scale
        if (w && std::abs(*w) > R) {
            const double r0 = std::abs(*w);
            need = std::max(need, (35.0 * std::log(10.0) +
                                   n * std::log(r0)) /
                                      std::log(r0 / R));
        }
        M = static_cast<int>(std::min(need, 4e5)) + 1;
    }
    cplx acc{0.0, 0.0};
    for (int m = 0; m < M; ++m) {
        const cplx t = R * std::polar(1.0, 2.0 * M_PI * m / M);
        const cplx den = b.psi(t) - z;
        if (std::abs(den) < 1e-8)
            throw NumericError(
                "contour_oracle: z lies on the level curve L_R; choose a "
                "different R");
        acc += std::pow(t, n + 1) * b.dpsi(t) / den;
    }
    acc /= static_cast<double>(M);
    // exterior correction per the Cauchy split of the generating integral
    if (w && std::abs(*w) > R) acc += std::pow(*w, n);
    return acc;
}

}  // namespace faberlab

#endif
