#ifndef FABERLAB_SPECIAL_HPP
#define FABERLAB_SPECIAL_HPP

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "faberlab/quadrature.hpp"

namespace faberlab {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameters of the moment integral
//   alpha_{beta,m}(n) = \int_0^1 x^n (1-x)^beta log^m(1-x) dx.
struct AlphaParams {
    double beta;  // exponent, > -1
    int m;        // log power, 0..8
    int n;        // monomial degree, >= 0

    void validate() const {
        if (!(beta > -1.0)) throw DomainError("alpha: beta must be > -1");
        if (m < 0 || m > 8) throw DomainError("alpha: m must be in [0, 8]");
        if (n < 0) throw DomainError("alpha: n must be >= 0");
    }
};

// ln Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    static constexpr double g = 7.0;
    static constexpr double coef[9] = {
        0.99999999999980993,    676.5203681218851,    -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,  12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection: Gamma(x)Gamma(1-x) = pi / sin(pi x)
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double sum = coef[0];
    for (int i = 1; i < 9; ++i) sum += coef[i] / (z + i);
    const double t = z + g + 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t +
           std::log(sum);
}

// Generalized binomial coefficient a(a-1)...(a-b+1)/b! (falling factorial
// form, total for integer b >= 0).
inline double gen_binomial(double a, int b) {
    if (b < 0) throw DomainError("gen_binomial: b must be >= 0");
    double num = 1.0, den = 1.0;
    for (int j = 0; j < b; ++j) {
        num *= a - j;
        den *= j + 1;
    }
    return num / den;
}

// Generalized binomial Gamma(a+1)/[Gamma(b+1)Gamma(a-b+1)] for real b,
// via log-gamma with sign tracking through the reflection formula.
inline double gen_binomial_real(double a, double b) {
    double lg = 0.0;
    double sign = 1.0;
    auto acc = [&](double x, double s) {
        // accumulate s * lnGamma(x), handling x <= 0 by reflection
        if (x > 0.0) {
            lg += s * log_gamma(x);
        } else {
            const double sp = std::sin(M_PI * x);
            if (sp == 0.0) throw DomainError("gen_binomial_real: pole of Gamma");
            lg += s * (std::log(M_PI / std::abs(sp)) - log_gamma(1.0 - x));
            if (sp < 0.0 && static_cast<int>(std::lround(s)) % 2 != 0)
                sign = -sign;
        }
    };
    acc(a + 1.0, 1.0);
    acc(b + 1.0, -1.0);
    acc(a - b + 1.0, -1.0);
    return sign * std::exp(lg);
}

namespace detail {

// Per-beta memo of the alpha recurrence table. The table is rectangular in
// (m, n); extending in n is O(n) per m level.
class AlphaTable {
public:
    explicit AlphaTable(double beta) : beta_(beta) {}

    double get(int m, int n) {
        std::lock_guard<std::mutex> lock(mu_);
        if (static_cast<int>(rows_.size()) <= m) rows_.resize(m + 1);
        for (int mm = 0; mm <= m; ++mm) extend(mm, n);
        return rows_[m][n];
    }

private:
    void extend(int m, int n) {
        auto& row = rows_[m];
        if (static_cast<int>(row.size()) > n) return;
        if (row.empty()) {
            if (m == 0) {
                row.push_back(std::exp(log_gamma(beta_ + 1.0) -
                                       log_gamma(beta_ + 2.0)));
            } else {
                double f = 1.0;
                for (int j = 2; j <= m; ++j) f *= j;
                row.push_back((m % 2 ? -1.0 : 1.0) * f /
                              std::pow(beta_ + 1.0, m + 1));
            }
        }
        for (int k = static_cast<int>(row.size()); k <= n; ++k) {
            if (m == 0) {
                // alpha_{beta,0}(n) = B(n+1, beta+1)
                row.push_back(std::exp(log_gamma(beta_ + 1.0) +
                                       log_gamma(k + 1.0) -
                                       log_gamma(k + beta_ + 2.0)));
            } else {
                const double prev = rows_[m - 1][k];
                row.push_back((k * row[k - 1] - m * prev) / (k + beta_ + 1.0));
            }
        }
    }

    double beta_;
    std::mutex mu_;
    std::vector<std::vector<double>> rows_;
};

inline AlphaTable& alpha_table(double beta) {
    static std::mutex mu;
    static std::map<double, AlphaTable*> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto it = tables.find(beta);
    if (it == tables.end())
        it = tables.emplace(beta, new AlphaTable(beta)).first;
    return *it->second;
}

}  // namespace detail

// alpha_{beta,m}(n) by the exact recurrence
//   alpha_{beta,m+1}(n) = [n alpha_{beta,m+1}(n-1) - (m+1) alpha_{beta,m}(n)]
//                         / (n + beta + 1),
// seeded with the Beta-function row m = 0 and the closed n = 0 column.
inline double alpha(const AlphaParams& p) {
    p.validate();
    if (p.n > 100000) throw DomainError("alpha: n capped at 1e5");
    return detail::alpha_table(p.beta).get(p.m, p.n);
}

// Leading asymptotic Gamma(beta+1) Gamma(n+1) (-log n)^m / Gamma(n+beta+2),
// without the O(1/log n) correction. Exact for m = 0.
inline double alpha_asymptotic(const AlphaParams& p) {
    p.validate();
    if (p.n < 2) throw DomainError("alpha_asymptotic: requires n >= 2");
    const double ln = std::log(static_cast<double>(p.n));
    const double mag = std::exp(log_gamma(p.beta + 1.0) + log_gamma(p.n + 1.0) -
                                log_gamma(p.n + p.beta + 2.0));
    return mag * std::pow(-ln, p.m);
}

// Independent check of alpha(): adaptive quadrature of the defining integral
// under x = 1 - e^{-t}, i.e. \int_0^\infty (1-e^{-t})^n e^{-(beta+1)t} (-t)^m dt.
inline double alpha_quadrature_oracle(const AlphaParams& p, int nodes = 256) {
    p.validate();
    if (nodes < 64)
        throw DomainError("alpha_quadrature_oracle: nodes must be >= 64");
    const double b1 = p.beta + 1.0;
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0 * t;
        const double lx = p.n * std::log1p(-std::exp(-t));
        return std::exp(lx - b1 * t) * std::pow(-t, p.m);
    };
    // upper cutoff where e^{-(beta+1)t} t^m is negligible
    double T = 60.0 / b1;
    for (int it = 0; it < 3; ++it)
        T = (60.0 + p.m * std::log(std::max(T, 2.0))) / b1;
    T = std::max(T, std::log(static_cast<double>(p.n) + 2.0) + 60.0 / b1);
    return integrate_adaptive(integrand, 0.0, T, 1e-11, 1e-300, 48,
                              std::max(nodes, 20000));
}

}  // namespace faberlab

#endif
