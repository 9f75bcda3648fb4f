#ifndef FABERLAB_ZEROS_HPP
#define FABERLAB_ZEROS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "faberlab/asymptotics.hpp"
#include "faberlab/conformal.hpp"
#include "faberlab/faber.hpp"

namespace faberlab {

// Normalized counting measure of polynomial zeros: the n roots with
// repetition, total mass 1 after division by n.
struct CountingMeasure {
    std::vector<cplx> points;
    int n = 0;
    std::vector<double> residuals;  // |p(root)| per accepted root
    bool converged = true;
};

namespace detail {

inline cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline cplx horner_deriv(const std::vector<cplx>& c, cplx z) {
    cplx acc{0.0, 0.0};
    for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i)
        acc = acc * z + static_cast<double>(i) * c[i];
    return acc;
}

// Horner sweeps in double-double. High-degree Faber coefficients reach
// 1e19 and beyond, so plain Horner noise (eps times the magnitude sum)
// can swallow genuine polynomial values near the outer zeros; the wide
// accumulator pushes the floor down by another sixteen digits.

inline cplx horner_dd(const std::vector<ddcplx>& c, cplx z) {
    ddcplx acc;
    const ddcplx zz{z};
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * zz + *it;
    return acc.value();
}

inline cplx horner_dd_deriv(const std::vector<ddcplx>& c, cplx z) {
    ddcplx acc;
    const ddcplx zz{z};
    for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i)
        acc = acc * zz + dd{static_cast<double>(i)} * c[i];
    return acc.value();
}

}  // namespace detail

// All roots by simultaneous Aberth-Ehrlich iteration. Exact zero trailing
// coefficients are deflated to roots at the origin first.
inline CountingMeasure find_zeros(const WideFaberPolynomial& poly,
                                  double tol = 1e-12, int max_iter = 400) {
    if (poly.n < 1) throw DomainError("find_zeros: degree must be >= 1");
    std::vector<ddcplx> c = poly.coeffs;
    CountingMeasure out;
    out.n = poly.n;
    // deflate exact zeros at the origin
    size_t low = 0;
    const dd zero{0.0};
    while (low < c.size() - 1 && c[low].re == zero && c[low].im == zero)
        ++low;
    for (size_t i = 0; i < low; ++i) {
        out.points.push_back({0.0, 0.0});
        out.residuals.push_back(0.0);
    }
    c.erase(c.begin(), c.begin() + low);
    const int d = static_cast<int>(c.size()) - 1;
    if (d == 0) return out;

    // initial guesses on a Cauchy-bound circle, golden-angle spaced
    double radius = 0.0;
    for (int j = 0; j < d; ++j)
        radius = std::max(
            radius,
            std::pow(std::abs((c[j] / c[d]).value()), 1.0 / (d - j)));
    radius = 1.0 + radius;
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    std::vector<cplx> r(d);
    for (int i = 0; i < d; ++i)
        r[i] = std::polar(radius * (0.7 + 0.3 * ((i * 37) % 97) / 97.0),
                          golden * i + 0.1);

    // a root counts as found once its residual reaches the backward-error
    // floor of the compensated evaluation at that point
    auto eval_scale = [&](cplx z) {
        double s = 0.0, p = 1.0;
        const double az = std::abs(z);
        for (int j = 0; j <= d; ++j) {
            s += abs_estimate(c[j]) * p;
            p *= az;
        }
        return s;
    };
    auto floor_at = [&](cplx z) {
        // double-double Horner error bound: one unit round-off of the
        // wide format per coefficient, weighted by the magnitude sum
        return 3e-32 * d * eval_scale(z) + 1e-280;
    };
    auto at_floor = [&](cplx z, double pv) { return pv <= floor_at(z); };
    std::vector<char> done(d, 0);
    bool converged = false;
    std::mt19937_64 rng(0x5eedul + d);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int round = 0; round < 4 && !converged; ++round) {
        for (int it = 0; it < max_iter; ++it) {
            double max_step = 0.0;
            bool all_done = true;
            for (int i = 0; i < d; ++i) {
                if (done[i]) continue;
                const cplx p = detail::horner_dd(c, r[i]);
                if (at_floor(r[i], std::abs(p))) {
                    done[i] = 1;
                    continue;
                }
                all_done = false;
                const cplx dp = detail::horner_dd_deriv(c, r[i]);
                cplx w = (dp == cplx{0.0, 0.0}) ? cplx{tol, tol} : p / dp;
                cplx s{0.0, 0.0};
                for (int j = 0; j < d; ++j)
                    if (j != i) s += 1.0 / (r[i] - r[j]);
                const cplx denom = 1.0 - w * s;
                cplx step = (std::abs(denom) < 1e-300) ? w : w / denom;
                // damp steps that would increase the residual; if damping
                // cannot help, take the full step rather than stall
                cplx cand = r[i] - step;
                double pn = std::abs(detail::horner_dd(c, cand));
                const cplx full = cand;
                int h = 0;
                for (; pn > std::abs(p) && h < 6; ++h) {
                    step *= 0.5;
                    cand = r[i] - step;
                    pn = std::abs(detail::horner_dd(c, cand));
                }
                r[i] = (h == 6 && pn > std::abs(p)) ? full : cand;
                max_step = std::max(max_step, std::abs(step) /
                                                  (1.0 + std::abs(r[i])));
            }
            if (all_done || max_step < tol) break;
        }
        // verify every point: its residual must be explainable by either
        // the evaluation floor or the step tolerance of the iteration;
        // re-seed the stragglers and go again
        converged = true;
        for (int i = 0; i < d; ++i) {
            const double pv = std::abs(detail::horner_dd(c, r[i]));
            const double dv =
                std::abs(detail::horner_dd_deriv(c, r[i]));
            const double accept =
                std::max(100.0 * floor_at(r[i]),
                         dv * 100.0 * tol * (1.0 + std::abs(r[i])));
            if (pv <= accept) continue;
            done[i] = 0;
            r[i] = std::polar((0.3 + 0.8 * ur(rng)) * radius,
                              2.0 * M_PI * ur(rng));
            converged = false;
        }
    }
    out.converged = converged;
    for (int i = 0; i < d; ++i) {
        out.points.push_back(r[i]);
        out.residuals.push_back(std::abs(detail::horner_dd(c, r[i])));
    }
    return out;
}

inline CountingMeasure find_zeros(const FaberPolynomial& poly,
                                  double tol = 1e-12, int max_iter = 400) {
    WideFaberPolynomial wide;
    wide.n = poly.n;
    wide.coeffs.reserve(poly.coeffs.size());
    for (const auto& cc : poly.coeffs) wide.coeffs.push_back(ddcplx{cc});
    return find_zeros(wide, tol, max_iter);
}

// Zeros of a lemniscate Faber polynomial through its natural factored
// form. F_{sm+l}(z) = z^l Q_m(z^s), and recentred at the level-curve
// focus, Q_m(1 + v) = sum_k b_k v^k has coefficients of order one: b_0 =
// (a - m) (-1)^m C(a, m) / a and b_k = (m + 1 - k) b_{k-1} / (k - a)
// with a = n/s, a consequence of the first-order equation satisfied by
// the truncated binomial series. Root finding on b is perfectly
// conditioned, where the monomial-basis coefficients (1e19 and up by
// n = 200) drown the outer zeros in evaluation noise.
inline CountingMeasure find_zeros_lemniscate(int s, int n, double tol = 1e-12,
                                             int max_iter = 400) {
    if (s < 2) throw DomainError("find_zeros_lemniscate: s must be >= 2");
    if (n < 1) throw DomainError("find_zeros_lemniscate: degree must be >= 1");
    const int m = n / s, l = n % s;
    CountingMeasure out;
    out.n = n;
    for (int i = 0; i < l; ++i) {
        out.points.push_back({0.0, 0.0});
        out.residuals.push_back(0.0);
    }
    if (m == 0) return out;
    if (l == 0) {
        // F_n = (z^s - 1)^m exactly: the s-th roots of unity, each m-fold
        for (int k = 0; k < s; ++k)
            for (int i = 0; i < m; ++i) {
                out.points.push_back(std::polar(1.0, 2.0 * M_PI * k / s));
                out.residuals.push_back(0.0);
            }
        return out;
    }
    const double a = static_cast<double>(n) / s;
    FaberPolynomial B;
    B.n = m;
    B.coeffs.assign(m + 1, cplx{0.0, 0.0});
    double bk = (a - m) * (m % 2 ? -1.0 : 1.0) * gen_binomial(a, m) / a;
    B.coeffs[0] = bk;
    for (int k = 1; k <= m; ++k) {
        bk *= (m + 1 - k) / (k - a);
        B.coeffs[k] = bk;
    }
    const auto inner = find_zeros(B, tol, max_iter);
    out.converged = inner.converged;
    for (size_t i = 0; i < inner.points.size(); ++i) {
        const cplx u = 1.0 + inner.points[i];
        const double ru = std::pow(std::abs(u), 1.0 / s);
        const double au = std::arg(u) / s;
        for (int k = 0; k < s; ++k) {
            const cplx z = std::polar(ru, au + 2.0 * M_PI * k / s);
            out.points.push_back(z);
            out.residuals.push_back(std::pow(std::abs(z), l) *
                                    inner.residuals[i]);
        }
    }
    return out;
}

// Moments of the equilibrium measure, the pushforward of normalized arc
// length on the unit circle: m_k = (1/2pi) \int psi(e^{i th})^k d th.
// Equal to the constant Laurent coefficient of psi^k, assembled here by
// series convolution; boundary quadrature would stall near 1e-4 accuracy
// because the corners put branch points on the contour.
namespace detail {

// Laurent coefficient arrays of psi^k, exponent (k - index), truncated
// below exponent -K. Index 0 holds the top power w^k.
inline std::vector<std::vector<cplx>> psi_power_series(const MapBundle& b,
                                                       int k_max, int K) {
    std::vector<cplx> psi_c(K + 2);
    psi_c[0] = b.map.leading;
    psi_c[1] = b.map.constant;
    for (int j = 1; j <= K; ++j) psi_c[j + 1] = b.map.tail[j - 1];
    std::vector<std::vector<cplx>> pw(k_max + 1);
    pw[0] = {cplx{1.0, 0.0}};
    for (int k = 1; k <= k_max; ++k) {
        const auto& cur = pw[k - 1];
        std::vector<cplx> nx(
            std::min(cur.size() + psi_c.size() - 1,
                     static_cast<size_t>(k + K + 1)),
            cplx{0.0, 0.0});
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = 0; j < psi_c.size(); ++j)
                if (i + j < nx.size()) nx[i + j] += cur[i] * psi_c[j];
        pw[k] = std::move(nx);
    }
    return pw;
}

}  // namespace detail

inline std::vector<cplx> equilibrium_moments(const MapBundle& b, int k_max,
                                             int terms = 2048) {
    if (terms < 512) throw DomainError("equilibrium_moments: terms >= 512");
    const int K = std::min(b.map.truncation(), terms);
    const auto pw = detail::psi_power_series(b, k_max, K);
    std::vector<cplx> mom(k_max + 1, cplx{0.0, 0.0});
    for (int k = 0; k <= k_max; ++k)
        mom[k] = (static_cast<size_t>(k) < pw[k].size()) ? pw[k][k]
                                                         : cplx{0.0, 0.0};
    return mom;
}

// Radial counterparts r_k = \int |z|^{2k} d mu, by Parseval on the
// boundary values of psi^k. The holomorphic moments alone cannot separate
// measures with the same exterior potential (the fixed-zero subsequence
// measure matches every m_k of mu), so weak* comparisons need these too.
inline std::vector<double> equilibrium_radial_moments(const MapBundle& b,
                                                      int k_max,
                                                      int terms = 2048) {
    if (terms < 512)
        throw DomainError("equilibrium_radial_moments: terms >= 512");
    const int K = std::min(b.map.truncation(), terms);
    const auto pw = detail::psi_power_series(b, k_max, K);
    std::vector<double> rad(k_max + 1, 0.0);
    for (int k = 0; k <= k_max; ++k)
        for (const auto& q : pw[k]) rad[k] += std::norm(q);
    return rad;
}

// Moment-based proxy for weak* distance: max_k |m_k(nu) - m_k(mu)|.
// Zeros with |z| > 1e3 are treated as suspect and excluded (reported via
// the returned count).
struct MeasureDistance {
    double value;
    int discarded;
};

inline MeasureDistance measure_distance(const CountingMeasure& nu,
                                        const std::vector<cplx>& mu_moments,
                                        int k_max) {
    k_max = std::min<int>(k_max, static_cast<int>(mu_moments.size()) - 1);
    std::vector<cplx> pts;
    int discarded = 0;
    for (const auto& z : nu.points) {
        if (std::abs(z) > 1e3) {
            ++discarded;
            continue;
        }
        pts.push_back(z);
    }
    double worst = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        cplx mk{0.0, 0.0};
        for (const auto& z : pts) mk += std::pow(z, k);
        mk /= static_cast<double>(nu.n);
        worst = std::max(worst, std::abs(mk - mu_moments[k]));
    }
    return {worst, discarded};
}

// Variant that also compares the radial moments; see
// equilibrium_radial_moments for why the holomorphic ones can tie.
inline MeasureDistance measure_distance(const CountingMeasure& nu,
                                        const std::vector<cplx>& mu_moments,
                                        const std::vector<double>& mu_radial,
                                        int k_max) {
    MeasureDistance out = measure_distance(nu, mu_moments, k_max);
    const int r_max =
        std::min<int>(k_max, static_cast<int>(mu_radial.size()) - 1);
    for (int k = 1; k <= r_max; ++k) {
        double rk = 0.0;
        for (const auto& z : nu.points) {
            if (std::abs(z) > 1e3) continue;
            rk += std::pow(std::norm(z), k);
        }
        rk /= static_cast<double>(nu.n);
        out.value = std::max(out.value, std::abs(rk - mu_radial[k]));
    }
    return out;
}

// Rational-phase accumulation problem data: theta_k = p_k/q_k exactly.
struct AccumulationProblem {
    std::vector<cplx> A_hat;
    std::vector<cplx> poles;           // z_k
    std::vector<long> p, q;            // reduced theta_k = p_k/q_k
    std::vector<bool> irrational;      // per corner
    long lcm_q = 1;
};

inline long gcd_l(long a, long b) { return std::gcd(a, b); }

// Builds the accumulation problem for the minimal corners of a bundle.
// Rationality comes exclusively from the declared map metadata.
inline AccumulationProblem make_accumulation_problem(const MapBundle& b) {
    const InteriorModel m = make_interior_model(b);
    AccumulationProblem prob;
    prob.A_hat = m.A_hat;
    prob.poles = m.poles;
    const auto& base = b.corners.front().theta_over_pi_rational;
    for (int k = 0; k < b.u; ++k) {
        const auto& decl = b.corners[k].theta_over_pi_rational;
        if (decl && base) {
            // theta_k = (Theta_k - Theta_1)/(2pi) mod 1, as an exact rational
            long num = decl->first * base->second - base->first * decl->second;
            long den = 2 * decl->second * base->second;
            num %= den;
            if (num <= 0) num += den;  // theta in (0, 1]
            const long g = gcd_l(num, den);
            prob.p.push_back(num / g);
            prob.q.push_back(den / g);
            prob.irrational.push_back(false);
        } else {
            prob.p.push_back(0);
            prob.q.push_back(1);
            prob.irrational.push_back(true);
        }
    }
    prob.lcm_q = 1;
    for (size_t k = 0; k < prob.q.size(); ++k)
        if (!prob.irrational[k])
            prob.lcm_q = prob.lcm_q / gcd_l(prob.lcm_q, prob.q[k]) * prob.q[k];
    return prob;
}

struct A3Violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Interior accumulation points when all theta_k are rational: for each
// l = 1..q, clear denominators in sum_k A^_k e^{2pi i s_kl / q_k}/(t - z_k)
// = 0 and keep the roots lying strictly inside G.
inline std::vector<cplx> accumulation_points_rational(
    const AccumulationProblem& prob, const MapBundle& b) {
    for (bool irr : prob.irrational)
        if (irr)
            throw DomainError(
                "accumulation_points_rational: all theta_k must be rational");
    const int u = static_cast<int>(prob.A_hat.size());
    std::vector<cplx> found;
    bool any_nondegenerate = false;
    for (long l = 1; l <= prob.lcm_q; ++l) {
        // numerator polynomial sum_k B_k prod_{j != k} (t - z_j)
        std::vector<cplx> num(u, cplx{0.0, 0.0});  // degree <= u-1
        double scale = 0.0;
        for (int k = 0; k < u; ++k) {
            const long skl = (l * prob.p[k]) % prob.q[k];
            const cplx B = prob.A_hat[k] *
                           std::polar(1.0, 2.0 * M_PI * skl / prob.q[k]);
            scale += std::abs(B);
            std::vector<cplx> pr{cplx{1.0, 0.0}};  // prod_{j!=k}(t - z_j)
            for (int j = 0; j < u; ++j) {
                if (j == k) continue;
                std::vector<cplx> nx(pr.size() + 1, cplx{0.0, 0.0});
                for (size_t i = 0; i < pr.size(); ++i) {
                    nx[i + 1] += pr[i];
                    nx[i] -= prob.poles[j] * pr[i];
                }
                pr = std::move(nx);
            }
            for (size_t i = 0; i < pr.size(); ++i) num[i] += B * pr[i];
        }
        double cnorm = 0.0;
        for (const auto& cc : num) cnorm += std::abs(cc);
        if (cnorm < 1e-12 * (scale + 1.0)) continue;  // degenerate equation
        any_nondegenerate = true;
        // trim leading zeros
        while (num.size() > 1 &&
               std::abs(num.back()) < 1e-12 * cnorm)
            num.pop_back();
        if (num.size() == 1) continue;  // nonzero constant: no roots
        FaberPolynomial p;
        p.n = static_cast<int>(num.size()) - 1;
        p.coeffs = num;
        const auto roots = find_zeros(p, 1e-13, 200);
        for (const auto& t : roots.points)
            if (is_interior(b, t)) found.push_back(t);
    }
    if (!any_nondegenerate)
        throw A3Violation(
            "all accumulation equations degenerate: condition A.3 violated");
    // dedupe across l
    std::vector<cplx> out;
    for (const auto& t : found) {
        bool dup = false;
        for (const auto& s : out)
            if (std::abs(t - s) < 1e-8) dup = true;
        if (!dup) out.push_back(t);
    }
    return out;
}

// Locus descriptor for the u = 2 irrational-phase case: the set
// |A^_1 (t - z_2)| = |A^_2 (t - z_1)| is a line (equal moduli) or an
// Apollonius circle.
struct AccumulationLocus {
    enum class Kind { line, circle } kind;
    cplx point;       // a point on the line / circle center
    cplx direction;   // unit direction (line only)
    double radius = 0.0;  // circle only
    std::vector<cplx> interior_samples;
};

inline AccumulationLocus accumulation_locus_u2_irrational(
    const AccumulationProblem& prob, const MapBundle& b) {
    if (prob.A_hat.size() != 2)
        throw DomainError("accumulation_locus_u2_irrational: requires u = 2");
    const double a1 = std::abs(prob.A_hat[0]), a2 = std::abs(prob.A_hat[1]);
    const cplx z1 = prob.poles[0], z2 = prob.poles[1];
    AccumulationLocus loc;
    if (std::abs(a1 - a2) <= 1e-9 * (a1 + a2)) {
        loc.kind = AccumulationLocus::Kind::line;
        loc.point = 0.5 * (z1 + z2);
        cplx dir = cplx{0.0, 1.0} * (z2 - z1);
        loc.direction = dir / std::abs(dir);
        for (int i = -200; i <= 200; ++i) {
            const cplx t = loc.point + loc.direction * (i * 0.01);
            if (is_interior(b, t)) loc.interior_samples.push_back(t);
        }
    } else {
        // |t - z2| = (a2/a1) |t - z1|
        const double rho = a2 / a1;
        const double r2 = rho * rho;
        loc.kind = AccumulationLocus::Kind::circle;
        loc.point = (z2 - r2 * z1) / (1.0 - r2);
        loc.radius = rho * std::abs(z2 - z1) / std::abs(1.0 - r2);
        for (int i = 0; i < 400; ++i) {
            const cplx t = loc.point +
                           std::polar(loc.radius, 2.0 * M_PI * i / 400.0);
            if (is_interior(b, t)) loc.interior_samples.push_back(t);
        }
    }
    return loc;
}

// Zeros found in the exterior region |phi(z)| >= 1 + margin; expected
// empty for large n (zero-free exterior).
struct ZeroFreeReport {
    std::vector<cplx> offenders;
    double margin;
};

inline ZeroFreeReport zero_free_check(const CountingMeasure& nu,
                                      const MapBundle& b, double margin) {
    ZeroFreeReport rep;
    rep.margin = margin;
    for (const auto& z : nu.points) {
        try {
            const cplx w = exterior_inverse(b, z);
            if (std::abs(w) >= 1.0 + margin) rep.offenders.push_back(z);
        } catch (const DomainError&) {
            // interior or boundary: fine
        }
    }
    return rep;
}

}  // namespace faberlab

#endif
