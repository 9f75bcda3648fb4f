#ifndef FABERLAB_CONFORMAL_HPP
#define FABERLAB_CONFORMAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "faberlab/special.hpp"

namespace faberlab {

using cplx = std::complex<double>;

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionError : std::runtime_error {
    int required_truncation;
    PrecisionError(const std::string& msg, int k)
        : std::runtime_error(msg), required_truncation(k) {}
};

// Closed-form evaluator of psi and psi' (exact to machine precision).
struct ClosedForm {
    std::function<cplx(cplx)> psi;
    std::function<cplx(cplx)> dpsi;
};

// Truncated Laurent series of the exterior map at infinity:
//   psi(w) = leading*w + constant + sum_{j>=1} tail[j-1] * w^{-j}.
// Normalized so that psi is analytic and univalent exactly on |w| > 1.
struct LaurentMap {
    cplx leading{1.0, 0.0};
    cplx constant{0.0, 0.0};
    std::vector<cplx> tail;
    std::optional<ClosedForm> closed_form;

    int truncation() const { return static_cast<int>(tail.size()); }

    cplx eval_series(cplx w) const {
        cplx acc{0.0, 0.0};
        const cplx iw = 1.0 / w;
        for (auto it = tail.rbegin(); it != tail.rend(); ++it)
            acc = (acc + *it) * iw;
        return leading * w + constant + acc;
    }

    cplx eval_series_deriv(cplx w) const {
        cplx acc{0.0, 0.0};
        const cplx iw = 1.0 / w;
        for (int j = truncation(); j >= 1; --j)
            acc = (acc - static_cast<double>(j) * tail[j - 1]) * iw;
        return leading + acc * iw;
    }

    // Far from the unit circle the series is preferred even when a closed
    // form exists: some closed forms lose relative accuracy to cancellation
    // as |w| grows, while the series truncation error is negligible there.
    cplx psi(cplx w) const {
        if (!closed_form || (std::abs(w) >= 4.0 && tail.size() >= 32))
            return eval_series(w);
        return closed_form->psi(w);
    }
    cplx dpsi(cplx w) const {
        if (!closed_form || (std::abs(w) >= 4.0 && tail.size() >= 32))
            return eval_series_deriv(w);
        return closed_form->dpsi(w);
    }
};

// Per-corner metadata. omega = e^{i theta} is the prevertex on the unit
// circle, z = psi(omega) the corner, lambda*pi the exterior angle, A the
// leading local-expansion constant. r and m are set only when lambda is 1
// or 2 (logarithmic terms).
struct CornerData {
    cplx omega;
    double theta = 0.0;         // in [0, 2pi)
    double lambda = 1.0;        // in (0, 2]
    cplx z;
    cplx A{0.0, 0.0};
    std::optional<int> r;
    std::optional<int> m;
    bool relevant = false;
    // exact rational theta/(2pi) declaration, if any (numerator, denominator
    // of (Theta_k - Theta_1)/(2pi) is derived later; this flags Theta_k/pi)
    std::optional<std::pair<long, long>> theta_over_pi_rational;

    // effective decay pair (Lambda, M)
    std::pair<double, int> decay_pair() const {
        if (lambda != 1.0 && lambda != 2.0) return {lambda, 0};
        return {static_cast<double>(r.value_or(1)) + lambda, m.value_or(1) - 1};
    }
};

// (Lambda_k, M_k) < (Lambda_j, M_j) iff Lambda_k < Lambda_j, or equal
// Lambda and M_k > M_j.
inline bool decay_less(const std::pair<double, int>& a,
                       const std::pair<double, int>& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
}

enum class MapKind { lemniscate, two_corner, user_laurent };

// Immutable bundle of map + corner data, with the relevant corners ordered
// so the minimal-(Lambda, M) ones come first.
struct MapBundle {
    LaurentMap map;
    std::vector<CornerData> corners;  // relevant corners, sorted
    int u = 1;                        // count of minimal corners
    std::pair<double, int> leading_pair{1.0, 0};
    MapKind kind = MapKind::user_laurent;
    int lemniscate_s = 0;             // set for lemniscate bundles

    cplx psi(cplx w) const { return map.psi(w); }
    cplx dpsi(cplx w) const { return map.dpsi(w); }
};

namespace detail {

inline void finalize_corners(MapBundle& b) {
    std::stable_sort(b.corners.begin(), b.corners.end(),
                     [](const CornerData& x, const CornerData& y) {
                         return decay_less(x.decay_pair(), y.decay_pair());
                     });
    if (b.corners.empty())
        throw DomainError("map bundle requires at least one relevant corner");
    b.leading_pair = b.corners.front().decay_pair();
    b.u = 1;
    while (b.u < static_cast<int>(b.corners.size()) &&
           b.corners[b.u].decay_pair() == b.leading_pair)
        ++b.u;
}

}  // namespace detail

// Numerical Laurent coefficient extraction by a discrete contour integral
// at |w| = R. The returned map must agree with the evaluator at |w| = 2 to
// relative 1e-10.
// The sampling radius stays close to the unit circle: round-off on the
// samples is amplified by R^j on the j-th coefficient, so a generous R
// turns high-order coefficients into noise, while the aliasing penalty
// of a small R is killed by the node count.
inline LaurentMap extract_laurent(const ClosedForm& evaluator, int K,
                                  double R = 1.05) {
    if (K < 1) throw DomainError("extract_laurent: K must be >= 1");
    if (!(R > 1.0)) throw DomainError("extract_laurent: R must be > 1");
    const int M = std::max(8 * K, 512);
    // c_j = (1/M) sum psi(R e^{i th_m}) R^{-j} e^{-i j th_m}, j = 1, 0, -1, ...
    std::vector<cplx> samples(M);
    for (int m = 0; m < M; ++m) {
        const double th = 2.0 * M_PI * m / M;
        samples[m] = evaluator.psi(R * std::polar(1.0, th));
    }
    auto coeff = [&](int j) {
        cplx acc{0.0, 0.0};
        for (int m = 0; m < M; ++m) {
            const double th = 2.0 * M_PI * m / M;
            acc += samples[m] * std::polar(1.0, -j * th);
        }
        return acc / (static_cast<double>(M) * std::pow(R, j));
    };
    LaurentMap out;
    out.leading = coeff(1);
    out.constant = coeff(0);
    out.tail.resize(K);
    for (int j = 1; j <= K; ++j) out.tail[j - 1] = coeff(-j);
    out.closed_form = evaluator;
    // agreement check on |w| = 2
    double max_rel = 0.0;
    for (int m = 0; m < 16; ++m) {
        const cplx w = 2.0 * std::polar(1.0, 2.0 * M_PI * m / 16.0 + 0.1);
        const cplx a = out.eval_series(w), b = evaluator.psi(w);
        max_rel = std::max(max_rel, std::abs(a - b) / (1.0 + std::abs(b)));
    }
    if (max_rel > 1e-10)
        throw NumericError("extract_laurent: series/closed-form residual " +
                           std::to_string(max_rel));
    return out;
}

namespace detail {

// Local expansion constant A_k = lim (psi(w)-z_k)/(w-omega_k)^lambda along
// the exterior radial direction, branch Theta_k - pi < arg(w-omega_k) <
// Theta_k + pi. The error of a single probe decays like eps^mu with an
// a-priori unknown exponent mu, so the limit is taken by Aitken
// extrapolation over a geometric step sequence.
inline cplx corner_constant(const LaurentMap& map, const CornerData& c) {
    auto probe = [&](double eps) {
        const cplx w = c.omega * (1.0 + eps);
        // w - omega = omega*eps has argument Theta_k, inside the branch cut
        const cplx pw = std::pow(eps, c.lambda) *
                        std::polar(1.0, c.lambda * c.theta);
        return (map.psi(w) - c.z) / pw;
    };
    const cplx f1 = probe(1e-5);
    const cplx f2 = probe(2.5e-6);
    const cplx f3 = probe(6.25e-7);
    const cplx d1 = f2 - f1, d2 = f3 - f2;
    const cplx den = d2 - d1;
    if (std::abs(den) < 1e-14 * (1.0 + std::abs(f3))) return f3;
    return f3 - d2 * d2 / den;
}

}  // namespace detail

// psi(w) = (w^s + 1)^{1/s}, exterior map of the lemniscate |z^s - 1| = 1,
// with the sheet convention 2pi(k-1) <= arg(w^s+1) < 2pi k on the sector
// 2pi(k-1)/s <= arg(w) < 2pi k/s.
inline MapBundle lemniscate_map(int s, int K = 256) {
    if (s < 2) throw DomainError("lemniscate_map: s must be >= 2");
    auto branch_pow = [s](cplx w, double expo) {
        double aw = std::arg(w);
        if (aw < 0.0) aw += 2.0 * M_PI;                  // arg(w) in [0, 2pi)
        const double x = aw * s / (2.0 * M_PI);
        const cplx zeta = std::pow(w, s) + 1.0;
        double az = std::arg(zeta);                      // principal
        const double frac = x - std::floor(x);
        if (frac < 0.25 || frac > 0.75) {
            // near a sector boundary arg(zeta) is small, and the exact
            // sector index is rounding-sensitive; the lift is az + 2 pi
            // round(x) on both sides of the boundary
            az += 2.0 * M_PI * static_cast<double>(std::lround(x));
        } else {
            const int k = std::min(static_cast<int>(x), s - 1);
            az += 2.0 * M_PI * (k + (az < 0.0 ? 1 : 0));  // into [2pi k, 2pi(k+1))
        }
        return std::pow(std::abs(zeta), expo) * std::polar(1.0, expo * az);
    };
    ClosedForm cf;
    cf.psi = [branch_pow, s](cplx w) { return branch_pow(w, 1.0 / s); };
    cf.dpsi = [branch_pow, s](cplx w) {
        // psi'(w) = w^{s-1} (w^s+1)^{1/s - 1}
        return std::pow(w, s - 1) * branch_pow(w, 1.0 / s - 1.0);
    };
    LaurentMap map;
    map.leading = 1.0;
    map.constant = 0.0;
    map.tail.assign(K, cplx{0.0, 0.0});
    // (w^s+1)^{1/s} = w * sum_j C(1/s, j) w^{-sj}; coefficient of w^{-(sj-1)}
    for (int j = 1; s * j - 1 <= K; ++j)
        map.tail[s * j - 2] = gen_binomial(1.0 / s, j);
    map.closed_form = cf;

    MapBundle b;
    b.map = std::move(map);
    b.kind = MapKind::lemniscate;
    b.lemniscate_s = s;
    for (int k = 1; k <= s; ++k) {
        CornerData c;
        c.theta = (2.0 * k - 1.0) * M_PI / s;
        c.omega = std::polar(1.0, c.theta);
        c.lambda = 1.0 / s;
        c.z = 0.0;
        c.relevant = true;
        c.theta_over_pi_rational = std::make_pair(2L * k - 1L, (long)s);
        c.A = detail::corner_constant(b.map, c);
        b.corners.push_back(c);
    }
    detail::finalize_corners(b);
    return b;
}

// The two-corner Jordan curve example: psi(w) = 1/[ (1/w - om)^{1/2}
// + (1/w - conj(om))^{1/2} + i om^{1/2} - i conj(om)^{1/2} ] with om =
// e^{i theta1}, principal square roots (analytic off (-inf, 0]).
// theta1_pi_rational, when set, declares theta1 = (p/q) pi exactly.
inline MapBundle two_corner_map(
    double theta1, int K = 256,
    std::optional<std::pair<long, long>> theta1_pi_rational = std::nullopt) {
    if (!(theta1 >= M_PI / 2.0 && theta1 < M_PI))
        throw DomainError("two_corner_map: theta1 must lie in [pi/2, pi)");
    const cplx om = std::polar(1.0, theta1);
    const cplx omc = std::conj(om);
    const cplx shift = cplx{0.0, 1.0} * (std::sqrt(om) - std::sqrt(omc));
    auto bracket = [=](cplx w) {
        const cplx iw = 1.0 / w;
        return std::sqrt(iw - om) + std::sqrt(iw - omc) + shift;
    };
    ClosedForm cf;
    cf.psi = [=](cplx w) { return 1.0 / bracket(w); };
    cf.dpsi = [=](cplx w) {
        const cplx iw = 1.0 / w;
        const cplx db = -iw * iw * 0.5 *
                        (1.0 / std::sqrt(iw - om) + 1.0 / std::sqrt(iw - omc));
        const cplx B = bracket(w);
        return -db / (B * B);
    };
    MapBundle b;
    b.map = extract_laurent(cf, K);
    b.kind = MapKind::two_corner;

    const cplx z1 = cf.psi(om), z2 = cf.psi(omc);
    const double Theta2 = 2.0 * M_PI - theta1;
    // paper closed forms: A^_1 = -i conj(om) z1^2, A^_2 = i z2^2, with
    // A^_k = A_k e^{i Lambda_1 (Theta_k - Theta_1)}, Lambda_1 = 1/2
    const cplx A1 = cplx{0.0, -1.0} * omc * z1 * z1;
    const cplx A2hat = cplx{0.0, 1.0} * z2 * z2;
    const cplx A2 = A2hat * std::polar(1.0, -0.5 * (Theta2 - theta1));

    CornerData c1;
    c1.theta = theta1;
    c1.omega = om;
    c1.lambda = 0.5;
    c1.z = z1;
    c1.A = A1;
    c1.relevant = true;
    c1.theta_over_pi_rational = theta1_pi_rational;
    CornerData c2;
    c2.theta = Theta2;
    c2.omega = omc;
    c2.lambda = 0.5;
    c2.z = z2;
    c2.A = A2;
    c2.relevant = true;
    if (theta1_pi_rational)
        c2.theta_over_pi_rational =
            std::make_pair(2 * theta1_pi_rational->second -
                               theta1_pi_rational->first,
                           theta1_pi_rational->second);
    b.corners = {c1, c2};
    detail::finalize_corners(b);
    return b;
}

// Roles of a boundary preimage.
enum class PreimageRole { regular, corner };

struct BoundaryPreimage {
    cplx w;             // unimodular
    double theta;       // arg(w) in [0, 2pi)
    PreimageRole role;
    int corner_index = -1;  // into bundle.corners when role == corner
};

// All solutions w on |w| = 1 of psi(w) = z: dense angular scan plus Newton
// refinement of |psi(e^{i th}) - z|^2. Throws if no solution within tol.
inline std::vector<BoundaryPreimage> boundary_preimages(const MapBundle& b,
                                                        cplx z,
                                                        double tol = 1e-8,
                                                        int scan = 4096) {
    scan = std::max(scan, 4096);
    std::vector<double> thetas;
    std::vector<double> dist(scan);
    for (int i = 0; i < scan; ++i) {
        const double th = 2.0 * M_PI * i / scan;
        dist[i] = std::abs(b.psi(std::polar(1.0, th)) - z);
    }
    auto refine = [&](double th) {
        // Newton on h(th) = |psi(e^{i th}) - z|^2
        for (int it = 0; it < 60; ++it) {
            const cplx w = std::polar(1.0, th);
            const cplx g = b.psi(w) - z;
            const cplx gp = cplx{0.0, 1.0} * w * b.dpsi(w);
            const double h1 = 2.0 * std::real(std::conj(g) * gp);
            const double h2 = 2.0 * std::norm(gp);
            if (h2 == 0.0) break;
            const double step = h1 / h2;
            th -= step;
            if (std::abs(step) < 1e-16) break;
        }
        return th;
    };
    for (int i = 0; i < scan; ++i) {
        const int l = (i + scan - 1) % scan, r = (i + 1) % scan;
        if (dist[i] <= dist[l] && dist[i] <= dist[r] &&
            dist[i] < 64.0 * std::sqrt(tol)) {
            double th = refine(2.0 * M_PI * i / scan);
            th = std::fmod(th, 2.0 * M_PI);
            if (th < 0.0) th += 2.0 * M_PI;
            if (std::abs(b.psi(std::polar(1.0, th)) - z) <= tol)
                thetas.push_back(th);
        }
    }
    // corner prevertices are checked explicitly (psi' degenerates there)
    for (const auto& c : b.corners)
        if (std::abs(c.z - z) <= tol) thetas.push_back(c.theta);
    std::sort(thetas.begin(), thetas.end());
    std::vector<BoundaryPreimage> out;
    const double dedupe = 1e-6;
    for (double th : thetas) {
        if (!out.empty() &&
            (std::abs(th - out.back().theta) < dedupe ||
             std::abs(th - out.back().theta - 2.0 * M_PI) < dedupe))
            continue;
        BoundaryPreimage p;
        p.theta = th;
        p.w = std::polar(1.0, th);
        p.role = PreimageRole::regular;
        for (int k = 0; k < static_cast<int>(b.corners.size()); ++k) {
            double d = std::abs(th - b.corners[k].theta);
            d = std::min(d, 2.0 * M_PI - d);
            if (d < dedupe) {
                p.role = PreimageRole::corner;
                p.corner_index = k;
            }
        }
        out.push_back(p);
    }
    // wrap-around dedupe
    if (out.size() > 1 &&
        std::abs(out.back().theta - 2.0 * M_PI - out.front().theta) < dedupe)
        out.pop_back();
    if (out.empty())
        throw DomainError("boundary_preimages: z is not on the boundary curve");
    return out;
}

// Unique w with |w| > 1 and psi(w) = z, for z strictly exterior to L.
inline cplx exterior_inverse(const MapBundle& b, cplx z) {
    auto newton = [&](cplx w) -> std::optional<cplx> {
        for (int it = 0; it < 100; ++it) {
            const cplx f = b.psi(w) - z;
            if (std::abs(f) <= 1e-13 * (1.0 + std::abs(z))) return w;
            const cplx d = b.dpsi(w);
            if (std::abs(d) < 1e-300) return std::nullopt;
            cplx step = f / d;
            // keep iterates outside the closed unit disk
            cplx next = w - step;
            int halvings = 0;
            while (std::abs(next) <= 1.0 && halvings++ < 50) {
                step *= 0.5;
                next = w - step;
            }
            if (std::abs(next) <= 1.0) return std::nullopt;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(w))) {
                w = next;
                break;
            }
            w = next;
        }
        if (std::abs(b.psi(w) - z) <= 1e-12 * (1.0 + std::abs(z))) return w;
        return std::nullopt;
    };
    // dominant-term seed
    const cplx seed = (z - b.map.constant) / b.map.leading;
    if (std::abs(seed) > 1.05) {
        if (auto w = newton(seed)) return *w;
    }
    // radial grid fallback
    cplx best_w;
    double best = 1e300;
    for (double r : {1.05, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0}) {
        for (int i = 0; i < 64; ++i) {
            const cplx w = std::polar(r, 2.0 * M_PI * i / 64.0);
            const double d = std::abs(b.psi(w) - z);
            if (d < best) {
                best = d;
                best_w = w;
            }
        }
    }
    if (auto w = newton(best_w)) return *w;
    throw DomainError("exterior_inverse: no exterior preimage (z inside or on L)");
}

// True when z lies strictly exterior to L (an exterior preimage with
// |w| > 1 + margin exists).
inline bool is_exterior(const MapBundle& b, cplx z, double margin = 1e-9) {
    if (b.kind == MapKind::lemniscate)
        return std::abs(std::pow(z, b.lemniscate_s) - 1.0) > 1.0 + margin;
    try {
        const cplx w = exterior_inverse(b, z);
        return std::abs(w) > 1.0 + margin;
    } catch (const DomainError&) {
        return false;
    }
}

// Distance from z to the boundary curve, by dense sampling.
inline double boundary_distance(const MapBundle& b, cplx z, int samples = 4096) {
    double best = 1e300;
    for (int i = 0; i < samples; ++i)
        best = std::min(best,
                        std::abs(b.psi(std::polar(1.0, 2.0 * M_PI * i / samples)) - z));
    return best;
}

// Strict interior membership (in G), excluding a 1e-6 collar around L.
inline bool is_interior(const MapBundle& b, cplx z) {
    if (b.kind == MapKind::lemniscate)
        return std::abs(std::pow(z, b.lemniscate_s) - 1.0) < 1.0 - 1e-6;
    if (boundary_distance(b, z) < 1e-6) return false;
    return !is_exterior(b, z);
}

}  // namespace faberlab

#endif
