#ifndef FABERLAB_VERIFY_HPP
#define FABERLAB_VERIFY_HPP

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "faberlab/asymptotics.hpp"
#include "faberlab/conformal.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/special.hpp"
#include "faberlab/zeros.hpp"

namespace faberlab {

struct CheckResult {
    int id;
    std::string name;
    bool pass;
    double residual;   // worst observed residual / margin, check-specific
    std::string detail;
};

namespace verify_detail {

inline std::vector<cplx> seeded_annulus_points(std::uint64_t seed, int count,
                                               double rmin, double rmax) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(rmin, rmax);
    std::uniform_real_distribution<double> ut(0.0, 2.0 * M_PI);
    std::vector<cplx> out;
    for (int i = 0; i < count; ++i) out.push_back(std::polar(ur(rng), ut(rng)));
    return out;
}

inline double coeff_norm_inf(const FaberPolynomial& p) {
    double m = 0.0;
    for (const auto& c : p.coeffs) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace verify_detail

// 1. Recurrence coefficients match the explicit lemniscate closed form.
inline CheckResult check_closed_form_equivalence() {
    double worst = 0.0;
    for (int s : {2, 3, 5}) {
        const auto b = lemniscate_map(s, 128);
        const auto seq = faber_sequence(b, 120);
        for (int n = 0; n <= 120; ++n) {
            const auto closed = faber_lemniscate_closed(s, n);
            const double scale =
                std::max(1.0, verify_detail::coeff_norm_inf(closed));
            for (int i = 0; i <= n; ++i)
                worst = std::max(worst, std::abs(seq[n].coeffs[i] -
                                                 closed.coeffs[i]) /
                                            scale);
        }
    }
    return {1, "closed-form equivalence (lemniscate s=2,3,5, n<=120)",
            worst <= 1e-9, worst, "max relative coefficient deviation"};
}

// 2. Recurrence evaluation matches the contour-integral oracle. The
// polynomials are carried and evaluated in double-double: at n = 60 the
// double-rounded Horner loses more than the 1e-8 budget on its own.
inline CheckResult check_contour_oracle_equivalence(std::uint64_t seed) {
    double worst = 0.0;
    const auto zs = verify_detail::seeded_annulus_points(seed, 50, 0.5, 3.0);
    for (const MapBundle& b :
         {lemniscate_map(2, 128), two_corner_map(3.0 * M_PI / 4.0, 128)}) {
        const auto seq = faber_sequence_wide(b, 60);
        for (const auto& z : zs) {
            for (int n : {0, 1, 3, 7, 15, 30, 45, 60}) {
                cplx oracle;
                try {
                    oracle = contour_oracle(b, n, z);
                } catch (const NumericError&) {
                    continue;  // z numerically on L_R; skip this sample
                }
                const cplx direct = eval_faber(seq[n], z);
                worst = std::max(worst, std::abs(direct - oracle) /
                                            (1.0 + std::abs(direct)));
            }
        }
    }
    return {2, "contour-oracle equivalence (both built-in maps, n<=60)",
            worst <= 1e-8, worst, "max scaled |recurrence - oracle|"};
}

// 3. alpha recurrence vs quadrature oracle, plus asymptotic-ratio regimes.
inline CheckResult check_alpha_family() {
    double worst = 0.0;
    bool ok = true;
    for (double beta : {-0.5, 0.5, 1.0, 1.5}) {
        for (int m : {0, 1, 2}) {
            for (int n : {0, 2, 10, 25, 50}) {
                const double exact = alpha({beta, m, n});
                const double quad = alpha_quadrature_oracle({beta, m, n});
                worst = std::max(worst, std::abs(exact - quad) /
                                            std::abs(exact));
            }
        }
    }
    ok = ok && worst <= 1e-8;
    const double exact_ratio =
        alpha({0.5, 0, 1000}) / alpha_asymptotic({0.5, 0, 1000});
    ok = ok && std::abs(exact_ratio - 1.0) <= 1e-12;
    const double log_ratio =
        alpha({0.5, 1, 10000}) / alpha_asymptotic({0.5, 1, 10000});
    ok = ok && log_ratio >= 0.6 && log_ratio <= 1.4;
    return {3, "alpha family: recurrence vs oracle, asymptotic regimes", ok,
            worst, "oracle ratio m=1 n=1e4: " + std::to_string(log_ratio)};
}

// 4. Lemniscate subsequence first-order correction. The bracket is the
// limit of m r_m; its printed form elsewhere carries a sign and scale
// slip, so the constant here is the one the closed-form polynomials
// actually converge to (cross-checked in 500-digit arithmetic).
inline CheckResult check_subsequence_correction() {
    const int s = 3, l = 1;
    const cplx z{0.5, 0.0};
    const auto model = lemniscate_subsequence_model(s, l, 1, z);
    const double bracket = model.correction.real();  // m = 1: bracket itself
    auto rho = [&](int m) {
        // wide closed form: the double recurrence overflows past n ~ 450
        const auto F = faber_lemniscate_closed_wide(s, s * m + l);
        const double norm = lemniscate_subsequence_normalizer(s, l, m);
        const cplx val = norm * eval_faber(F, z);
        return (static_cast<double>(m) * (val / model.leading - 1.0)).real();
    };
    const double d100 = std::abs(rho(100) - bracket);
    const double d200 = std::abs(rho(200) - bracket);
    const bool ok = d200 <= d100 && d200 <= 0.5 * std::abs(bracket);
    return {4, "subsequence model first-order correction (s=3, l=1, z=0.5)",
            ok, d200, "|m r_m - bracket| at m=200 (m=100: " +
                          std::to_string(d100) + ")"};
}

// Deterministic interior grid for the two-corner map: points strictly
// inside L, at least 0.3 from both corners and not hugging the boundary.
inline std::vector<cplx> two_corner_interior_grid(const MapBundle& b,
                                                  int count,
                                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-1.2, 1.2), uy(-1.2, 1.2);
    std::vector<cplx> grid;
    int guard = 0;
    while (static_cast<int>(grid.size()) < count && guard++ < 100000) {
        const cplx z{ux(rng), uy(rng)};
        bool ok = true;
        for (const auto& c : b.corners)
            if (std::abs(z - c.z) < 0.3) ok = false;
        if (!ok) continue;
        if (!is_interior(b, z)) continue;
        if (boundary_distance(b, z, 1024) < 0.08) continue;
        grid.push_back(z);
    }
    return grid;
}

// 5. Interior model convergence: |F*_n - H_n| shrinks from n=50 to n=200.
inline CheckResult check_interior_convergence(std::uint64_t seed) {
    const auto b = two_corner_map(3.0 * M_PI / 4.0, 256, {{3, 4}});
    const auto model = make_interior_model(b);
    const auto seq = faber_sequence(b, 200);
    const auto grid = two_corner_interior_grid(b, 20, seed);
    const auto H50 = interior_model(model, 50);
    const auto H200 = interior_model(model, 200);
    int improved = 0;
    for (const auto& z : grid) {
        const cplx f50 = normalize_interior(model, 50, eval_faber(seq[50], z));
        const cplx f200 =
            normalize_interior(model, 200, eval_faber(seq[200], z));
        if (std::abs(f200 - H200(z)) < std::abs(f50 - H50(z))) ++improved;
    }
    const double frac = improved / 20.0;
    return {5, "interior model convergence (two-corner, n=50 -> n=200)",
            frac >= 0.9, frac, "fraction of grid points improved"};
}

// 6. Exterior and boundary model convergence.
inline CheckResult check_exterior_boundary_models(std::uint64_t seed) {
    const auto b = two_corner_map(3.0 * M_PI / 4.0, 256);
    const auto seq = faber_sequence_wide(b, 200);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> ur(1.6, 2.5);
    std::uniform_real_distribution<double> ut(0.0, 2.0 * M_PI);
    int ext_ok = 0;
    for (int i = 0; i < 10; ++i) {
        const cplx w = std::polar(ur(rng), ut(rng));
        const cplx z = b.psi(w);
        auto dev = [&](int n) {
            return std::abs(eval_faber(seq[n], z) / std::pow(w, n) - 1.0);
        };
        if (dev(80) < dev(20)) ++ext_ok;
    }
    // non-corner boundary points, away from the two prevertices
    int bnd_ok = 0, bnd_total = 0;
    for (int i = 0; i < 10; ++i) {
        const double th = 0.15 + (2.0 * M_PI - 0.3) * (i + 0.37) / 10.0;
        bool near_corner = false;
        for (const auto& c : b.corners) {
            double d = std::abs(th - c.theta);
            d = std::min(d, 2.0 * M_PI - d);
            if (d < 0.2) near_corner = true;
        }
        if (near_corner) continue;
        ++bnd_total;
        const cplx z = b.psi(std::polar(1.0, th));
        auto dev = [&](int n) {
            return std::abs(eval_faber(seq[n], z) / boundary_model(b, n, z) -
                            1.0);
        };
        if (dev(200) < dev(50)) ++bnd_ok;
    }
    const bool ok = ext_ok == 10 &&
                    bnd_ok >= static_cast<int>(std::ceil(0.9 * bnd_total));
    return {6, "exterior (n=20->80) and boundary (n=50->200) convergence", ok,
            static_cast<double>(ext_ok + bnd_ok),
            "exterior improved " + std::to_string(ext_ok) + "/10, boundary " +
                std::to_string(bnd_ok) + "/" + std::to_string(bnd_total)};
}

// 7. Zero clusters of F_{sm} = (z^s - 1)^m.
inline CheckResult check_multiple_zero_clusters() {
    const int s = 3, m = 4;
    const auto F = faber_lemniscate_closed(s, s * m);
    const auto nu = find_zeros(F, 1e-13, 600);
    std::vector<int> counts(s, 0);
    double worst_radius = 0.0;
    for (const auto& z : nu.points) {
        int best = 0;
        double bd = 1e300;
        for (int k = 0; k < s; ++k) {
            const cplx root = std::polar(1.0, 2.0 * M_PI * k / s);
            if (std::abs(z - root) < bd) {
                bd = std::abs(z - root);
                best = k;
            }
        }
        ++counts[best];
        worst_radius = std::max(worst_radius, bd);
    }
    bool ok = worst_radius <= 1e-2;
    for (int k = 0; k < s; ++k) ok = ok && counts[k] == m;
    // Vieta
    cplx sum{0.0, 0.0}, prod{1.0, 0.0};
    for (const auto& z : nu.points) {
        sum += z;
        prod *= z;
    }
    const cplx vs = -F.coeffs[F.n - 1] / F.coeffs[F.n];
    const cplx vp = (F.n % 2 ? -1.0 : 1.0) * F.coeffs[0] / F.coeffs[F.n];
    ok = ok && std::abs(sum - vs) <= 1e-8 * (1.0 + std::abs(vs));
    ok = ok && std::abs(prod - vp) <= 1e-8 * (1.0 + std::abs(vp));
    return {7, "zero clusters of (z^3-1)^4", ok, worst_radius,
            "max cluster radius"};
}

// 8. Zero-free exterior and origin multiplicity, lemniscate s=3.
inline CheckResult check_zero_free_exterior() {
    const int s = 3;
    bool ok = true;
    double worst = 0.0;
    for (int n = 1; n <= 200; ++n) {
        if (n % s == 0) continue;
        const auto nu = find_zeros_lemniscate(s, n, 1e-13, 600);
        const int l = n % s;
        int origin = 0;
        for (const auto& z : nu.points) {
            if (z == cplx{0.0, 0.0}) {
                ++origin;
                continue;
            }
            const double lev = std::abs(std::pow(z, s) - 1.0);
            worst = std::max(worst, lev);
            if (lev > 1.1) ok = false;
        }
        if (origin != l) ok = false;
    }
    return {8, "zero-free exterior + origin multiplicity (s=3, n<=200)", ok,
            worst, "max |z^3 - 1| over non-origin zeros"};
}

// 9. Weak* trend toward the equilibrium measure, and the fixed-zero
// counterexample subsequence.
inline CheckResult check_weak_star_trend() {
    bool ok = true;
    std::string detail;
    {
        const auto b = two_corner_map(3.0 * M_PI / 4.0, 256);
        const auto mom = equilibrium_moments(b, 6);
        const auto rad = equilibrium_radial_moments(b, 6);
        const auto seq = faber_sequence_wide(b, 180);
        const double d60 =
            measure_distance(find_zeros(seq[60], 1e-13, 600), mom, rad, 6)
                .value;
        const double d180 =
            measure_distance(find_zeros(seq[180], 1e-13, 600), mom, rad, 6)
                .value;
        ok = ok && d180 < d60;
        detail += "two-corner " + std::to_string(d60) + "->" +
                  std::to_string(d180);
    }
    {
        const auto b = lemniscate_map(3, 256);
        const auto mom = equilibrium_moments(b, 6);
        // radial moments included: the fixed-zero measure shares every
        // holomorphic moment of mu_L
        const auto rad = equilibrium_radial_moments(b, 6);
        auto dist = [&](int n) {
            return measure_distance(find_zeros_lemniscate(3, n, 1e-13, 600),
                                    mom, rad, 6)
                .value;
        };
        ok = ok && dist(181) < dist(61);
        const double fixed = dist(120);
        ok = ok && fixed >= 0.1;
        detail += "; lemniscate " + std::to_string(dist(61)) + "->" +
                  std::to_string(dist(181)) + ", fixed-zero " +
                  std::to_string(fixed);
    }
    return {9, "weak* trend and fixed-zero counterexample", ok, 0.0, detail};
}

// 10. Accumulation predictions: rational-phase points and the irrational
// real-axis locus.
inline CheckResult check_accumulation_predictions() {
    bool ok = true;
    std::string detail;
    double worst = 0.0;
    {
        const auto b = two_corner_map(3.0 * M_PI / 4.0, 256, {{3, 4}});
        const auto prob = make_accumulation_problem(b);
        const auto pts = accumulation_points_rational(prob, b);
        ok = ok && pts.size() <= 4 && !pts.empty();
        // each candidate solves the phase equation of one residue class
        // s mod q and attracts zeros of F_n only along n = s (mod q), so
        // scan one full period of degrees ending at 200: F_200 alone sits
        // in a single class and misses the candidates of the others
        const auto seq = faber_sequence_wide(b, 200);
        std::vector<double> nearest(pts.size(), 1e300);
        for (int n = 200 - prob.lcm_q + 1; n <= 200; ++n) {
            const auto nu = find_zeros(seq[n], 1e-13, 600);
            for (size_t i = 0; i < pts.size(); ++i)
                for (const auto& z : nu.points)
                    nearest[i] = std::min(nearest[i], std::abs(z - pts[i]));
        }
        for (double d : nearest) {
            worst = std::max(worst, d);
            if (d > 0.1) ok = false;
        }
        detail += std::to_string(pts.size()) +
                  " rational candidates, max zero distance " +
                  std::to_string(worst);
    }
    {
        const auto b = two_corner_map(std::sqrt(2.0) * M_PI / 2.0, 256);
        const auto prob = make_accumulation_problem(b);
        const auto loc = accumulation_locus_u2_irrational(prob, b);
        const bool is_line = loc.kind == AccumulationLocus::Kind::line;
        // the locus must be the real axis
        const bool real_axis =
            is_line && std::abs(loc.point.imag()) < 1e-9 &&
            std::abs(std::abs(loc.direction.real()) - 1.0) < 1e-9;
        ok = ok && real_axis;
        const auto seq = faber_sequence_wide(b, 200);
        const auto nu = find_zeros(seq[200], 1e-13, 600);
        // the bulk of the zeros converges to L itself (weak* limit); the
        // interior accumulation claim is about the strays away from the
        // boundary, which sit in a clear gap (boundary distance 0.58 vs
        // 0.026 for the L-hugging cloud at n = 200)
        int interior = 0, near_axis = 0;
        for (const auto& z : nu.points) {
            if (!is_interior(b, z)) continue;
            if (boundary_distance(b, z, 1024) <= 0.05) continue;
            ++interior;
            if (std::abs(z.imag()) <= 0.1) ++near_axis;
        }
        const bool frac_ok =
            interior == 0 || near_axis >= 0.8 * interior;
        ok = ok && frac_ok && interior > 0;
        detail += "; irrational: line locus " +
                  std::string(real_axis ? "real-axis" : "WRONG") + ", " +
                  std::to_string(near_axis) + "/" + std::to_string(interior) +
                  " interior zeros near axis";
    }
    return {10, "accumulation predictions (rational points, irrational locus)",
            ok, worst, detail};
}

inline std::vector<CheckResult> run_acceptance_checks(std::uint64_t seed = 42) {
    return {check_closed_form_equivalence(),
            check_contour_oracle_equivalence(seed),
            check_alpha_family(),
            check_subsequence_correction(),
            check_interior_convergence(seed),
            check_exterior_boundary_models(seed),
            check_multiple_zero_clusters(),
            check_zero_free_exterior(),
            check_weak_star_trend(),
            check_accumulation_predictions()};
}

}  // namespace faberlab

#endif
