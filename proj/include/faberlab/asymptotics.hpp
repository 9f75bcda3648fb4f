#ifndef FABERLAB_ASYMPTOTICS_HPP
#define FABERLAB_ASYMPTOTICS_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "faberlab/conformal.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/special.hpp"

namespace faberlab {

// Exterior model phi(z)^n, valid for z strictly exterior to L.
inline cplx exterior_model(const MapBundle& b, int n, cplx z) {
    if (!is_exterior(b, z))
        throw DomainError("exterior_model: z is not exterior to L");
    return std::pow(exterior_inverse(b, z), n);
}

// Boundary model Phi_n(z) = sum_j lambda^_j(z) [phi_j(z)]^n over the
// unimodular preimages of z, with lambda^ = 1 at non-corner preimages and
// the exterior-angle factor lambda_k at corner preimages.
inline cplx boundary_model(const MapBundle& b, int n, cplx z,
                           double tol = 1e-8) {
    const auto pre = boundary_preimages(b, z, tol);
    cplx acc{0.0, 0.0};
    for (const auto& p : pre) {
        const double lam = (p.role == PreimageRole::corner)
                               ? b.corners[p.corner_index].lambda
                               : 1.0;
        acc += lam * std::pow(p.w, n);
    }
    return acc;
}

// Interior asymptotic model of the minimal corners: normalizing constant
// C_1 plus the data of the rational functions H_n.
struct InteriorModel {
    const MapBundle* bundle;
    double C1;            // real in both branches of its definition
    double Theta1;
    double Lambda1;
    int M1;
    std::vector<cplx> A_hat;      // A^_k = A_k e^{i Lambda_1 (Theta_k - Theta_1)}
    std::vector<double> theta;    // theta_k in (0, 1]
    std::vector<cplx> poles;      // z_k, k = 1..u
};

inline InteriorModel make_interior_model(const MapBundle& b) {
    InteriorModel m;
    m.bundle = &b;
    const auto& c1 = b.corners.front();
    m.Theta1 = c1.theta;
    m.Lambda1 = b.leading_pair.first;
    m.M1 = b.leading_pair.second;
    auto corner_C = [](const CornerData& c) -> double {
        if (c.lambda != 1.0 && c.lambda != 2.0) {
            // 1/(Gamma(-lambda)Gamma(lambda)) = -lambda sin(pi lambda)/pi
            return -c.lambda * std::sin(M_PI * c.lambda) / M_PI;
        }
        const auto [Lam, M] = c.decay_pair();
        const double sgn = (static_cast<long>(std::llround(Lam)) - 1) % 2 ? -1.0 : 1.0;
        return sgn * c.m.value_or(1) * Lam;
    };
    m.C1 = corner_C(c1);
    for (int k = 1; k < b.u; ++k) {
        if (std::abs(corner_C(b.corners[k]) - m.C1) > 1e-12 * std::abs(m.C1))
            throw NumericError(
                "interior model: minimal corners carry differing normalizing "
                "constants; bundle unsupported");
    }
    for (int k = 0; k < b.u; ++k) {
        const auto& c = b.corners[k];
        m.A_hat.push_back(c.A * std::polar(1.0, m.Lambda1 * (c.theta - m.Theta1)));
        double t = (c.theta - m.Theta1) / (2.0 * M_PI);
        t -= std::floor(t);
        if (t == 0.0) t = 1.0;   // theta_k in (0, 1]
        m.theta.push_back(t);
        m.poles.push_back(c.z);
    }
    return m;
}

// Rational model H_n(z) = sum_k A^_k e^{2 pi i n theta_k} / (z - z_k).
class InteriorEvaluator {
public:
    InteriorEvaluator(const InteriorModel& m, int n) {
        for (size_t k = 0; k < m.A_hat.size(); ++k) {
            weights_.push_back(m.A_hat[k] *
                               std::polar(1.0, 2.0 * M_PI * n * m.theta[k]));
            poles_.push_back(m.poles[k]);
        }
    }

    cplx operator()(cplx z) const {
        cplx acc{0.0, 0.0};
        for (size_t k = 0; k < weights_.size(); ++k) {
            if (std::abs(z - poles_[k]) < 1e-12)
                throw DomainError("H_n evaluation at a pole z_k");
            acc += weights_[k] / (z - poles_[k]);
        }
        return acc;
    }

    const std::vector<cplx>& weights() const { return weights_; }

private:
    std::vector<cplx> weights_;
    std::vector<cplx> poles_;
};

inline InteriorEvaluator interior_model(const InteriorModel& m, int n) {
    return InteriorEvaluator(m, n);
}

// Normalizer of F*_n: C_1 e^{i(n+Lambda_1)Theta_1} alpha_{Lambda_1-1,M_1}(n).
inline cplx interior_normalizer(const InteriorModel& m, int n) {
    const double a = alpha({m.Lambda1 - 1.0, m.M1, n});
    return m.C1 * std::polar(1.0, (n + m.Lambda1) * m.Theta1) * a;
}

// F*_n(z) = F_n(z) / normalizer.
inline cplx normalize_interior(const InteriorModel& m, int n, cplx value) {
    if (n < 2) throw DomainError("normalize_interior: requires n >= 2");
    const cplx norm = interior_normalizer(m, n);
    if (std::abs(norm) < 1e-300)
        throw NumericError("normalize_interior: normalizer underflow");
    return value / norm;
}

// Lemniscate subsequence model on |z^s - 1| < 1: the properly normalized
// F_{sm+l} approaches 1/(s^{l/s} z^{s-l}) with first-order correction
//   r_m = (1/m) (s-l) [ 1/(s z^s) - (s-1)(2s-l)/(2 s^3) ].
// The constants were pinned against 500-digit evaluations of the closed
// form over s in {2,3,5}, several l and z, with Richardson extrapolation
// in 1/m; see the normalizer below for the matching sign and scale.
struct SubsequenceModel {
    cplx leading;
    cplx correction;
};

inline SubsequenceModel lemniscate_subsequence_model(int s, int l, int m,
                                                     cplx z) {
    if (s < 2 || l < 1 || l >= s)
        throw DomainError("lemniscate_subsequence_model: need s >= 2, 1 <= l < s");
    if (z == cplx{0.0, 0.0} || std::abs(std::pow(z, s) - 1.0) >= 1.0)
        throw DomainError(
            "lemniscate_subsequence_model: z outside the petal region");
    SubsequenceModel out;
    out.leading = 1.0 / (std::pow(static_cast<double>(s),
                                  static_cast<double>(l) / s) *
                         std::pow(z, s - l));
    const double bracket_const =
        (s - 1.0) * (2.0 * s - l) / (2.0 * s * s * s);
    out.correction =
        static_cast<double>(s - l) *
        (1.0 / (static_cast<double>(s) * std::pow(z, s)) - bracket_const) /
        static_cast<double>(m);
    return out;
}

// Normalizing factor of the subsequence asymptotics:
// (-1)^m [s C(sm+l, l/s-1)]^{-1} F_{sm+l}(z) = leading * (1 + r_m).
inline double lemniscate_subsequence_normalizer(int s, int l, int m) {
    const double sign = (m % 2) ? -1.0 : 1.0;
    const double binom = gen_binomial_real(s * m + l,
                                           static_cast<double>(l) / s - 1.0);
    return sign / (s * binom);
}

// Decay-rate class of the error term attached to one relevant corner.
struct RateClass {
    double n_exponent;    // power of n^{-.}
    double log_exponent;  // power of log n
    std::string text;
};

inline RateClass error_rate_class(const CornerData& c) {
    if (!c.relevant)
        throw DomainError("error_rate_class: corner is not relevant");
    const double lam = c.lambda;
    if (lam > 0.0 && lam < 1.0 && lam != 0.5)
        return {lam, 0.0, "n^{-" + std::to_string(lam) + "}"};
    if (lam == 0.5) return {1.0, 1.0, "n^{-1} log n"};
    if (lam > 1.0 && lam < 2.0) return {1.0, 0.0, "n^{-1}"};
    // lambda in {1, 2}
    const int mk = c.m.value_or(1);
    if (mk >= 2) return {0.0, -1.0, "1/log n"};
    const int rk = c.r.value_or(1);
    const int p = static_cast<int>(std::floor((rk + 1) / lam)) - 1;
    return {1.0, static_cast<double>(p),
            "n^{-1} (log n)^{" + std::to_string(p) + "}"};
}

}  // namespace faberlab

#endif
