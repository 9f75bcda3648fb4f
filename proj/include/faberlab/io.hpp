#ifndef FABERLAB_IO_HPP
#define FABERLAB_IO_HPP

#include <numeric>
#include <optional>
#include <regex>
#include <string>
#include <utility>

#include <json.hpp>

#include "faberlab/conformal.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/zeros.hpp"

namespace faberlab {

using nlohmann::json;

// Parses an angle given either as decimal radians ("2.356194") or as a
// rational multiple of pi ("3/4pi", "1/2 pi", "pi"). The rational form
// also yields an exact (p, q) declaration for Theta/pi.
struct Angle {
    double radians;
    std::optional<std::pair<long, long>> pi_rational;
};

inline Angle parse_angle(const std::string& text) {
    static const std::regex ratpi(R"(^\s*(?:(\d+)\s*(?:/\s*(\d+))?\s*)?\*?\s*pi\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, ratpi)) {
        long p = m[1].matched ? std::stol(m[1]) : 1;
        long q = m[2].matched ? std::stol(m[2]) : 1;
        if (q <= 0) throw DomainError("parse_angle: zero denominator");
        const long g = std::gcd(p, q);
        p /= g;
        q /= g;
        return {M_PI * p / q, std::make_pair(p, q)};
    }
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw DomainError("parse_angle: trailing junk");
        return {v, std::nullopt};
    } catch (const std::exception&) {
        throw DomainError("parse_angle: cannot parse '" + text + "'");
    }
}

inline cplx json_to_cplx(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw DomainError("expected complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

// Map specification:
//   {"kind": "lemniscate", "s": int}
//   {"kind": "two_corner", "theta1": float | "p/qpi"}
//   {"kind": "laurent", "leading": [re,im], "constant": [re,im],
//    "tail": [[re,im],...], "corners": [...]}
inline MapBundle parse_map_spec(const json& spec, int K = 256) {
    if (!spec.contains("kind")) throw DomainError("map spec: missing 'kind'");
    const std::string kind = spec["kind"].get<std::string>();
    if (kind == "lemniscate") {
        return lemniscate_map(spec.at("s").get<int>(), K);
    }
    if (kind == "two_corner") {
        const auto& t = spec.at("theta1");
        if (t.is_string()) {
            const Angle a = parse_angle(t.get<std::string>());
            return two_corner_map(a.radians, K, a.pi_rational);
        }
        return two_corner_map(t.get<double>(), K);
    }
    if (kind == "laurent") {
        MapBundle b;
        b.kind = MapKind::user_laurent;
        b.map.leading = json_to_cplx(spec.at("leading"));
        b.map.constant = json_to_cplx(spec.at("constant"));
        for (const auto& c : spec.at("tail")) b.map.tail.push_back(json_to_cplx(c));
        if (b.map.leading == cplx{0.0, 0.0})
            throw DomainError("map spec: leading coefficient must be nonzero");
        for (const auto& cj : spec.at("corners")) {
            CornerData c;
            const auto& th = cj.at("theta");
            if (th.is_string()) {
                const Angle a = parse_angle(th.get<std::string>());
                c.theta = a.radians;
                c.theta_over_pi_rational = a.pi_rational;
            } else {
                c.theta = th.get<double>();
            }
            c.omega = std::polar(1.0, c.theta);
            c.lambda = cj.at("lambda").get<double>();
            c.z = json_to_cplx(cj.at("z"));
            if (cj.contains("A")) c.A = json_to_cplx(cj.at("A"));
            if (cj.contains("r")) c.r = cj.at("r").get<int>();
            if (cj.contains("m")) c.m = cj.at("m").get<int>();
            c.relevant = (c.lambda != 1.0 && c.lambda != 2.0) ||
                         (c.r.has_value() && c.m.has_value());
            // the declared corner is validated against the series
            if (std::abs(b.map.eval_series(c.omega) - c.z) > 1e-6)
                throw DomainError("map spec: psi(omega_k) != z_k for a corner");
            if (c.relevant) b.corners.push_back(c);
        }
        detail::finalize_corners(b);
        return b;
    }
    throw DomainError("map spec: unknown kind '" + kind + "'");
}

inline json polynomial_to_json(const FaberPolynomial& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(cplx_to_json(c));
    return json{{"n", p.n}, {"coeffs", coeffs}};
}

inline json zeros_to_json(const CountingMeasure& nu) {
    json zs = json::array(), rs = json::array();
    for (const auto& z : nu.points) zs.push_back(cplx_to_json(z));
    for (double r : nu.residuals) rs.push_back(r);
    return json{{"n", nu.n}, {"zeros", zs}, {"residuals", rs}};
}

inline json locus_to_json(const AccumulationLocus& loc) {
    json data;
    if (loc.kind == AccumulationLocus::Kind::line) {
        data = json{{"point", cplx_to_json(loc.point)},
                    {"direction", cplx_to_json(loc.direction)}};
    } else {
        data = json{{"center", cplx_to_json(loc.point)},
                    {"radius", loc.radius}};
    }
    return json{{"kind", loc.kind == AccumulationLocus::Kind::line ? "line"
                                                                   : "circle"},
                {"data", data}};
}

inline json points_to_json(const std::vector<cplx>& pts) {
    json data = json::array();
    for (const auto& p : pts) data.push_back(cplx_to_json(p));
    return json{{"kind", "points"}, {"data", data}};
}

}  // namespace faberlab

#endif
