#ifndef FABERLAB_QUADRATURE_HPP
#define FABERLAB_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace faberlab {

struct QuadratureError : std::runtime_error {
    double achieved;
    QuadratureError(const std::string& msg, double err)
        : std::runtime_error(msg), achieved(err) {}
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1].
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GKResult {
    double value;
    double error;
};

template <class F>
GKResult gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = h * gk_nodes[i];
        double fv;
        if (i == 7) {
            fv = f(c);
            resk += gk_wk[7] * fv;
            resg += gk_wg[3] * fv;
        } else {
            fv = f(c - x) + f(c + x);
            resk += gk_wk[i] * fv;
            if (i % 2 == 1) resg += gk_wg[i / 2] * fv;
        }
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f on [a, b] to the requested
// relative tolerance (with an absolute floor). Throws QuadratureError if
// the refinement budget is exhausted before reaching the tolerance.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double rel_tol,
                          double abs_floor = 1e-300, int max_depth = 48,
                          int max_intervals = 20000) {
    struct Seg {
        double a, b, value, error;
        int depth;
    };
    auto first = detail::gk15(f, a, b);
    std::vector<Seg> stack{{a, b, first.value, first.error, 0}};
    double total = 0.0, total_err = 0.0;
    int used = 1;
    std::vector<Seg> done;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const double scale = std::abs(s.value) + abs_floor;
        if (s.error <= rel_tol * scale * 0.1 || s.depth >= max_depth) {
            total += s.value;
            total_err += s.error;
            continue;
        }
        if (used >= max_intervals) {
            total += s.value;
            total_err += s.error;
            continue;
        }
        const double m = 0.5 * (s.a + s.b);
        auto l = detail::gk15(f, s.a, m);
        auto r = detail::gk15(f, m, s.b);
        used += 2;
        stack.push_back({s.a, m, l.value, l.error, s.depth + 1});
        stack.push_back({m, s.b, r.value, r.error, s.depth + 1});
    }
    if (total_err > rel_tol * (std::abs(total) + abs_floor) * 10.0)
        throw QuadratureError("adaptive quadrature did not converge",
                              total_err / (std::abs(total) + abs_floor));
    return total;
}

}  // namespace faberlab

#endif
