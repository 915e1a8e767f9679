#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "hhf/function_models.hpp"
#include "hhf/quadrature.hpp"
#include "hhf/special_math.hpp"

namespace hhf {

// Order of a Riemann-Liouville integral. alpha = 0 is admitted solely to
// host the identity-operator convention J^0 f = f; every sampled or
// user-facing order is strictly positive.
struct FracOrder {
    double alpha;

    explicit FracOrder(double a) : alpha(a) {
        if (!std::isfinite(a) || a < 0.0)
            throw std::domain_error("FracOrder: requires finite alpha >= 0, got " +
                                    std::to_string(a));
    }
    bool is_identity() const { return alpha == 0.0; }
};

// J_{a+}^alpha f(x) = (1/Gamma(alpha)) int_a^x (x-t)^(alpha-1) f(t) dt.
// The weight is singular at the upper limit t = x, so this is the
// right-weighted integral scaled by 1/Gamma(alpha).
template <class F>
QuadResult j_left(F&& f, FracOrder alpha, double a, double x,
                  const QuadConfig& cfg = {}, std::span<const double> f_breaks = {}) {
    if (alpha.is_identity()) return QuadResult{f(x), 0.0, 1};
    if (!(x > a)) throw std::invalid_argument("j_left: requires x > a");
    QuadResult r = integrate_right_weighted(f, alpha.alpha, a, x, cfg, f_breaks);
    const double gai = 1.0 / gamma(alpha.alpha);
    r.value *= gai;
    r.error_estimate *= gai;
    return r;
}

// J_{b-}^alpha f(x) = (1/Gamma(alpha)) int_x^b (t-x)^(alpha-1) f(t) dt.
template <class F>
QuadResult j_right(F&& f, FracOrder alpha, double x, double b,
                   const QuadConfig& cfg = {}, std::span<const double> f_breaks = {}) {
    if (alpha.is_identity()) return QuadResult{f(x), 0.0, 1};
    if (!(x < b)) throw std::invalid_argument("j_right: requires x < b");
    QuadResult r = integrate_left_weighted(f, alpha.alpha, x, b, cfg, f_breaks);
    const double gai = 1.0 / gamma(alpha.alpha);
    r.value *= gai;
    r.error_estimate *= gai;
    return r;
}

struct MidpointPair {
    QuadResult left;  // J_{mid-}^alpha g(a) = (1/Gamma(alpha)) int_a^mid (t-a)^(alpha-1) g dt
    QuadResult right; // J_{mid+}^alpha g(b) = (1/Gamma(alpha)) int_mid^b (b-t)^(alpha-1) g dt
};

// The two half-interval operator values at the midpoint; for a weight
// symmetric about the midpoint the components agree.
inline MidpointPair midpoint_pair_weight(const WeightModel& g, FracOrder alpha,
                                         const Interval& iv, const QuadConfig& cfg = {}) {
    const double mid = iv.midpoint();
    MidpointPair out;
    try {
        out.left = j_right(g.g, alpha, iv.a, mid, cfg, g.kinks);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string("midpoint_pair_weight left: ") + e.what(),
                               e.best());
    }
    try {
        out.right = j_left(g.g, alpha, mid, iv.b, cfg, g.kinks);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string("midpoint_pair_weight right: ") + e.what(),
                               e.best());
    }
    return out;
}

} // namespace hhf
