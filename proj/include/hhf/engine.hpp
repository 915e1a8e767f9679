#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhf/fractional.hpp"
#include "hhf/function_models.hpp"
#include "hhf/quadrature.hpp"
#include "hhf/report.hpp"
#include "hhf/special_math.hpp"

namespace hhf {

// A stated hypothesis of an evaluator does not hold for the given inputs
// (e.g. an asymmetric weight fed to a Fejer-type evaluator). Distinct from a
// fail verdict: the claim was never applicable.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline QuadConfig inner_config(const QuadConfig& cfg) {
    QuadConfig inner = cfg;
    inner.target_abs_tol = std::max(cfg.target_abs_tol * 1e-2, 1e-14);
    inner.target_rel_tol = std::min(cfg.target_rel_tol, 1e-12);
    return inner;
}

inline std::vector<double> merge_breaks(const std::vector<double>& a,
                                        const std::vector<double>& b) {
    std::vector<double> out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// For convex f the derivative is monotone, so |f'| peaks at an endpoint.
inline double max_abs_df(const FunctionModel& f, const Interval& iv) {
    return std::max(std::abs(f.df(iv.a)), std::abs(f.df(iv.b)));
}

inline void require_symmetric_nonnegative(const WeightModel& g, const Interval& iv) {
    const int n = 257;
    double max_abs = 0.0, min_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double x = iv.a + (iv.b - iv.a) * i / (n - 1);
        const double v = g(x);
        if (!std::isfinite(v))
            throw PreconditionError("weight evaluates non-finite at x = " + std::to_string(x));
        max_abs = std::max(max_abs, std::abs(v));
        min_val = std::min(min_val, v);
    }
    if (min_val < -1e-12 * (1.0 + max_abs))
        throw PreconditionError("weight '" + g.spec + "' is not nonnegative on [" +
                                std::to_string(iv.a) + ", " + std::to_string(iv.b) +
                                "] (min " + std::to_string(min_val) + ")");
    if (!g.symmetric_by_construction) {
        const double asym = check_symmetry(g, iv, 129);
        if (asym > 1e-9 * (1.0 + max_abs))
            throw PreconditionError("weight '" + g.spec +
                                    "' is not symmetric about the midpoint (max asymmetry " +
                                    std::to_string(asym) + ")");
    }
}

struct OperatorLhs {
    double value = 0.0;
    double budget = 0.0;
    double weight_pair_sum = 0.0; // J_{mid-} g(a) + J_{mid+} g(b)
};

// f((a+b)/2)[J_{mid-} g(a) + J_{mid+} g(b)] - [J_{mid-}(fg)(a) + J_{mid+}(fg)(b)]
inline OperatorLhs midpoint_operator_lhs(const FunctionModel& f, const WeightModel& g,
                                         FracOrder alpha, const Interval& iv,
                                         const QuadConfig& cfg) {
    const double mid = iv.midpoint();
    const MidpointPair gp = midpoint_pair_weight(g, alpha, iv, cfg);
    auto fg = [&f, &g](double t) { return f(t) * g(t); };
    const auto breaks = merge_breaks(f.kinks, g.kinks);
    const QuadResult fg_left = j_right(fg, alpha, iv.a, mid, cfg, breaks);
    const QuadResult fg_right = j_left(fg, alpha, mid, iv.b, cfg, breaks);
    const double fm = f(mid);
    OperatorLhs out;
    out.weight_pair_sum = gp.left.value + gp.right.value;
    out.value = fm * out.weight_pair_sum - (fg_left.value + fg_right.value);
    out.budget = std::abs(fm) * (gp.left.error_estimate + gp.right.error_estimate) +
                 fg_left.error_estimate + fg_right.error_estimate;
    return out;
}

template <class Body>
void run_guarded(InequalityReport& r, Body&& body) {
    try {
        body();
    } catch (const ConvergenceError& e) {
        r.verdict = Verdict::inconclusive;
        r.slack = std::numeric_limits<double>::quiet_NaN();
        r.notes.push_back(std::string("quadrature failure: ") + e.what());
    } catch (const EvaluationError& e) {
        r.verdict = Verdict::inconclusive;
        r.slack = std::numeric_limits<double>::quiet_NaN();
        r.notes.push_back(std::string("evaluation failure: ") + e.what());
    }
}

} // namespace detail

// Piecewise kernel of the midpoint identity:
//   k(t) = int_a^t (s-a)^(alpha-1) g(s) ds          on [a, mid]
//   k(t) = int_b^t (b-s)^(alpha-1) g(s) ds          on (mid, b]
// The right branch is <= 0 for nonnegative g since it integrates downward
// from b.
struct KernelK {
    FracOrder alpha;
    WeightModel weight;
    Interval interval;
};

inline double eval_kernel(const KernelK& k, double t, const QuadConfig& cfg = {}) {
    const double a = k.interval.a, b = k.interval.b, mid = k.interval.midpoint();
    if (t < a || t > b)
        throw std::invalid_argument("eval_kernel: t outside [a, b]");
    if (t <= mid) {
        if (t == a) return 0.0;
        return integrate_left_weighted(k.weight.g, k.alpha.alpha, a, t, cfg,
                                       k.weight.kinks)
            .value;
    }
    if (t == b) return 0.0;
    return -integrate_right_weighted(k.weight.g, k.alpha.alpha, t, b, cfg,
                                     k.weight.kinks)
                .value;
}

// Identity check: operator form vs kernel form,
//   LHS = f(mid)[J_{mid-} g(a) + J_{mid+} g(b)] - [J_{mid-}(fg)(a) + J_{mid+}(fg)(b)]
//   RHS = (1/Gamma(alpha)) int_a^b k(t) f'(t) dt
// The outer integral is split at the midpoint (kernel branch change) and at
// declared kinks of f'.
inline InequalityReport midpoint_weighted_identity(const FunctionModel& f,
                                                   const WeightModel& g, FracOrder alpha,
                                                   const Interval& iv,
                                                   const QuadConfig& cfg = {},
                                                   const VerdictTol& tol = {}) {
    InequalityReport r;
    r.name = "lemma23";
    r.tol = tol;
    r.instance = {r.name, f.spec, g.spec, iv.a, iv.b, alpha.alpha,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    detail::run_guarded(r, [&] {
        const auto lhs = detail::midpoint_operator_lhs(f, g, alpha, iv, cfg);
        r.sides.push_back({"lhs", lhs.value, lhs.budget});

        const double mid = iv.midpoint();
        const QuadConfig inner = detail::inner_config(cfg);
        const KernelK kernel{alpha, g, iv};
        auto integrand = [&](double t) { return eval_kernel(kernel, t, inner) * f.df(t); };
        const QuadResult L = integrate_with_breaks(integrand, iv.a, mid, f.kinks, cfg);
        const QuadResult R = integrate_with_breaks(integrand, mid, iv.b, f.kinks, cfg);
        const double inv_gamma = 1.0 / gamma(alpha.alpha);
        const double rhs = (L.value + R.value) * inv_gamma;
        // Inner quadrature bias is invisible to the outer estimate; bound it
        // by inner tolerance times the outer measure of f'.
        const double inner_bias =
            inner.target_abs_tol * iv.length() * detail::max_abs_df(f, iv);
        const double rhs_budget =
            (L.error_estimate + R.error_estimate + inner_bias) * inv_gamma;
        r.sides.push_back({"rhs", rhs, rhs_budget});

        r.slack = -std::abs(lhs.value - rhs);
        r.error_budget = lhs.budget + rhs_budget;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// f(mid) <= mean <= (f(a)+f(b))/2 for convex f.
inline InequalityReport hermite_hadamard(const FunctionModel& f, const Interval& iv,
                                         const QuadConfig& cfg = {},
                                         const VerdictTol& tol = {}) {
    InequalityReport r;
    r.name = "hh";
    r.tol = tol;
    r.instance = {r.name, f.spec, "", iv.a, iv.b,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    if (!f.claims_f_convex) r.notes.push_back("hypothesis not claimed: f convex");
    detail::run_guarded(r, [&] {
        const QuadResult I = integrate_with_breaks(f.f, iv.a, iv.b, f.kinks, cfg);
        const double mean = I.value / iv.length();
        const double mean_err = I.error_estimate / iv.length();
        const double fm = f(iv.midpoint());
        const double end_avg = 0.5 * (f(iv.a) + f(iv.b));
        r.sides.push_back({"midpoint_value", fm, 0.0});
        r.sides.push_back({"integral_mean", mean, mean_err});
        r.sides.push_back({"endpoint_average", end_avg, 0.0});
        r.slack = std::min(mean - fm, end_avg - mean);
        r.error_budget = mean_err;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// f(mid) int g <= int fg <= (f(a)+f(b))/2 int g for convex f and a
// nonnegative weight symmetric about the midpoint.
inline InequalityReport fejer_classical(const FunctionModel& f, const WeightModel& g,
                                        const Interval& iv, const QuadConfig& cfg = {},
                                        const VerdictTol& tol = {}) {
    detail::require_symmetric_nonnegative(g, iv);
    InequalityReport r;
    r.name = "fejer";
    r.tol = tol;
    r.instance = {r.name, f.spec, g.spec, iv.a, iv.b,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    if (!f.claims_f_convex) r.notes.push_back("hypothesis not claimed: f convex");
    detail::run_guarded(r, [&] {
        const auto breaks = detail::merge_breaks(f.kinks, g.kinks);
        const QuadResult G = integrate_with_breaks(g.g, iv.a, iv.b, g.kinks, cfg);
        auto fg = [&](double x) { return f(x) * g(x); };
        const QuadResult FG = integrate_with_breaks(fg, iv.a, iv.b, breaks, cfg);
        const double fm = f(iv.midpoint());
        const double end_avg = 0.5 * (f(iv.a) + f(iv.b));
        r.sides.push_back({"midpoint_weighted", fm * G.value,
                           std::abs(fm) * G.error_estimate});
        r.sides.push_back({"weighted_integral", FG.value, FG.error_estimate});
        r.sides.push_back({"endpoint_weighted", end_avg * G.value,
                           std::abs(end_avg) * G.error_estimate});
        r.slack = std::min(FG.value - fm * G.value, end_avg * G.value - FG.value);
        r.error_budget = FG.error_estimate +
                         std::max(std::abs(fm), std::abs(end_avg)) * G.error_estimate;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// mean - f(mid) = (b-a)[int_0^{1/2} t f'(ta+(1-t)b) dt
//                       + int_{1/2}^1 (t-1) f'(ta+(1-t)b) dt]
inline InequalityReport midpoint_mean_identity(const FunctionModel& f, const Interval& iv,
                                               const QuadConfig& cfg = {},
                                               const VerdictTol& tol = {}) {
    InequalityReport r;
    r.name = "kirmaci-id";
    r.tol = tol;
    r.instance = {r.name, f.spec, "", iv.a, iv.b,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    detail::run_guarded(r, [&] {
        const QuadResult I = integrate_with_breaks(f.f, iv.a, iv.b, f.kinks, cfg);
        const double lhs = I.value / iv.length() - f(iv.midpoint());
        const double lhs_budget = I.error_estimate / iv.length();
        r.sides.push_back({"lhs", lhs, lhs_budget});

        // x(t) = ta + (1-t)b maps kinks of f to t-breakpoints.
        std::vector<double> t_breaks;
        for (double k : f.kinks)
            if (k > iv.a && k < iv.b) t_breaks.push_back((iv.b - k) / iv.length());
        auto dphi = [&](double t) { return f.df(t * iv.a + (1.0 - t) * iv.b); };
        const QuadResult I1 = integrate_with_breaks(
            [&](double t) { return t * dphi(t); }, 0.0, 0.5, t_breaks, cfg);
        const QuadResult I2 = integrate_with_breaks(
            [&](double t) { return (t - 1.0) * dphi(t); }, 0.5, 1.0, t_breaks, cfg);
        const double rhs = iv.length() * (I1.value + I2.value);
        const double rhs_budget = iv.length() * (I1.error_estimate + I2.error_estimate);
        r.sides.push_back({"rhs", rhs, rhs_budget});

        r.slack = -std::abs(lhs - rhs);
        r.error_budget = lhs_budget + rhs_budget;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// |mean - f(mid)| <= (b-a)/8 (|f'(a)| + |f'(b)|) for |f'| convex.
inline InequalityReport midpoint_mean_linfty_bound(const FunctionModel& f,
                                                   const Interval& iv,
                                                   const QuadConfig& cfg = {},
                                                   const VerdictTol& tol = {}) {
    InequalityReport r;
    r.name = "kirmaci-1";
    r.tol = tol;
    r.instance = {r.name, f.spec, "", iv.a, iv.b,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    if (!f.claims_abs_df_convex) r.notes.push_back("hypothesis not claimed: |f'| convex");
    detail::run_guarded(r, [&] {
        const QuadResult I = integrate_with_breaks(f.f, iv.a, iv.b, f.kinks, cfg);
        const double lhs = std::abs(I.value / iv.length() - f(iv.midpoint()));
        const double lhs_budget = I.error_estimate / iv.length();
        const double rhs =
            iv.length() / 8.0 * (std::abs(f.df(iv.a)) + std::abs(f.df(iv.b)));
        r.sides.push_back({"lhs", lhs, lhs_budget});
        r.sides.push_back({"rhs", rhs, 0.0});
        r.slack = rhs - lhs;
        r.error_budget = lhs_budget;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// |mean - f(mid)| <= (b-a)/16 (4/(p+1))^(1/p)
//   [ (|f'(a)|^r + 3|f'(b)|^r)^(1/r') + (3|f'(a)|^r + |f'(b)|^r)^(1/r') ]
// with r = p/(p-1) and 1/r' = (p-1)/p, for |f'|^(p/(p-1)) convex.
inline InequalityReport midpoint_mean_holder_bound(const FunctionModel& f,
                                                   const Interval& iv, double p,
                                                   const QuadConfig& cfg = {},
                                                   const VerdictTol& tol = {}) {
    if (!(p > 1.0)) throw std::invalid_argument("requires p > 1");
    const double r_exp = p / (p - 1.0);
    InequalityReport r;
    r.name = "kirmaci-2";
    r.tol = tol;
    r.instance = {r.name, f.spec, "", iv.a, iv.b,
                  std::numeric_limits<double>::quiet_NaN(), r_exp, p,
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    if (!f.claims_abs_df_pow_convex(r_exp))
        r.notes.push_back("hypothesis not claimed: |f'|^" + std::to_string(r_exp) +
                          " convex");
    detail::run_guarded(r, [&] {
        const QuadResult I = integrate_with_breaks(f.f, iv.a, iv.b, f.kinks, cfg);
        const double lhs = std::abs(I.value / iv.length() - f(iv.midpoint()));
        const double lhs_budget = I.error_estimate / iv.length();
        const double A = std::pow(std::abs(f.df(iv.a)), r_exp);
        const double B = std::pow(std::abs(f.df(iv.b)), r_exp);
        const double outer = (p - 1.0) / p;
        const double rhs = iv.length() / 16.0 * std::pow(4.0 / (p + 1.0), 1.0 / p) *
                           (std::pow(A + 3.0 * B, outer) + std::pow(3.0 * A + B, outer));
        r.sides.push_back({"lhs", lhs, lhs_budget});
        r.sides.push_back({"rhs", rhs, 0.0});
        r.slack = rhs - lhs;
        r.error_budget = lhs_budget;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// f(mid) <= Gamma(alpha+1)/(2(b-a)^alpha) [J_{a+} f(b) + J_{b-} f(a)]
//        <= (f(a)+f(b))/2, stated for 0 <= a < b.
inline InequalityReport hermite_hadamard_fractional(const FunctionModel& f,
                                                    FracOrder alpha, const Interval& iv,
                                                    const QuadConfig& cfg = {},
                                                    const VerdictTol& tol = {}) {
    if (iv.a < 0.0)
        throw PreconditionError("hh-frac: requires 0 <= a (got a = " +
                                std::to_string(iv.a) + ")");
    InequalityReport r;
    r.name = "hh-frac";
    r.tol = tol;
    r.instance = {r.name, f.spec, "", iv.a, iv.b, alpha.alpha,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    if (!f.claims_f_convex) r.notes.push_back("hypothesis not claimed: f convex");
    detail::run_guarded(r, [&] {
        const QuadResult jl = j_left(f.f, alpha, iv.a, iv.b, cfg, f.kinks);
        const QuadResult jr = j_right(f.f, alpha, iv.a, iv.b, cfg, f.kinks);
        const double c = gamma(alpha.alpha + 1.0) /
                         (2.0 * std::pow(iv.length(), alpha.alpha));
        const double middle = c * (jl.value + jr.value);
        const double middle_err = c * (jl.error_estimate + jr.error_estimate);
        const double fm = f(iv.midpoint());
        const double end_avg = 0.5 * (f(iv.a) + f(iv.b));
        r.sides.push_back({"midpoint_value", fm, 0.0});
        r.sides.push_back({"fractional_mean", middle, middle_err});
        r.sides.push_back({"endpoint_average", end_avg, 0.0});
        r.slack = std::min(middle - fm, end_avg - middle);
        r.error_budget = middle_err;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// f(mid)[J_{a+} g(b) + J_{b-} g(a)] <= J_{a+}(fg)(b) + J_{b-}(fg)(a)
//   <= (f(a)+f(b))/2 [J_{a+} g(b) + J_{b-} g(a)]
inline InequalityReport fejer_fractional(const FunctionModel& f, const WeightModel& g,
                                         FracOrder alpha, const Interval& iv,
                                         const QuadConfig& cfg = {},
                                         const VerdictTol& tol = {}) {
    detail::require_symmetric_nonnegative(g, iv);
    InequalityReport r;
    r.name = "fejer-frac";
    r.tol = tol;
    r.instance = {r.name, f.spec, g.spec, iv.a, iv.b, alpha.alpha,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    if (!f.claims_f_convex) r.notes.push_back("hypothesis not claimed: f convex");
    detail::run_guarded(r, [&] {
        const QuadResult gl = j_left(g.g, alpha, iv.a, iv.b, cfg, g.kinks);
        const QuadResult gr = j_right(g.g, alpha, iv.a, iv.b, cfg, g.kinks);
        auto fg = [&](double x) { return f(x) * g(x); };
        const auto breaks = detail::merge_breaks(f.kinks, g.kinks);
        const QuadResult fgl = j_left(fg, alpha, iv.a, iv.b, cfg, breaks);
        const QuadResult fgr = j_right(fg, alpha, iv.a, iv.b, cfg, breaks);
        const double G = gl.value + gr.value;
        const double G_err = gl.error_estimate + gr.error_estimate;
        const double FG = fgl.value + fgr.value;
        const double FG_err = fgl.error_estimate + fgr.error_estimate;
        const double fm = f(iv.midpoint());
        const double end_avg = 0.5 * (f(iv.a) + f(iv.b));
        r.sides.push_back({"midpoint_weighted", fm * G, std::abs(fm) * G_err});
        r.sides.push_back({"weighted_integral", FG, FG_err});
        r.sides.push_back({"endpoint_weighted", end_avg * G, std::abs(end_avg) * G_err});
        r.slack = std::min(FG - fm * G, end_avg * G - FG);
        r.error_budget = FG_err + std::max(std::abs(fm), std::abs(end_avg)) * G_err;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// |midpoint operator LHS| <= RHS_sharp <= RHS_final, where
//   RHS_final = (b-a)^(alpha+1) ||g||_[a,b] / (2^(alpha+1)(alpha+1)Gamma(alpha+1))
//               (|f'(a)| + |f'(b)|)
// and RHS_sharp is the two-subinterval-norm refinement.
inline InequalityReport weighted_midpoint_linfty_bound(const FunctionModel& f,
                                                       const WeightModel& g,
                                                       FracOrder alpha, const Interval& iv,
                                                       const QuadConfig& cfg = {},
                                                       const VerdictTol& tol = {}) {
    InequalityReport r;
    r.name = "thm24";
    r.tol = tol;
    r.instance = {r.name, f.spec, g.spec, iv.a, iv.b, alpha.alpha,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    if (!f.claims_abs_df_convex) r.notes.push_back("hypothesis not claimed: |f'| convex");
    detail::run_guarded(r, [&] {
        const auto L = detail::midpoint_operator_lhs(f, g, alpha, iv, cfg);
        const double lhs = std::abs(L.value);
        const double mid = iv.midpoint();
        const double nl = sup_norm(g, iv.a, mid).value;
        const double nr = sup_norm(g, mid, iv.b).value;
        const double nf = sup_norm(g, iv.a, iv.b).value;
        const double al = alpha.alpha;
        const double da = std::abs(f.df(iv.a)), db = std::abs(f.df(iv.b));
        const double d_pow = std::pow(iv.length(), al + 1.0);
        const double ga1 = gamma(al + 1.0);
        const double rhs_final =
            d_pow * nf / (std::pow(2.0, al + 1.0) * (al + 1.0) * ga1) * (da + db);
        const double rhs_sharp =
            d_pow / (std::pow(2.0, al + 2.0) * (al + 2.0) * (al + 1.0) * ga1) *
            (nl * ((al + 3.0) * da + (al + 1.0) * db) +
             nr * ((al + 1.0) * da + (al + 3.0) * db));
        r.sides.push_back({"lhs", lhs, L.budget});
        r.sides.push_back({"rhs_sharp", rhs_sharp, 0.0});
        r.sides.push_back({"rhs_final", rhs_final, 0.0});
        r.slack = std::min(rhs_sharp - lhs, rhs_final - rhs_sharp);
        r.error_budget = L.budget;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// Power-mean bound for |f'|^q convex. Two candidate leading constants are
// evaluated; they differ by a factor of 2 (denominators 2^(alpha+1+1/q) and
// 2^(alpha+1/q)). The report records whether each candidate holds; the
// verdict is keyed to the looser one.
inline InequalityReport weighted_midpoint_power_mean_bound(
    const FunctionModel& f, const WeightModel& g, FracOrder alpha, const Interval& iv,
    double q, const QuadConfig& cfg = {}, const VerdictTol& tol = {}) {
    if (!(q > 1.0)) throw std::invalid_argument("requires q > 1");
    InequalityReport r;
    r.name = "thm25";
    r.tol = tol;
    r.instance = {r.name, f.spec, g.spec, iv.a, iv.b, alpha.alpha, q,
                  q / (q - 1.0), std::numeric_limits<double>::quiet_NaN(), 0, -1};
    if (!f.claims_abs_df_pow_convex(q))
        r.notes.push_back("hypothesis not claimed: |f'|^" + std::to_string(q) + " convex");
    r.notes.push_back("left side uses the midpoint operator pair");
    detail::run_guarded(r, [&] {
        const auto L = detail::midpoint_operator_lhs(f, g, alpha, iv, cfg);
        const double lhs = std::abs(L.value);
        const double mid = iv.midpoint();
        const double nl = sup_norm(g, iv.a, mid).value;
        const double nr = sup_norm(g, mid, iv.b).value;
        const double al = alpha.alpha;
        const double A = std::pow(std::abs(f.df(iv.a)), q);
        const double B = std::pow(std::abs(f.df(iv.b)), q);
        const double S = nl * std::pow((al + 3.0) * A + (al + 1.0) * B, 1.0 / q) +
                         nr * std::pow((al + 1.0) * A + (al + 3.0) * B, 1.0 / q);
        const double common = std::pow(iv.length(), al + 1.0) /
                              ((al + 1.0) * std::pow(al + 2.0, 1.0 / q) *
                               gamma(al + 1.0));
        const double rhs_stmt = common / std::pow(2.0, al + 1.0 + 1.0 / q) * S;
        const double rhs_proof = common / std::pow(2.0, al + 1.0 / q) * S;
        r.sides.push_back({"lhs", lhs, L.budget});
        r.sides.push_back({"rhs_stmt", rhs_stmt, 0.0});
        r.sides.push_back({"rhs_proof", rhs_proof, 0.0});
        const double scale = report_scale(r.sides);
        const double margin = tol.atol + tol.rtol * scale + L.budget;
        r.notes.push_back(std::string("candidate rhs_stmt holds: ") +
                          (lhs <= rhs_stmt + margin ? "yes" : "no"));
        r.notes.push_back(std::string("candidate rhs_proof holds: ") +
                          (lhs <= rhs_proof + margin ? "yes" : "no"));
        r.slack = rhs_proof - lhs;
        r.error_budget = L.budget;
        r.verdict = judge(r.slack, scale, r.error_budget, tol);
    });
    return r;
}

// Hoelder bound for |f'|^q convex, 1/p + 1/q = 1:
//   |LHS| <= ||g||_[a,b] (b-a)^(alpha+1) / (2^(alpha+1+2/q)(alpha p+1)^(1/p)
//            Gamma(alpha+1)) [ (3|f'(a)|^q + |f'(b)|^q)^(1/q)
//                            + (|f'(a)|^q + 3|f'(b)|^q)^(1/q) ]
inline InequalityReport weighted_midpoint_holder_bound(const FunctionModel& f,
                                                       const WeightModel& g,
                                                       FracOrder alpha, const Interval& iv,
                                                       double p, const QuadConfig& cfg = {},
                                                       const VerdictTol& tol = {}) {
    if (!(p > 1.0)) throw std::invalid_argument("requires p > 1");
    const double q = p / (p - 1.0);
    InequalityReport r;
    r.name = "thm26";
    r.tol = tol;
    r.instance = {r.name, f.spec, g.spec, iv.a, iv.b, alpha.alpha, q, p,
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    if (!f.claims_abs_df_pow_convex(q))
        r.notes.push_back("hypothesis not claimed: |f'|^" + std::to_string(q) + " convex");
    detail::run_guarded(r, [&] {
        const auto L = detail::midpoint_operator_lhs(f, g, alpha, iv, cfg);
        const double lhs = std::abs(L.value);
        const double nf = sup_norm(g, iv.a, iv.b).value;
        const double al = alpha.alpha;
        const double A = std::pow(std::abs(f.df(iv.a)), q);
        const double B = std::pow(std::abs(f.df(iv.b)), q);
        const double rhs = nf * std::pow(iv.length(), al + 1.0) /
                           (std::pow(2.0, al + 1.0 + 2.0 / q) *
                            std::pow(al * p + 1.0, 1.0 / p) * gamma(al + 1.0)) *
                           (std::pow(3.0 * A + B, 1.0 / q) + std::pow(A + 3.0 * B, 1.0 / q));
        r.sides.push_back({"lhs", lhs, L.budget});
        r.sides.push_back({"rhs", rhs, 0.0});
        r.slack = rhs - lhs;
        r.error_budget = L.budget;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// Identity with cumulative weight powers, for any x in [a,b]:
//   int_a^x (W_a t)^alpha f' dt - int_x^b (W_b t)^alpha f' dt
//     = [(W_a x)^alpha + (W_b x)^alpha] f(x)
//       - alpha int_a^x (W_a t)^(alpha-1) w f dt
//       - alpha int_x^b (W_b t)^(alpha-1) w f dt
// where W_a t = int_a^t w and W_b t = int_t^b w. The alpha-1 powers are
// endpoint-singular for alpha < 1; factoring W_a t = (t-a) psi(t) moves the
// singular part into the weighted-quadrature substitution.
inline InequalityReport cumulative_weight_identity(const FunctionModel& f,
                                                   const WeightModel& w, FracOrder alpha,
                                                   double x, const Interval& iv,
                                                   const QuadConfig& cfg = {},
                                                   const VerdictTol& tol = {}) {
    if (!(x >= iv.a && x <= iv.b))
        throw std::invalid_argument("cumulative_weight_identity: x outside [a, b]");
    InequalityReport r;
    r.name = "eq0";
    r.tol = tol;
    r.instance = {r.name, f.spec, w.spec, iv.a, iv.b, alpha.alpha,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), x, 0, -1};
    detail::run_guarded(r, [&] {
        const double al = alpha.alpha;
        const QuadConfig inner = detail::inner_config(cfg);
        // Two prefix caches, one from each end: forming int_t^b w as
        // total minus prefix cancels catastrophically near t = b and can
        // push the alpha-powers onto negative arguments.
        const CumulativeIntegral Wf(w.g, iv.a, iv.b, inner);
        const CumulativeIntegral Wr([&w, b = iv.b](double s) { return w(b - s); }, 0.0,
                                    iv.length(), inner);
        auto W_a = [&Wf](double t) { return Wf.value(t); };
        auto W_b = [&Wr, b = iv.b](double t) { return Wr.value(b - t); };

        const auto breaks = detail::merge_breaks(f.kinks, w.kinks);

        double lhs = 0.0, lhs_budget = 0.0;
        if (x > iv.a) {
            const QuadResult I = integrate_with_breaks(
                [&](double t) { return std::pow(W_a(t), al) * f.df(t); }, iv.a, x,
                breaks, cfg);
            lhs += I.value;
            lhs_budget += I.error_estimate;
        }
        if (x < iv.b) {
            const QuadResult I = integrate_with_breaks(
                [&](double t) { return std::pow(W_b(t), al) * f.df(t); }, x, iv.b,
                breaks, cfg);
            lhs -= I.value;
            lhs_budget += I.error_estimate;
        }
        r.sides.push_back({"lhs", lhs, lhs_budget});

        double rhs = (std::pow(W_a(x), al) + std::pow(W_b(x), al)) * f(x);
        double rhs_budget = 0.0;
        if (x > iv.a) {
            auto h = [&](double t) {
                const double psi = t > iv.a ? W_a(t) / (t - iv.a) : w(iv.a);
                return std::pow(psi, al - 1.0) * w(t) * f(t);
            };
            const QuadResult I = integrate_left_weighted(h, al, iv.a, x, cfg, breaks);
            rhs -= al * I.value;
            rhs_budget += al * I.error_estimate;
        }
        if (x < iv.b) {
            auto h = [&](double t) {
                const double psi = t < iv.b ? W_b(t) / (iv.b - t) : w(iv.b);
                return std::pow(psi, al - 1.0) * w(t) * f(t);
            };
            const QuadResult I = integrate_right_weighted(h, al, x, iv.b, cfg, breaks);
            rhs -= al * I.value;
            rhs_budget += al * I.error_estimate;
        }
        // Coarse sensitivity of the alpha-powers to the prefix-integral error.
        rhs_budget += (Wf.error_estimate() + Wr.error_estimate()) * (1.0 + al) *
                      (1.0 + std::pow(std::max(Wf.total(), 1.0), al));
        r.sides.push_back({"rhs", rhs, rhs_budget});

        r.slack = -std::abs(lhs - rhs);
        r.error_budget = lhs_budget + rhs_budget;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// Concave control for negative testing: carries no convexity claims and must
// make the sandwich evaluators report fail, not inconclusive.
inline FunctionModel make_concave_control() {
    FunctionModel m;
    m.spec = "concave-quad";
    m.f = [](double x) { return -x * x; };
    m.df = [](double x) { return -2.0 * x; };
    return m;
}

} // namespace hhf
