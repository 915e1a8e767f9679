#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhf/engine.hpp"
#include "hhf/rng.hpp"

namespace hhf {

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InstanceConfig {
    std::vector<std::string> function_pool;
    std::vector<std::string> weight_pool;
    double a_min = 0.0, a_max = 2.0;
    double len_min = 0.5, len_max = 3.0;
    double alpha_lo = 0.2, alpha_hi = 3.0;
    double q_lo = 1.2, q_hi = 4.0;
    std::uint64_t seed = 0;

    // Default pools span the singular (alpha < 1) and smooth (alpha >= 1)
    // regimes and both smooth and kinked f.
    static InstanceConfig defaults(std::uint64_t seed = 0) {
        InstanceConfig c;
        c.function_pool = {"exp",         "pow:2",
                           "pow:3",       "quad:1,0,0",
                           "maxaffine:(-1,0.5),(1,-0.5)", "abslin:1.5,0.9"};
        c.weight_pool = {"one", "sym:bump:2", "sym:cosine:1", "sym:poly:2,1"};
        c.seed = seed;
        return c;
    }

    void validate() const {
        if (function_pool.empty() || weight_pool.empty())
            throw std::invalid_argument("InstanceConfig: pools must be non-empty");
        if (!(a_min <= a_max) || !(len_min <= len_max) || !(len_min > 0.0))
            throw std::invalid_argument("InstanceConfig: bad interval ranges");
        if (!(alpha_lo > 0.0) || !(alpha_lo <= alpha_hi))
            throw std::invalid_argument("InstanceConfig: bad alpha range");
        if (!(q_lo > 1.0) || !(q_lo <= q_hi))
            throw std::invalid_argument("InstanceConfig: bad q range");
    }
};

struct Instance {
    FunctionModel f;
    WeightModel g;
    Interval iv;
    double alpha;
    double q;
    double p;
    double x;
    std::uint64_t seed;
    long index;
};

// Claims an instance must carry beyond per-model validation (suite-specific
// hypotheses; a sample without them is rejected and redrawn).
struct InstanceNeeds {
    bool abs_df_convex = false;
    bool abs_df_pow_q = false;
};

// Parser grammar plus the reserved negative-control descriptor, so recorded
// control instances replay like any other.
inline FunctionModel build_function(const std::string& spec) {
    if (spec == "concave-quad") return make_concave_control();
    return parse_function(spec);
}

namespace detail {

inline bool derivative_consistent(const FunctionModel& f, const Interval& iv) {
    const double h = 1e-6 * iv.length();
    const int n = 33;
    for (int i = 0; i < n; ++i) {
        const double x = iv.a + (iv.b - iv.a) * (i + 0.5) / n;
        if (x - 2.0 * h < iv.a || x + 2.0 * h > iv.b) continue;
        bool near_kink = false;
        for (double k : f.kinks) near_kink = near_kink || std::abs(x - k) <= 3.0 * h;
        if (near_kink) continue;
        const double cd = (f(x + h) - f(x - h)) / (2.0 * h);
        const double d = f.df(x);
        if (!std::isfinite(cd) || !std::isfinite(d)) return false;
        if (std::abs(cd - d) > 1e-5 * (1.0 + std::abs(d))) return false;
    }
    return true;
}

inline double grid_scale(const std::function<double(double)>& h, const Interval& iv,
                         int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = iv.a + (iv.b - iv.a) * i / (n - 1);
        s = std::max(s, std::abs(h(x)));
    }
    return s;
}

inline bool convexity_claim_ok(const std::function<double(double)>& h,
                               const Interval& iv) {
    const int n = 33;
    const double viol = check_convexity(h, iv, n);
    return viol <= 1e-12 * (1.0 + grid_scale(h, iv, n));
}

inline bool validate_instance(const Instance& inst, const InstanceNeeds& needs) {
    const FunctionModel& f = inst.f;
    const WeightModel& g = inst.g;
    const Interval& iv = inst.iv;
    if (!derivative_consistent(f, iv)) return false;
    if (f.claims_f_convex && !convexity_claim_ok(f.f, iv)) return false;
    if (f.claims_abs_df_convex &&
        !convexity_claim_ok([&f](double x) { return std::abs(f.df(x)); }, iv))
        return false;
    if (f.claims_abs_df_pow_convex(inst.q) &&
        !convexity_claim_ok(
            [&f, q = inst.q](double x) { return std::pow(std::abs(f.df(x)), q); }, iv))
        return false;
    if (g.symmetric_by_construction) {
        const double norm = grid_scale(g.g, iv, 33);
        if (check_symmetry(g, iv, 33) > 1e-15 * (1.0 + norm)) return false;
    }
    if (g.nonnegative_by_construction) {
        for (int i = 0; i < 33; ++i) {
            const double x = iv.a + (iv.b - iv.a) * i / 32.0;
            if (g(x) < -1e-12) return false;
        }
    }
    if (needs.abs_df_convex && !f.claims_abs_df_convex) return false;
    if (needs.abs_df_pow_q && !f.claims_abs_df_pow_convex(inst.q)) return false;
    return true;
}

} // namespace detail

// Deterministic function of (seed, index): rejected draws advance an attempt
// counter inside the stream derivation, never the caller's sequence.
inline Instance gen_instance(const InstanceConfig& cfg, long index,
                             const InstanceNeeds& needs = {}) {
    cfg.validate();
    constexpr int kMaxAttempts = 64;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        SplitMix64 rng = SplitMix64::stream(cfg.seed, static_cast<std::uint64_t>(index),
                                            static_cast<std::uint64_t>(attempt));
        const double a = rng.uniform(cfg.a_min, cfg.a_max);
        const double len = rng.uniform(cfg.len_min, cfg.len_max);
        const Interval iv(a, a + len);
        const std::string& fspec =
            cfg.function_pool[rng.uniform_index(cfg.function_pool.size())];
        const std::string& gspec =
            cfg.weight_pool[rng.uniform_index(cfg.weight_pool.size())];
        const double alpha = rng.uniform(cfg.alpha_lo, cfg.alpha_hi);
        const double q = rng.uniform(cfg.q_lo, cfg.q_hi);
        const double xr = rng.uniform(iv.a, iv.b);
        // Cycle the identity evaluation point through interior, a, mid, b so
        // endpoint cases are exercised on every fourth instance.
        double x = xr;
        switch (index % 4) {
            case 1: x = iv.a; break;
            case 2: x = iv.midpoint(); break;
            case 3: x = iv.b; break;
            default: break;
        }
        Instance inst{build_function(fspec), parse_weight(gspec, iv), iv,
                      alpha,                 q,
                      q / (q - 1.0),         x,
                      cfg.seed,              index};
        if (detail::validate_instance(inst, needs)) return inst;
    }
    throw GenerationError("gen_instance: no valid sample for index " +
                          std::to_string(index) + " after " +
                          std::to_string(kMaxAttempts) + " attempts");
}

// ---------------------------------------------------------------------------
// Reduction-equivalence checks (alpha = 1 and/or g = 1 specializations).

// With alpha = 1 the midpoint operator LHS collapses to f(mid) int g - int fg.
inline InequalityReport reduce_midpoint_identity_weighted(const FunctionModel& f,
                                                          const WeightModel& g,
                                                          const Interval& iv,
                                                          const QuadConfig& cfg = {},
                                                          const VerdictTol& tol = {}) {
    InequalityReport r;
    r.name = "reduce-lemma23";
    r.tol = tol;
    r.instance = {r.name, f.spec, g.spec, iv.a, iv.b, 1.0,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    detail::run_guarded(r, [&] {
        const auto L = detail::midpoint_operator_lhs(f, g, FracOrder(1.0), iv, cfg);
        const auto breaks = detail::merge_breaks(f.kinks, g.kinks);
        const QuadResult G = integrate_with_breaks(g.g, iv.a, iv.b, g.kinks, cfg);
        const QuadResult FG = integrate_with_breaks(
            [&](double t) { return f(t) * g(t); }, iv.a, iv.b, breaks, cfg);
        const double fm = f(iv.midpoint());
        const double direct = fm * G.value - FG.value;
        const double direct_budget =
            std::abs(fm) * G.error_estimate + FG.error_estimate;
        r.sides.push_back({"operator_lhs", L.value, L.budget});
        r.sides.push_back({"weighted_gap", direct, direct_budget});
        r.slack = -std::abs(L.value - direct);
        r.error_budget = L.budget + direct_budget;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// With g = 1 and alpha = 1 the final L-infinity bound constant must equal
// (b-a)^2 (|f'(a)| + |f'(b)|) / 8 exactly (to rounding).
inline InequalityReport reduce_linfty_bound_constant(const FunctionModel& f,
                                                     const Interval& iv,
                                                     const QuadConfig& cfg = {}) {
    InequalityReport r;
    r.name = "reduce-thm24";
    r.tol = VerdictTol{0.0, 1e-12};
    r.instance = {r.name, f.spec, "one", iv.a, iv.b, 1.0,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    detail::run_guarded(r, [&] {
        const WeightModel one = parse_weight("one", iv);
        const InequalityReport base =
            weighted_midpoint_linfty_bound(f, one, FracOrder(1.0), iv, cfg);
        const double got = base.side("rhs_final")->value;
        const double expected = iv.length() * iv.length() *
                                (std::abs(f.df(iv.a)) + std::abs(f.df(iv.b))) / 8.0;
        r.sides.push_back({"rhs_final", got, 0.0});
        r.sides.push_back({"classical_scaled", expected, 0.0});
        r.slack = -std::abs(got - expected);
        r.error_budget = 0.0;
        r.verdict = judge(r.slack, report_scale(r.sides), 0.0, VerdictTol{0.0, 1e-12});
    });
    return r;
}

// With g = 1 and alpha = 1 the Hoelder bound equals (b-a) times the
// classical midpoint Hoelder bound for matching p, q.
inline InequalityReport reduce_holder_bound_constant(const FunctionModel& f,
                                                     const Interval& iv, double p,
                                                     const QuadConfig& cfg = {}) {
    InequalityReport r;
    r.name = "reduce-thm26";
    r.tol = VerdictTol{0.0, 1e-12};
    r.instance = {r.name, f.spec, "one", iv.a, iv.b, 1.0, p / (p - 1.0), p,
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    detail::run_guarded(r, [&] {
        const WeightModel one = parse_weight("one", iv);
        const InequalityReport frac =
            weighted_midpoint_holder_bound(f, one, FracOrder(1.0), iv, p, cfg);
        const InequalityReport classical = midpoint_mean_holder_bound(f, iv, p, cfg);
        const double got = frac.side("rhs")->value;
        const double expected = iv.length() * classical.side("rhs")->value;
        r.sides.push_back({"rhs", got, 0.0});
        r.sides.push_back({"classical_scaled", expected, 0.0});
        r.slack = -std::abs(got - expected);
        r.error_budget = 0.0;
        r.verdict = judge(r.slack, report_scale(r.sides), 0.0, VerdictTol{0.0, 1e-12});
    });
    return r;
}

// alpha = 1 collapses the fractional mean to the integral mean.
inline InequalityReport reduce_fractional_mean(const FunctionModel& f, const Interval& iv,
                                               const QuadConfig& cfg = {},
                                               const VerdictTol& tol = {}) {
    InequalityReport r;
    r.name = "reduce-hh-frac";
    r.tol = tol;
    r.instance = {r.name, f.spec, "", iv.a, iv.b, 1.0,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    detail::run_guarded(r, [&] {
        const InequalityReport frac =
            hermite_hadamard_fractional(f, FracOrder(1.0), iv, cfg);
        const InequalityReport classical = hermite_hadamard(f, iv, cfg);
        const Side* fm = frac.side("fractional_mean");
        const Side* cm = classical.side("integral_mean");
        r.sides.push_back({"fractional_mean", fm->value, fm->error_estimate});
        r.sides.push_back({"integral_mean", cm->value, cm->error_estimate});
        r.slack = -std::abs(fm->value - cm->value);
        r.error_budget = fm->error_estimate + cm->error_estimate;
        r.verdict = judge(r.slack, report_scale(r.sides), r.error_budget, tol);
    });
    return r;
}

// alpha = 1 collapses the fractional weighted sandwich onto the classical
// one with every side doubled (each whole-interval operator becomes the
// plain integral, and the pair sums them).
inline InequalityReport reduce_fractional_weighted(const FunctionModel& f,
                                                   const WeightModel& g,
                                                   const Interval& iv,
                                                   const QuadConfig& cfg = {},
                                                   const VerdictTol& tol = {}) {
    InequalityReport r;
    r.name = "reduce-fejer-frac";
    r.tol = tol;
    r.instance = {r.name, f.spec, g.spec, iv.a, iv.b, 1.0,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN(), 0, -1};
    detail::run_guarded(r, [&] {
        const InequalityReport frac = fejer_fractional(f, g, FracOrder(1.0), iv, cfg);
        const InequalityReport classical = fejer_classical(f, g, iv, cfg);
        double worst = 0.0, budget = 0.0;
        for (const char* label :
             {"midpoint_weighted", "weighted_integral", "endpoint_weighted"}) {
            const Side* a = frac.side(label);
            const Side* b = classical.side(label);
            r.sides.push_back({std::string(label) + "_frac", a->value, a->error_estimate});
            r.sides.push_back({std::string(label) + "_classical_x2", 2.0 * b->value,
                               2.0 * b->error_estimate});
            worst = std::max(worst, std::abs(a->value - 2.0 * b->value));
            budget += a->error_estimate + 2.0 * b->error_estimate;
        }
        r.slack = -worst;
        r.error_budget = budget;
        r.verdict = judge(r.slack, report_scale(r.sides), budget, tol);
    });
    return r;
}

// ---------------------------------------------------------------------------
// Single-evaluation dispatch shared by the CLI and replay.

inline InequalityReport eval_equation(const InstanceInfo& in, const QuadConfig& cfg = {},
                                      const VerdictTol& tol = {}) {
    const Interval iv(in.a, in.b);
    const FunctionModel f = build_function(in.f_spec);
    auto weight = [&]() {
        return parse_weight(in.g_spec.empty() ? "one" : in.g_spec, iv);
    };
    auto alpha = [&]() {
        if (!std::isfinite(in.alpha))
            throw std::invalid_argument("eval: --alpha required for " + in.eq);
        return FracOrder(in.alpha);
    };
    auto need_p = [&]() {
        if (std::isfinite(in.p)) return in.p;
        if (std::isfinite(in.q)) return in.q / (in.q - 1.0);
        throw std::invalid_argument("eval: --p (or --q) required for " + in.eq);
    };
    auto need_q = [&]() {
        if (std::isfinite(in.q)) return in.q;
        if (std::isfinite(in.p)) return in.p / (in.p - 1.0);
        throw std::invalid_argument("eval: --q (or --p) required for " + in.eq);
    };

    InequalityReport r;
    if (in.eq == "hh")
        r = hermite_hadamard(f, iv, cfg, tol);
    else if (in.eq == "fejer")
        r = fejer_classical(f, weight(), iv, cfg, tol);
    else if (in.eq == "hh-frac")
        r = hermite_hadamard_fractional(f, alpha(), iv, cfg, tol);
    else if (in.eq == "fejer-frac")
        r = fejer_fractional(f, weight(), alpha(), iv, cfg, tol);
    else if (in.eq == "lemma23")
        r = midpoint_weighted_identity(f, weight(), alpha(), iv, cfg, tol);
    else if (in.eq == "kirmaci-id")
        r = midpoint_mean_identity(f, iv, cfg, tol);
    else if (in.eq == "kirmaci-1")
        r = midpoint_mean_linfty_bound(f, iv, cfg, tol);
    else if (in.eq == "kirmaci-2")
        r = midpoint_mean_holder_bound(f, iv, need_p(), cfg, tol);
    else if (in.eq == "thm24")
        r = weighted_midpoint_linfty_bound(f, weight(), alpha(), iv, cfg, tol);
    else if (in.eq == "thm25")
        r = weighted_midpoint_power_mean_bound(f, weight(), alpha(), iv, need_q(), cfg,
                                               tol);
    else if (in.eq == "thm26")
        r = weighted_midpoint_holder_bound(f, weight(), alpha(), iv, need_p(), cfg, tol);
    else if (in.eq == "eq0")
        r = cumulative_weight_identity(
            f, weight(), alpha(), std::isfinite(in.x) ? in.x : iv.midpoint(), iv, cfg,
            tol);
    else
        throw std::invalid_argument("eval: unknown equation id '" + in.eq + "'");
    r.instance.seed = in.seed;
    r.instance.index = in.index;
    return r;
}

// ---------------------------------------------------------------------------
// Suites.

struct SuiteReport {
    std::string suite;
    int requested_n = 0;
    std::vector<InequalityReport> results;
    int pass = 0, fail = 0, inconclusive = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    std::optional<InstanceInfo> worst_instance;
    double wall_seconds = 0.0;
    InstanceConfig config;
    VerdictTol tol;
    QuadConfig quad;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "identities", "sandwiches", "bounds", "reductions", "negative-controls", "all"};
    return names;
}

namespace detail {

inline void absorb(SuiteReport& s, InequalityReport rep, const Instance& inst) {
    rep.instance.seed = inst.seed;
    rep.instance.index = inst.index;
    switch (rep.verdict) {
        case Verdict::pass: ++s.pass; break;
        case Verdict::fail: ++s.fail; break;
        case Verdict::inconclusive: ++s.inconclusive; break;
    }
    if (std::isfinite(rep.slack) && rep.slack < s.worst_slack) {
        s.worst_slack = rep.slack;
        s.worst_instance = rep.instance;
    }
    s.results.push_back(std::move(rep));
}

inline void run_one_suite(SuiteReport& s, const std::string& name, int n,
                          const InstanceConfig& cfg, const VerdictTol& tol,
                          const QuadConfig& quad) {
    if (name == "identities") {
        for (long i = 0; i < n; ++i) {
            const Instance inst = gen_instance(cfg, i);
            const FracOrder al(inst.alpha);
            absorb(s, midpoint_weighted_identity(inst.f, inst.g, al, inst.iv, quad, tol),
                   inst);
            absorb(s, midpoint_mean_identity(inst.f, inst.iv, quad, tol), inst);
            absorb(s,
                   cumulative_weight_identity(inst.f, inst.g, al, inst.x, inst.iv, quad,
                                              tol),
                   inst);
        }
    } else if (name == "sandwiches") {
        for (long i = 0; i < n; ++i) {
            const Instance inst = gen_instance(cfg, i);
            const FracOrder al(inst.alpha);
            absorb(s, hermite_hadamard(inst.f, inst.iv, quad, tol), inst);
            absorb(s, fejer_classical(inst.f, inst.g, inst.iv, quad, tol), inst);
            absorb(s, hermite_hadamard_fractional(inst.f, al, inst.iv, quad, tol), inst);
            absorb(s, fejer_fractional(inst.f, inst.g, al, inst.iv, quad, tol), inst);
        }
    } else if (name == "bounds") {
        const InstanceNeeds needs{true, true};
        for (long i = 0; i < n; ++i) {
            const Instance inst = gen_instance(cfg, i, needs);
            const FracOrder al(inst.alpha);
            absorb(s, midpoint_mean_linfty_bound(inst.f, inst.iv, quad, tol), inst);
            absorb(s, midpoint_mean_holder_bound(inst.f, inst.iv, inst.p, quad, tol),
                   inst);
            absorb(s,
                   weighted_midpoint_linfty_bound(inst.f, inst.g, al, inst.iv, quad, tol),
                   inst);
            absorb(s,
                   weighted_midpoint_power_mean_bound(inst.f, inst.g, al, inst.iv, inst.q,
                                                      quad, tol),
                   inst);
            absorb(s,
                   weighted_midpoint_holder_bound(inst.f, inst.g, al, inst.iv, inst.p,
                                                  quad, tol),
                   inst);
        }
    } else if (name == "reductions") {
        const InstanceNeeds needs{true, true};
        for (long i = 0; i < n; ++i) {
            const Instance inst = gen_instance(cfg, i, needs);
            absorb(s, reduce_midpoint_identity_weighted(inst.f, inst.g, inst.iv, quad,
                                                        tol),
                   inst);
            absorb(s, reduce_linfty_bound_constant(inst.f, inst.iv, quad), inst);
            absorb(s, reduce_holder_bound_constant(inst.f, inst.iv, inst.p, quad), inst);
            absorb(s, reduce_fractional_mean(inst.f, inst.iv, quad, tol), inst);
            absorb(s, reduce_fractional_weighted(inst.f, inst.g, inst.iv, quad, tol),
                   inst);
        }
    } else if (name == "negative-controls") {
        const FunctionModel control = make_concave_control();
        for (long i = 0; i < n; ++i) {
            SplitMix64 rng = SplitMix64::stream(cfg.seed, static_cast<std::uint64_t>(i),
                                                0xC0117801u);
            const double a = rng.uniform(cfg.a_min, cfg.a_max);
            const Interval iv(a, a + rng.uniform(cfg.len_min, cfg.len_max));
            Instance inst{control, parse_weight("one", iv), iv, 1.0, 2.0, 2.0,
                          iv.midpoint(), cfg.seed, i};
            absorb(s, hermite_hadamard(control, iv, quad, tol), inst);
        }
    } else {
        throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
    }
}

} // namespace detail

inline SuiteReport run_suite(const std::string& name, int n, const InstanceConfig& cfg,
                             const VerdictTol& tol = {}, const QuadConfig& quad = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport s;
    s.suite = name;
    s.requested_n = n;
    s.config = cfg;
    s.tol = tol;
    s.quad = quad;
    if (name == "all") {
        for (const std::string& sub : suite_names())
            if (sub != "all") detail::run_one_suite(s, sub, n, cfg, tol, quad);
    } else {
        detail::run_one_suite(s, name, n, cfg, tol, quad);
    }
    s.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

// ---------------------------------------------------------------------------
// Serialization.

inline double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline std::string suite_report_json(const SuiteReport& s) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version");
    w.value(1);
    w.key("suite");
    w.value(s.suite);

    w.key("config");
    w.begin_object();
    w.key("seed");
    w.value(s.config.seed);
    w.key("n");
    w.value(s.requested_n);
    w.key("atol");
    w.value(s.tol.atol);
    w.key("rtol");
    w.value(s.tol.rtol);
    w.key("quadrature");
    w.begin_object();
    w.key("target_abs_tol");
    w.value(s.quad.target_abs_tol);
    w.key("target_rel_tol");
    w.value(s.quad.target_rel_tol);
    w.key("max_subdivisions");
    w.value(s.quad.max_subdivisions);
    w.end_object();
    w.key("function_pool");
    w.begin_array();
    for (const auto& f : s.config.function_pool) w.value(f);
    w.end_array();
    w.key("weight_pool");
    w.begin_array();
    for (const auto& g : s.config.weight_pool) w.value(g);
    w.end_array();
    w.key("interval_range");
    w.begin_object();
    w.key("a_min");
    w.value(s.config.a_min);
    w.key("a_max");
    w.value(s.config.a_max);
    w.key("len_min");
    w.value(s.config.len_min);
    w.key("len_max");
    w.value(s.config.len_max);
    w.end_object();
    w.key("alpha_range");
    w.begin_array();
    w.value(s.config.alpha_lo);
    w.value(s.config.alpha_hi);
    w.end_array();
    w.key("q_range");
    w.begin_array();
    w.value(s.config.q_lo);
    w.value(s.config.q_hi);
    w.end_array();
    w.end_object();

    w.key("results");
    w.begin_array();
    for (const InequalityReport& r : s.results) write_report(w, r);
    w.end_array();

    w.key("summary");
    w.begin_object();
    w.key("count");
    w.value(static_cast<long>(s.results.size()));
    w.key("pass");
    w.value(s.pass);
    w.key("fail");
    w.value(s.fail);
    w.key("inconclusive");
    w.value(s.inconclusive);
    w.key("worst_slack");
    w.value(s.worst_instance ? s.worst_slack : std::numeric_limits<double>::quiet_NaN());
    w.key("worst_instance");
    if (s.worst_instance)
        write_instance(w, *s.worst_instance);
    else
        w.null();

    // Tightness of each bound: min and median of lhs/rhs over conclusive runs.
    static const std::map<std::string, std::string> primary_rhs = {
        {"kirmaci-1", "rhs"},
        {"kirmaci-2", "rhs"},
        {"thm24", "rhs_final"},
        {"thm25", "rhs_stmt"},
        {"thm26", "rhs"},
    };
    std::map<std::string, std::vector<double>> ratios;
    for (const InequalityReport& r : s.results) {
        const auto it = primary_rhs.find(r.name);
        if (it == primary_rhs.end() || r.verdict == Verdict::inconclusive) continue;
        const Side* lhs = r.side("lhs");
        const Side* rhs = r.side(it->second);
        if (lhs && rhs && rhs->value > 0.0) ratios[r.name].push_back(lhs->value / rhs->value);
    }
    w.key("tightness");
    w.begin_object();
    for (const auto& [nm, rs] : ratios) {
        w.key(nm);
        w.begin_object();
        w.key("min");
        w.value(*std::min_element(rs.begin(), rs.end()));
        w.key("median");
        w.value(median(rs));
        w.key("count");
        w.value(static_cast<long>(rs.size()));
        w.end_object();
    }
    w.end_object();

    // Candidate tally for the disputed power-mean constant.
    {
        long stmt_viol = 0, proof_viol = 0, total = 0;
        for (const InequalityReport& r : s.results) {
            if (r.name != "thm25" || r.verdict == Verdict::inconclusive) continue;
            ++total;
            const double margin =
                s.tol.atol + s.tol.rtol * report_scale(r.sides) + r.error_budget;
            const double lhs = r.side("lhs")->value;
            if (lhs > r.side("rhs_stmt")->value + margin) ++stmt_viol;
            if (lhs > r.side("rhs_proof")->value + margin) ++proof_viol;
        }
        if (total > 0) {
            w.key("thm25_candidates");
            w.begin_object();
            w.key("instances");
            w.value(total);
            w.key("rhs_stmt_violations");
            w.value(stmt_viol);
            w.key("rhs_proof_violations");
            w.value(proof_viol);
            w.end_object();
        }
    }

    w.key("wall_time_seconds");
    w.value(s.wall_seconds);
    w.end_object();

    w.end_object();
    return w.str() + "\n";
}

inline std::string report_json(const InequalityReport& r) {
    JsonWriter w;
    write_report(w, r);
    return w.str() + "\n";
}

// ---------------------------------------------------------------------------
// Alpha sweep table (CSV).

inline std::string sweep_alpha(const FunctionModel& f, const WeightModel& g,
                               const Interval& iv, const std::vector<double>& alphas,
                               const std::string& bound_id, const QuadConfig& cfg = {},
                               const VerdictTol& tol = {}, double q = 2.0) {
    for (double a : alphas)
        if (!(a > 0.0)) throw std::invalid_argument("sweep_alpha: alphas must be > 0");
    if (!std::is_sorted(alphas.begin(), alphas.end()))
        throw std::invalid_argument("sweep_alpha: alphas must be sorted");
    std::string csv = "alpha,lhs,rhs_final,rhs_sharp,rhs_stmt,rhs_proof,ratio,status\n";
    auto num = [](double v) { return JsonWriter::number(v); };
    for (double a : alphas) {
        const FracOrder al(a);
        std::string lhs, rhs_final, rhs_sharp, rhs_stmt, rhs_proof, ratio;
        std::string status = "ok";
        try {
            if (bound_id == "thm24") {
                const auto r = weighted_midpoint_linfty_bound(f, g, al, iv, cfg, tol);
                if (r.verdict == Verdict::inconclusive) throw ConvergenceError("row", {});
                lhs = num(r.side("lhs")->value);
                rhs_final = num(r.side("rhs_final")->value);
                rhs_sharp = num(r.side("rhs_sharp")->value);
                ratio = num(r.side("lhs")->value / r.side("rhs_final")->value);
            } else if (bound_id == "thm25") {
                const auto r =
                    weighted_midpoint_power_mean_bound(f, g, al, iv, q, cfg, tol);
                if (r.verdict == Verdict::inconclusive) throw ConvergenceError("row", {});
                lhs = num(r.side("lhs")->value);
                rhs_stmt = num(r.side("rhs_stmt")->value);
                rhs_proof = num(r.side("rhs_proof")->value);
                ratio = num(r.side("lhs")->value / r.side("rhs_stmt")->value);
            } else if (bound_id == "thm26") {
                const auto r = weighted_midpoint_holder_bound(f, g, al, iv, q / (q - 1.0),
                                                              cfg, tol);
                if (r.verdict == Verdict::inconclusive) throw ConvergenceError("row", {});
                lhs = num(r.side("lhs")->value);
                rhs_final = num(r.side("rhs")->value);
                ratio = num(r.side("lhs")->value / r.side("rhs")->value);
            } else {
                throw std::invalid_argument("sweep_alpha: unknown bound id '" + bound_id +
                                            "'");
            }
        } catch (const ConvergenceError&) {
            lhs = rhs_final = rhs_sharp = rhs_stmt = rhs_proof = ratio = "";
            status = "quadrature-error";
        } catch (const EvaluationError&) {
            lhs = rhs_final = rhs_sharp = rhs_stmt = rhs_proof = ratio = "";
            status = "quadrature-error";
        }
        csv += num(a) + "," + lhs + "," + rhs_final + "," + rhs_sharp + "," + rhs_stmt +
               "," + rhs_proof + "," + ratio + "," + status + "\n";
    }
    return csv;
}

} // namespace hhf
