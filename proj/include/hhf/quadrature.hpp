#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhf/special_math.hpp"

namespace hhf {

struct QuadConfig {
    double target_abs_tol = 1e-10;
    double target_rel_tol = 1e-10;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(target_abs_tol > 0.0) || !(target_rel_tol > 0.0))
            throw std::invalid_argument("QuadConfig: tolerances must be > 0");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadConfig: max_subdivisions must be >= 1");
    }
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Tolerance not reached within the subdivision budget. Carries the best
// value so callers can distinguish "inequality fails" from "quadrature failed"
// without ever consuming an uncertified number silently.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, QuadResult best)
        : std::runtime_error(msg), best_(best) {}
    const QuadResult& best() const { return best_; }

private:
    QuadResult best_;
};

namespace detail {

// Gauss-Kronrod 7/15 pair on [-1,1]; Gauss nodes sit at odd positions.
inline constexpr double kXgk[7] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993945, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985,
};
inline constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278,
};
inline constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694,
};

struct Panel {
    double a, b;
    double value;
    double err;
    bool splittable = true;
};

template <class F>
Panel gk15(F&& f, double a, double b, long& evaluations) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    bool finite = std::isfinite(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        finite = finite && std::isfinite(f1) && std::isfinite(f2);
        k15 += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) g7 += kWg[j / 2] * (f1 + f2);
    }
    evaluations += 15;
    if (!finite)
        throw EvaluationError("quadrature: integrand not finite on [" +
                              std::to_string(a) + ", " + std::to_string(b) + "]");
    return Panel{a, b, k15 * h, std::abs(k15 - g7) * h, true};
}

// Globally adaptive bisection over the initial panels. The per-panel error
// is the raw Kronrod-Gauss difference, a conservative estimate for the
// returned Kronrod value.
template <class F>
QuadResult adaptive(F&& f, std::span<const double> boundaries, const QuadConfig& cfg) {
    cfg.validate();
    long evaluations = 0;
    std::vector<Panel> panels;
    panels.reserve(64);
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        if (boundaries[i] < boundaries[i + 1])
            panels.push_back(gk15(f, boundaries[i], boundaries[i + 1], evaluations));
    }
    if (panels.empty()) return QuadResult{0.0, 0.0, evaluations};

    for (;;) {
        double total = 0.0, toterr = 0.0;
        for (const Panel& p : panels) {
            total += p.value;
            toterr += p.err;
        }
        if (toterr <= std::max(cfg.target_abs_tol, cfg.target_rel_tol * std::abs(total)))
            return QuadResult{total, toterr, evaluations};

        std::size_t worst = panels.size();
        double worst_err = 0.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (panels[i].splittable && panels[i].err > worst_err) {
                worst_err = panels[i].err;
                worst = i;
            }
        }
        if (worst == panels.size()) {
            // Every remaining panel is at the floating-point width floor;
            // the estimate is as honest as the arithmetic allows.
            return QuadResult{total, toterr, evaluations};
        }
        if (static_cast<int>(panels.size()) >= cfg.max_subdivisions)
            throw ConvergenceError(
                "quadrature: tolerance not reached within " +
                    std::to_string(cfg.max_subdivisions) + " subdivisions (best value " +
                    std::to_string(total) + ", estimate " + std::to_string(toterr) + ")",
                QuadResult{total, toterr, evaluations});

        const Panel target = panels[worst];
        const double mid = 0.5 * (target.a + target.b);
        if (!(mid > target.a) || !(mid < target.b)) {
            panels[worst].splittable = false;
            continue;
        }
        panels[worst] = gk15(f, target.a, mid, evaluations);
        panels.push_back(gk15(f, mid, target.b, evaluations));
    }
}

inline std::vector<double> make_boundaries(double a, double b,
                                           std::span<const double> interior) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double t : interior)
        if (t > a && t < b) pts.push_back(t);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace detail

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadConfig& cfg = {}) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw std::invalid_argument("integrate: requires finite a < b");
    const double pts[2] = {a, b};
    return detail::adaptive(f, pts, cfg);
}

// As integrate, but seeds the subdivision with interior breakpoints (kinks,
// branch changes) so panels never straddle a known non-smooth point.
template <class F>
QuadResult integrate_with_breaks(F&& f, double a, double b,
                                 std::span<const double> interior_breaks,
                                 const QuadConfig& cfg = {}) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw std::invalid_argument("integrate: requires finite a < b");
    const auto pts = detail::make_boundaries(a, b, interior_breaks);
    return detail::adaptive(f, pts, cfg);
}

// int_a^x (t-a)^(alpha-1) f(t) dt. The substitution u = (t-a)^alpha removes
// the t=a singularity exactly:
//   = (1/alpha) int_0^{(x-a)^alpha} f(a + u^(1/alpha)) du.
// Used uniformly for all alpha > 0; for alpha >= 1 the weight is already
// smooth and the transform is benign.
template <class F>
QuadResult integrate_left_weighted(F&& f, PosReal alpha, double a, double x,
                                   const QuadConfig& cfg = {},
                                   std::span<const double> t_breaks = {}) {
    if (!std::isfinite(a) || !std::isfinite(x) || !(a < x))
        throw std::invalid_argument("integrate_left_weighted: requires finite a < x");
    const double al = alpha.value;
    const double inv = 1.0 / al;
    const double upper = std::pow(x - a, al);
    std::vector<double> u_breaks;
    for (double t : t_breaks)
        if (t > a && t < x) u_breaks.push_back(std::pow(t - a, al));
    auto h = [&f, a, inv](double u) { return f(a + std::pow(u, inv)); };
    QuadResult r = integrate_with_breaks(h, 0.0, upper, u_breaks, cfg);
    r.value *= inv;
    r.error_estimate *= inv;
    return r;
}

// Mirror of integrate_left_weighted: int_x^b (b-t)^(alpha-1) f(t) dt via
// u = (b-t)^alpha.
template <class F>
QuadResult integrate_right_weighted(F&& f, PosReal alpha, double x, double b,
                                    const QuadConfig& cfg = {},
                                    std::span<const double> t_breaks = {}) {
    if (!std::isfinite(x) || !std::isfinite(b) || !(x < b))
        throw std::invalid_argument("integrate_right_weighted: requires finite x < b");
    const double al = alpha.value;
    const double inv = 1.0 / al;
    const double upper = std::pow(b - x, al);
    std::vector<double> u_breaks;
    for (double t : t_breaks)
        if (t > x && t < b) u_breaks.push_back(std::pow(b - t, al));
    auto h = [&f, b, inv](double u) { return f(b - std::pow(u, inv)); };
    QuadResult r = integrate_with_breaks(h, 0.0, upper, u_breaks, cfg);
    r.value *= inv;
    r.error_estimate *= inv;
    return r;
}

// Prefix integral t -> int_a^t h. Panels are refined once up front; a query
// costs one binary search plus a single Kronrod panel from the nearest
// stored boundary, so repeated evaluation inside outer quadratures is cheap.
class CumulativeIntegral {
public:
    template <class F>
    CumulativeIntegral(F&& h, double a, double b, const QuadConfig& cfg = {})
        : fn_(std::forward<F>(h)), a_(a), b_(b) {
        if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
            throw std::invalid_argument("CumulativeIntegral: requires finite a < b");
        cfg.validate();
        struct Item {
            double a, b;
        };
        std::vector<detail::Panel> done;
        std::vector<Item> work{{a, b}};
        const double span = b - a;
        while (!work.empty()) {
            const Item it = work.back();
            work.pop_back();
            detail::Panel p = detail::gk15(fn_, it.a, it.b, evaluations_);
            const double local =
                std::max(cfg.target_abs_tol * (it.b - it.a) / span,
                         1e-15 * std::abs(p.value));
            const double mid = 0.5 * (it.a + it.b);
            if (p.err <= local || !(mid > it.a && mid < it.b) ||
                static_cast<int>(done.size() + work.size()) >= cfg.max_subdivisions) {
                done.push_back(p);
            } else {
                work.push_back({mid, it.b});
                work.push_back({it.a, mid});
            }
        }
        std::sort(done.begin(), done.end(),
                  [](const detail::Panel& l, const detail::Panel& r) { return l.a < r.a; });
        boundaries_.reserve(done.size() + 1);
        prefix_.reserve(done.size() + 1);
        boundaries_.push_back(a);
        prefix_.push_back(0.0);
        for (const detail::Panel& p : done) {
            boundaries_.push_back(p.b);
            prefix_.push_back(prefix_.back() + p.value);
            error_ += p.err;
        }
    }

    double value(double t) const {
        if (t <= a_) return 0.0;
        if (t >= b_) return prefix_.back();
        const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - boundaries_.begin()) - 1;
        const double lo = boundaries_[i];
        if (t == lo) return prefix_[i];
        return prefix_[i] + detail::gk15(fn_, lo, t, evaluations_).value;
    }

    double total() const { return prefix_.back(); }
    double error_estimate() const { return error_; }
    long evaluations() const { return evaluations_; }

private:
    std::function<double(double)> fn_;
    double a_, b_;
    std::vector<double> boundaries_;
    std::vector<double> prefix_;
    double error_ = 0.0;
    mutable long evaluations_ = 0;
};

} // namespace hhf
