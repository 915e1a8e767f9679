#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hhf/special_math.hpp"

namespace hhf {

struct Interval {
    double a;
    double b;

    Interval(double lo, double hi) : a(lo), b(hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
            throw std::invalid_argument("Interval: requires finite a < b");
    }
    double midpoint() const { return 0.5 * (a + b); }
    double length() const { return b - a; }
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Convex test function with an exact derivative and per-family convexity
// claims. Claims are what the family construction guarantees; instances are
// still re-validated numerically before use.
struct FunctionModel {
    std::string spec;
    std::function<double(double)> f;
    std::function<double(double)> df;
    // Abscissas where df jumps; excluded from derivative-consistency grids
    // and used as quadrature breakpoints.
    std::vector<double> kinks;
    bool claims_f_convex = false;
    bool claims_abs_df_convex = false;
    // Family rule: is |f'|^q convex for this q >= 1?
    std::function<bool(double)> claims_abs_df_pow_convex = [](double) { return false; };

    double operator()(double x) const { return f(x); }
};

struct WeightModel {
    std::string spec;
    Interval interval;
    std::function<double(double)> g;
    bool symmetric_by_construction = false;
    bool nonnegative_by_construction = false;
    std::vector<double> kinks;

    double operator()(double x) const { return g(x); }
};

struct SupNorm {
    double value;
    double argmax_estimate;
};

namespace detail {

inline double parse_real(std::string_view tok, const std::string& ctx) {
    if (tok.empty()) throw ParseError(ctx + ": missing numeric literal");
    std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v))
        throw ParseError(ctx + ": bad numeric literal '" + s + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

struct AffinePiece {
    double slope;
    double intercept;
};

// Upper envelope of affine pieces: active pieces sorted by slope plus the
// crossing abscissas between consecutive active pieces.
inline void build_upper_envelope(std::vector<AffinePiece>& pieces,
                                 std::vector<double>& kinks) {
    std::sort(pieces.begin(), pieces.end(), [](const AffinePiece& l, const AffinePiece& r) {
        if (l.slope != r.slope) return l.slope < r.slope;
        return l.intercept < r.intercept;
    });
    // Equal slopes: only the largest intercept can be active.
    std::vector<AffinePiece> dedup;
    for (const AffinePiece& p : pieces) {
        if (!dedup.empty() && dedup.back().slope == p.slope)
            dedup.back() = p;
        else
            dedup.push_back(p);
    }
    auto cross = [](const AffinePiece& l, const AffinePiece& r) {
        return (l.intercept - r.intercept) / (r.slope - l.slope);
    };
    std::vector<AffinePiece> hull;
    for (const AffinePiece& p : dedup) {
        while (hull.size() >= 2 &&
               cross(hull[hull.size() - 2], p) <= cross(hull[hull.size() - 2], hull.back()))
            hull.pop_back();
        hull.push_back(p);
    }
    kinks.clear();
    for (std::size_t i = 0; i + 1 < hull.size(); ++i)
        kinks.push_back(cross(hull[i], hull[i + 1]));
    pieces = std::move(hull);
}

} // namespace detail

// Grammar:
//   function := "exp" [":" k ":" c]
//             | "pow:" p
//             | "quad:" c2 "," c1 "," c0
//             | "maxaffine:" "(" m "," b ")" {"," "(" m "," b ")"}
//             | "abslin:" c ["," s]
inline FunctionModel parse_function(const std::string& spec) {
    FunctionModel m;
    m.spec = spec;
    const std::string_view sv(spec);

    if (sv == "exp" || sv.rfind("exp:", 0) == 0) {
        double k = 1.0, c = 1.0;
        if (sv != "exp") {
            const auto parts = detail::split(sv.substr(4), ':');
            if (parts.size() != 2) throw ParseError("exp: expected exp[:k:c]");
            k = detail::parse_real(parts[0], "exp k");
            c = detail::parse_real(parts[1], "exp c");
        }
        if (!(k > 0.0)) throw ParseError("exp: requires k > 0");
        if (!(c > 0.0)) throw ParseError("exp: requires c > 0");
        m.f = [c, k](double x) { return c * std::exp(k * x); };
        m.df = [c, k](double x) { return c * k * std::exp(k * x); };
        m.claims_f_convex = true;
        m.claims_abs_df_convex = true;
        m.claims_abs_df_pow_convex = [](double) { return true; };
        return m;
    }
    if (sv.rfind("pow:", 0) == 0) {
        const double p = detail::parse_real(sv.substr(4), "pow p");
        if (!(p >= 1.0)) throw ParseError("pow: requires exponent p >= 1");
        m.f = [p](double x) { return std::pow(x, p); };
        m.df = [p](double x) { return p == 1.0 ? 1.0 : p * std::pow(x, p - 1.0); };
        m.claims_f_convex = true; // on intervals with a >= 0
        m.claims_abs_df_convex = (p == 1.0 || p >= 2.0);
        m.claims_abs_df_pow_convex = [p](double q) {
            return p == 1.0 || (p - 1.0) * q >= 1.0;
        };
        return m;
    }
    if (sv.rfind("quad:", 0) == 0) {
        const auto parts = detail::split(sv.substr(5), ',');
        if (parts.size() != 3) throw ParseError("quad: expected quad:c2,c1,c0");
        const double c2 = detail::parse_real(parts[0], "quad c2");
        const double c1 = detail::parse_real(parts[1], "quad c1");
        const double c0 = detail::parse_real(parts[2], "quad c0");
        if (!(c2 >= 0.0)) throw ParseError("quad: requires c2 >= 0");
        m.f = [c2, c1, c0](double x) { return (c2 * x + c1) * x + c0; };
        m.df = [c2, c1](double x) { return 2.0 * c2 * x + c1; };
        m.claims_f_convex = true;
        m.claims_abs_df_convex = true; // |affine|
        m.claims_abs_df_pow_convex = [](double q) { return q >= 1.0; };
        return m;
    }
    if (sv.rfind("maxaffine:", 0) == 0) {
        std::string_view rest = sv.substr(10);
        std::vector<detail::AffinePiece> pieces;
        while (!rest.empty()) {
            if (rest.front() != '(') throw ParseError("maxaffine: expected '('");
            const std::size_t close = rest.find(')');
            if (close == std::string_view::npos) throw ParseError("maxaffine: missing ')'");
            const auto nums = detail::split(rest.substr(1, close - 1), ',');
            if (nums.size() != 2) throw ParseError("maxaffine: expected (m,b)");
            pieces.push_back({detail::parse_real(nums[0], "maxaffine m"),
                              detail::parse_real(nums[1], "maxaffine b")});
            rest = rest.substr(close + 1);
            if (!rest.empty()) {
                if (rest.front() != ',') throw ParseError("maxaffine: expected ','");
                rest = rest.substr(1);
                if (rest.empty()) throw ParseError("maxaffine: trailing ','");
            }
        }
        if (pieces.empty()) throw ParseError("maxaffine: needs at least one piece");
        std::vector<double> kinks;
        detail::build_upper_envelope(pieces, kinks);
        // Piece index for x: ties at a kink resolve to the right-hand piece.
        auto locate = [kinks](double x) {
            return static_cast<std::size_t>(
                std::upper_bound(kinks.begin(), kinks.end(), x) - kinks.begin());
        };
        m.f = [pieces, locate](double x) {
            const detail::AffinePiece& p = pieces[locate(x)];
            return p.slope * x + p.intercept;
        };
        m.df = [pieces, locate](double x) { return pieces[locate(x)].slope; };
        m.kinks = kinks;
        m.claims_f_convex = true;
        bool equal_abs = true;
        for (const detail::AffinePiece& p : pieces)
            equal_abs = equal_abs && std::abs(p.slope) == std::abs(pieces.front().slope);
        m.claims_abs_df_convex = equal_abs; // |f'| constant across pieces
        m.claims_abs_df_pow_convex = [equal_abs](double q) { return equal_abs && q >= 1.0; };
        return m;
    }
    if (sv.rfind("abslin:", 0) == 0) {
        const auto parts = detail::split(sv.substr(7), ',');
        if (parts.size() > 2) throw ParseError("abslin: expected abslin:c[,s]");
        const double c = detail::parse_real(parts[0], "abslin c");
        const double s = parts.size() == 2 ? detail::parse_real(parts[1], "abslin s") : 0.0;
        if (!(c >= 0.0)) throw ParseError("abslin: requires c >= 0");
        m.f = [c, s](double x) { return c * std::abs(x - s); };
        m.df = [c, s](double x) { return x >= s ? c : -c; }; // right slope at the kink
        m.kinks = {s};
        m.claims_f_convex = true;
        m.claims_abs_df_convex = true;
        m.claims_abs_df_pow_convex = [](double q) { return q >= 1.0; };
        return m;
    }
    throw ParseError("parse_function: unknown family in '" + spec + "'");
}

// Grammar:
//   weight := "one"
//           | "sym:poly:" p "," c        g(x) = |x-mid|^p + c
//           | "sym:bump:" k              g(x) = exp(-k (x-mid)^2)
//           | "sym:cosine:" k            g(x) = cos(k (x-mid))
//           | "asym:lin:" m "," b        g(x) = m x + b
// Families prefixed sym: are even in (x - mid), so symmetry about the
// midpoint holds exactly by formula.
inline WeightModel parse_weight(const std::string& spec, const Interval& iv) {
    WeightModel w{spec, iv, {}, false, false, {}};
    const std::string_view sv(spec);
    const double mid = iv.midpoint();

    if (sv == "one") {
        w.g = [](double) { return 1.0; };
        w.symmetric_by_construction = true;
        w.nonnegative_by_construction = true;
        return w;
    }
    if (sv.rfind("sym:poly:", 0) == 0) {
        const auto parts = detail::split(sv.substr(9), ',');
        if (parts.size() != 2) throw ParseError("sym:poly: expected sym:poly:p,c");
        const double p = detail::parse_real(parts[0], "sym:poly p");
        const double c = detail::parse_real(parts[1], "sym:poly c");
        if (!(p > 0.0)) throw ParseError("sym:poly: requires p > 0");
        if (!(c >= 0.0)) throw ParseError("sym:poly: requires c >= 0");
        w.g = [p, c, mid](double x) { return std::pow(std::abs(x - mid), p) + c; };
        w.symmetric_by_construction = true;
        w.nonnegative_by_construction = true;
        if (p < 2.0) w.kinks = {mid};
        return w;
    }
    if (sv.rfind("sym:bump:", 0) == 0) {
        const double k = detail::parse_real(sv.substr(9), "sym:bump k");
        if (!(k >= 0.0)) throw ParseError("sym:bump: requires k >= 0");
        w.g = [k, mid](double x) {
            const double d = x - mid;
            return std::exp(-k * d * d);
        };
        w.symmetric_by_construction = true;
        w.nonnegative_by_construction = true;
        return w;
    }
    if (sv.rfind("sym:cosine:", 0) == 0) {
        const double k = detail::parse_real(sv.substr(11), "sym:cosine k");
        if (!(k >= 0.0)) throw ParseError("sym:cosine: requires k >= 0");
        w.g = [k, mid](double x) { return std::cos(k * (x - mid)); };
        w.symmetric_by_construction = true;
        // Nonnegative exactly when the half-width stays inside [-pi/2, pi/2].
        w.nonnegative_by_construction = k * 0.5 * iv.length() <= M_PI / 2.0;
        return w;
    }
    if (sv.rfind("asym:lin:", 0) == 0) {
        const auto parts = detail::split(sv.substr(9), ',');
        if (parts.size() != 2) throw ParseError("asym:lin: expected asym:lin:m,b");
        const double slope = detail::parse_real(parts[0], "asym:lin m");
        const double intercept = detail::parse_real(parts[1], "asym:lin b");
        w.g = [slope, intercept](double x) { return slope * x + intercept; };
        return w;
    }
    throw ParseError("parse_weight: unknown family in '" + spec + "'");
}

// Max over an n-point grid of pairs (x,y) of h((x+y)/2) - (h(x)+h(y))/2.
// Convex h gives a value <= numerical noise; a positive value certifies a
// midpoint-convexity violation.
template <class H>
double check_convexity(H&& h, const Interval& iv, int n) {
    if (n < 3) throw std::invalid_argument("check_convexity: requires n >= 3");
    std::vector<double> xs(static_cast<std::size_t>(n)), hs(xs.size());
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = iv.a + (iv.b - iv.a) * i / (n - 1);
        hs[static_cast<std::size_t>(i)] = h(xs[static_cast<std::size_t>(i)]);
        if (!std::isfinite(hs[static_cast<std::size_t>(i)]))
            throw EvaluationError("check_convexity: non-finite evaluation at x = " +
                                  std::to_string(xs[static_cast<std::size_t>(i)]));
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double hm = h(0.5 * (xs[i] + xs[j]));
            if (!std::isfinite(hm))
                throw EvaluationError("check_convexity: non-finite midpoint evaluation");
            worst = std::max(worst, hm - 0.5 * (hs[i] + hs[j]));
        }
    }
    return worst;
}

// Max over an n-point grid of |g(a+b-x) - g(x)|.
inline double check_symmetry(const WeightModel& g, const Interval& iv, int n) {
    if (n < 1) throw std::invalid_argument("check_symmetry: requires n >= 1");
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = n == 1 ? iv.midpoint() : iv.a + (iv.b - iv.a) * i / (n - 1);
        const double d = std::abs(g(iv.a + iv.b - x) - g(x));
        if (!std::isfinite(d))
            throw EvaluationError("check_symmetry: non-finite evaluation");
        worst = std::max(worst, d);
    }
    return worst;
}

namespace detail {

template <class H>
std::pair<double, double> golden_section_max(H&& h, double lo, double hi, double tol) {
    static const double invphi = 0.6180339887498948482;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = h(x1), f2 = h(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = h(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = h(x1);
        }
    }
    const double xm = 0.5 * (lo + hi);
    return {h(xm), xm};
}

} // namespace detail

// Dense scan of |g| followed by golden-section refinement around the best
// sample. Weights in the built-in families are smooth and low-variation, so
// the default n = 1024 localizes the maximum reliably.
inline SupNorm sup_norm(const WeightModel& g, double lo, double hi, int n = 1024) {
    if (!(lo < hi)) throw std::invalid_argument("sup_norm: requires lo < hi");
    if (n < 2) throw std::invalid_argument("sup_norm: requires n >= 2");
    if (lo < g.interval.a - 1e-12 * (1.0 + std::abs(g.interval.a)) ||
        hi > g.interval.b + 1e-12 * (1.0 + std::abs(g.interval.b)))
        throw std::invalid_argument("sup_norm: [lo,hi] outside the model interval");
    auto absg = [&g](double x) {
        const double v = std::abs(g(x));
        if (!std::isfinite(v))
            throw EvaluationError("sup_norm: non-finite evaluation at x = " +
                                  std::to_string(x));
        return v;
    };
    double best = -1.0;
    int best_i = 0;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        const double v = absg(x);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double wl = lo + (hi - lo) * std::max(0, best_i - 1) / (n - 1);
    const double wr = lo + (hi - lo) * std::min(n - 1, best_i + 1) / (n - 1);
    const auto [rv, rx] = detail::golden_section_max(absg, wl, wr, 1e-12 * (hi - lo));
    if (rv > best) return SupNorm{rv, rx};
    return SupNorm{best, lo + (hi - lo) * best_i / (n - 1)};
}

} // namespace hhf
