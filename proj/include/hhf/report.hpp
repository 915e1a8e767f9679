#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace hhf {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

struct VerdictTol {
    double atol = 1e-9;
    double rtol = 1e-7;
};

struct Side {
    std::string label;
    double value = std::numeric_limits<double>::quiet_NaN();
    double error_estimate = 0.0;
};

// Everything needed to rebuild and re-run one evaluation.
struct InstanceInfo {
    std::string eq;
    std::string f_spec;
    std::string g_spec;
    double a = 0.0;
    double b = 1.0;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double q = std::numeric_limits<double>::quiet_NaN();
    double p = std::numeric_limits<double>::quiet_NaN();
    double x = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t seed = 0;
    long index = -1;
};

struct InequalityReport {
    std::string name;
    InstanceInfo instance;
    std::vector<Side> sides;
    double slack = std::numeric_limits<double>::quiet_NaN();
    double error_budget = 0.0;
    VerdictTol tol;
    Verdict verdict = Verdict::inconclusive;
    std::vector<std::string> notes;

    const Side* side(const std::string& label) const {
        for (const Side& s : sides)
            if (s.label == label) return &s;
        return nullptr;
    }
};

// Scale for relative tolerances: the largest side magnitude.
inline double report_scale(const std::vector<Side>& sides) {
    double s = 0.0;
    for (const Side& x : sides)
        if (std::isfinite(x.value)) s = std::max(s, std::abs(x.value));
    return s;
}

// pass iff the slack survives the tolerance plus the accumulated quadrature
// error budget; a violation inside the budget is never reported as fail.
inline Verdict judge(double slack, double scale, double budget, const VerdictTol& tol) {
    if (!std::isfinite(slack)) return Verdict::inconclusive;
    if (slack >= -(tol.atol + tol.rtol * scale + budget)) return Verdict::pass;
    return Verdict::fail;
}

// Deterministic JSON emitter. Numbers are written as decimals with 17
// significant digits so output round-trips and byte-compares across runs.
class JsonWriter {
public:
    static std::string number(double v) {
        if (std::isnan(v)) return "null";
        if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    static std::string escape(const std::string& s) {
        std::string out;
        out.reserve(s.size() + 2);
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out += c;
                    }
            }
        }
        return out;
    }

    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(const std::string& k) {
        comma();
        buf_ += '"';
        buf_ += escape(k);
        buf_ += "\": ";
        pending_value_ = true;
    }

    void value(double v) { raw(number(v)); }
    void value(long v) { raw(std::to_string(v)); }
    void value(int v) { raw(std::to_string(v)); }
    void value(std::uint64_t v) { raw(std::to_string(v)); }
    void value(bool v) { raw(v ? "true" : "false"); }
    void value(const std::string& s) { raw('"' + escape(s) + '"'); }
    void value(const char* s) { value(std::string(s)); }
    void null() { raw("null"); }

    const std::string& str() const { return buf_; }

private:
    void open(char c) {
        if (!pending_value_) comma();
        pending_value_ = false;
        buf_ += c;
        first_.push_back(true);
    }
    void close(char c) {
        first_.pop_back();
        buf_ += c;
        if (!first_.empty()) first_.back() = false;
    }
    void comma() {
        if (!first_.empty()) {
            if (!first_.back()) buf_ += ", ";
            first_.back() = false;
        }
    }
    void raw(const std::string& s) {
        if (!pending_value_) comma();
        pending_value_ = false;
        buf_ += s;
    }

    std::string buf_;
    std::vector<bool> first_;
    bool pending_value_ = false;
};

inline void write_instance(JsonWriter& w, const InstanceInfo& in) {
    w.begin_object();
    w.key("eq");
    w.value(in.eq);
    w.key("f");
    w.value(in.f_spec);
    w.key("g");
    if (in.g_spec.empty())
        w.null();
    else
        w.value(in.g_spec);
    w.key("a");
    w.value(in.a);
    w.key("b");
    w.value(in.b);
    w.key("alpha");
    w.value(in.alpha);
    w.key("q");
    w.value(in.q);
    w.key("p");
    w.value(in.p);
    w.key("x");
    w.value(in.x);
    w.key("seed");
    w.value(in.seed);
    w.key("index");
    w.value(in.index);
    w.end_object();
}

inline void write_report(JsonWriter& w, const InequalityReport& r) {
    w.begin_object();
    w.key("name");
    w.value(r.name);
    w.key("instance");
    write_instance(w, r.instance);
    w.key("sides");
    w.begin_array();
    for (const Side& s : r.sides) {
        w.begin_object();
        w.key("label");
        w.value(s.label);
        w.key("value");
        w.value(s.value);
        w.key("error_estimate");
        w.value(s.error_estimate);
        w.end_object();
    }
    w.end_array();
    w.key("slack");
    w.value(r.slack);
    w.key("error_budget");
    w.value(r.error_budget);
    w.key("atol");
    w.value(r.tol.atol);
    w.key("rtol");
    w.value(r.tol.rtol);
    w.key("verdict");
    w.value(to_string(r.verdict));
    w.key("notes");
    w.begin_array();
    for (const std::string& n : r.notes) w.value(n);
    w.end_array();
    w.end_object();
}

} // namespace hhf
