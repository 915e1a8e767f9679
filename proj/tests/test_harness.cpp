#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hhf/harness.hpp"

using namespace hhf;

namespace {

std::string instance_fingerprint(const Instance& inst) {
    JsonWriter w;
    w.begin_object();
    w.key("f");
    w.value(inst.f.spec);
    w.key("g");
    w.value(inst.g.spec);
    w.key("a");
    w.value(inst.iv.a);
    w.key("b");
    w.value(inst.iv.b);
    w.key("alpha");
    w.value(inst.alpha);
    w.key("q");
    w.value(inst.q);
    w.key("p");
    w.value(inst.p);
    w.key("x");
    w.value(inst.x);
    w.end_object();
    return w.str();
}

std::string strip_wall_time(std::string s) {
    const std::string key = "\"wall_time_seconds\": ";
    const std::size_t pos = s.find(key);
    REQUIRE(pos != std::string::npos);
    std::size_t end = pos + key.size();
    while (end < s.size() && s[end] != '}' && s[end] != ',') ++end;
    return s.substr(0, pos) + s.substr(end);
}

} // namespace

TEST_CASE("gen_instance: deterministic in (seed, index)") {
    const InstanceConfig cfg = InstanceConfig::defaults(1234);
    const Instance a = gen_instance(cfg, 5);
    const Instance b = gen_instance(cfg, 5);
    CHECK(instance_fingerprint(a) == instance_fingerprint(b));
    const Instance c = gen_instance(cfg, 6);
    CHECK(instance_fingerprint(a) != instance_fingerprint(c));

    InstanceConfig other = cfg;
    other.seed = 1235;
    CHECK(instance_fingerprint(a) != instance_fingerprint(gen_instance(other, 5)));
}

TEST_CASE("gen_instance: golden fixture for seed 42, index 0") {
    const Instance inst = gen_instance(InstanceConfig::defaults(42), 0);
    std::ifstream in(std::string(HHF_GOLDEN_DIR) + "/instance_seed42_idx0.json");
    REQUIRE(in.good());
    std::string expected;
    std::getline(in, expected);
    CHECK(instance_fingerprint(inst) == expected);
}

TEST_CASE("gen_instance: pinned alpha range and validated claims") {
    InstanceConfig cfg = InstanceConfig::defaults(9);
    cfg.alpha_lo = cfg.alpha_hi = 1.0;
    for (long i = 0; i < 12; ++i) {
        const Instance inst = gen_instance(cfg, i);
        CHECK(inst.alpha == 1.0);
        CHECK(inst.iv.a >= 0.0);
        CHECK(inst.p == doctest::Approx(inst.q / (inst.q - 1.0)));
    }
}

TEST_CASE("gen_instance: x cycles through interior and boundary points") {
    const InstanceConfig cfg = InstanceConfig::defaults(3);
    const Instance i1 = gen_instance(cfg, 1);
    CHECK(i1.x == i1.iv.a);
    const Instance i2 = gen_instance(cfg, 2);
    CHECK(i2.x == i2.iv.midpoint());
    const Instance i3 = gen_instance(cfg, 3);
    CHECK(i3.x == i3.iv.b);
    const Instance i0 = gen_instance(cfg, 0);
    CHECK(i0.x > i0.iv.a);
    CHECK(i0.x < i0.iv.b);
}

TEST_CASE("gen_instance: suite requirements are honored") {
    InstanceConfig cfg = InstanceConfig::defaults(17);
    cfg.function_pool = {"pow:1.5", "pow:2"};
    InstanceNeeds needs;
    needs.abs_df_convex = true;
    for (long i = 0; i < 10; ++i) {
        const Instance inst = gen_instance(cfg, i, needs);
        CHECK(inst.f.claims_abs_df_convex);
    }
    // Impossible requirement exhausts the retry budget.
    cfg.function_pool = {"pow:1.5"};
    CHECK_THROWS_AS(gen_instance(cfg, 0, needs), GenerationError);
}

TEST_CASE("run_suite: pinned single-instance identity example") {
    InstanceConfig cfg = InstanceConfig::defaults(0);
    cfg.function_pool = {"pow:2"};
    cfg.weight_pool = {"one"};
    cfg.a_min = cfg.a_max = 0.0;
    cfg.len_min = cfg.len_max = 1.0;
    cfg.alpha_lo = cfg.alpha_hi = 1.0;
    const SuiteReport s = run_suite("identities", 1, cfg);
    CHECK(s.fail == 0);
    CHECK(s.inconclusive == 0);
    CHECK(s.results.size() == 3);
    for (const auto& r : s.results)
        if (r.name == "lemma23") CHECK(std::abs(r.slack) <= 1e-9);
}

TEST_CASE("run_suite: negative controls fail by design") {
    const SuiteReport s = run_suite("negative-controls", 3, InstanceConfig::defaults(1));
    CHECK(s.fail >= 1);
    CHECK(s.inconclusive == 0);
    for (const auto& r : s.results) CHECK(r.verdict == Verdict::fail);
}

TEST_CASE("run_suite: reductions pass with alpha pinned to 1") {
    const SuiteReport s = run_suite("reductions", 6, InstanceConfig::defaults(11));
    CHECK(s.fail == 0);
    CHECK(s.inconclusive == 0);
    CHECK(static_cast<int>(s.results.size()) == 6 * 5);
}

TEST_CASE("run_suite: unknown suite id") {
    CHECK_THROWS_AS(run_suite("nope", 1, InstanceConfig::defaults(0)),
                    std::invalid_argument);
}

TEST_CASE("suite JSON: deterministic apart from wall time") {
    const InstanceConfig cfg = InstanceConfig::defaults(7);
    const std::string a = strip_wall_time(suite_report_json(run_suite("bounds", 5, cfg)));
    const std::string b = strip_wall_time(suite_report_json(run_suite("bounds", 5, cfg)));
    CHECK(a == b);
}

TEST_CASE("suite JSON: schema fields present") {
    const SuiteReport s = run_suite("bounds", 4, InstanceConfig::defaults(5));
    const std::string j = suite_report_json(s);
    for (const char* needle :
         {"\"schema_version\": 1", "\"suite\": \"bounds\"", "\"config\"", "\"results\"",
          "\"summary\"", "\"tightness\"", "\"thm25_candidates\"",
          "\"wall_time_seconds\""}) {
        INFO(needle);
        CHECK(j.find(needle) != std::string::npos);
    }
}

TEST_CASE("eval_equation: dispatch and replay round-trip") {
    InstanceInfo in;
    in.eq = "thm24";
    in.f_spec = "pow:2";
    in.g_spec = "one";
    in.a = 0.0;
    in.b = 1.0;
    in.alpha = 1.0;
    const InequalityReport first = eval_equation(in);
    CHECK(first.verdict == Verdict::pass);
    // Replaying the recorded instance reproduces the same verdict and sides.
    const InequalityReport second = eval_equation(first.instance);
    CHECK(second.verdict == first.verdict);
    REQUIRE(second.sides.size() == first.sides.size());
    for (std::size_t i = 0; i < first.sides.size(); ++i)
        CHECK(second.sides[i].value == first.sides[i].value);
}

TEST_CASE("eval_equation: every suite fail row replays to the same verdict") {
    const SuiteReport s = run_suite("negative-controls", 2, InstanceConfig::defaults(23));
    REQUIRE(s.fail >= 1);
    for (const auto& r : s.results) {
        const InequalityReport again = eval_equation(r.instance);
        CHECK(again.verdict == r.verdict);
        CHECK(again.slack == doctest::Approx(r.slack).epsilon(1e-12));
    }
}

TEST_CASE("eval_equation: parameter requirements") {
    InstanceInfo in;
    in.eq = "thm25";
    in.f_spec = "pow:2";
    in.g_spec = "one";
    in.a = 0.0;
    in.b = 1.0;
    in.alpha = 0.5;
    CHECK_THROWS_AS(eval_equation(in), std::invalid_argument); // q missing
    in.q = 2.0;
    CHECK(eval_equation(in).verdict == Verdict::pass);
    in.eq = "frobnicate";
    CHECK_THROWS_AS(eval_equation(in), std::invalid_argument);
}

TEST_CASE("sweep_alpha: analytic thm24 row and CSV shape") {
    const Interval iv(0.0, 1.0);
    const FunctionModel f = parse_function("pow:2");
    const WeightModel g = parse_weight("one", iv);
    const std::string csv = sweep_alpha(f, g, iv, {1.0, 1.0, 2.0}, "thm24");
    std::stringstream ss(csv);
    std::string header, row1, row2;
    std::getline(ss, header);
    std::getline(ss, row1);
    std::getline(ss, row2);
    CHECK(header == "alpha,lhs,rhs_final,rhs_sharp,rhs_stmt,rhs_proof,ratio,status");
    // Duplicate alphas produce duplicate rows, order preserved.
    CHECK(row1 == row2);
    std::vector<std::string> cells;
    std::stringstream row(row1);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 8);
    CHECK(std::stod(cells[0]) == 1.0);
    CHECK(std::stod(cells[1]) == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
    CHECK(std::stod(cells[2]) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::stod(cells[3]) == doctest::Approx(0.25).epsilon(1e-12));
    // rhs_stmt and rhs_proof columns are empty for thm24.
    CHECK(cells[4].empty());
    CHECK(cells[5].empty());
    CHECK(std::stod(cells[6]) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(cells[7] == "ok");
}

TEST_CASE("sweep_alpha: thm25 fills the candidate columns") {
    const Interval iv(0.0, 1.0);
    const std::string csv =
        sweep_alpha(parse_function("exp"), parse_weight("sym:bump:2", iv), iv,
                    {0.5, 1.5}, "thm25");
    std::stringstream ss(csv);
    std::string header, row;
    std::getline(ss, header);
    int rows = 0;
    while (std::getline(ss, row)) {
        ++rows;
        CHECK(row.substr(row.size() - 3) == ",ok");
    }
    CHECK(rows == 2);
}

TEST_CASE("sweep_alpha: rejects unsorted or nonpositive grids") {
    const Interval iv(0.0, 1.0);
    const FunctionModel f = parse_function("pow:2");
    const WeightModel g = parse_weight("one", iv);
    CHECK_THROWS_AS(sweep_alpha(f, g, iv, {1.0, 0.5}, "thm24"), std::invalid_argument);
    CHECK_THROWS_AS(sweep_alpha(f, g, iv, {0.0, 1.0}, "thm24"), std::invalid_argument);
    CHECK_THROWS_AS(sweep_alpha(f, g, iv, {1.0}, "thm99"), std::invalid_argument);
}

TEST_CASE("sweep_alpha: a failing row is recorded and the sweep continues") {
    QuadConfig strangled;
    strangled.target_abs_tol = 1e-16;
    strangled.target_rel_tol = 1e-16;
    strangled.max_subdivisions = 2;
    const Interval iv(0.0, 1.0);
    const std::string csv =
        sweep_alpha(parse_function("exp"), parse_weight("sym:bump:2", iv), iv,
                    {0.5, 1.0}, "thm24", strangled);
    std::stringstream ss(csv);
    std::string header, row;
    std::getline(ss, header);
    int rows = 0, failed_rows = 0;
    while (std::getline(ss, row)) {
        ++rows;
        if (row.find("quadrature-error") != std::string::npos) {
            ++failed_rows;
            CHECK(row.find(",,,,,,") != std::string::npos); // value cells empty
        }
    }
    CHECK(rows == 2);
    CHECK(failed_rows == 2);
}

TEST_CASE("InstanceConfig: validation") {
    InstanceConfig cfg = InstanceConfig::defaults(0);
    cfg.function_pool.clear();
    CHECK_THROWS_AS(gen_instance(cfg, 0), std::invalid_argument);
    cfg = InstanceConfig::defaults(0);
    cfg.q_lo = 1.0;
    CHECK_THROWS_AS(gen_instance(cfg, 0), std::invalid_argument);
    cfg = InstanceConfig::defaults(0);
    cfg.alpha_lo = 0.0;
    CHECK_THROWS_AS(gen_instance(cfg, 0), std::invalid_argument);
    cfg = InstanceConfig::defaults(0);
    cfg.len_min = 2.0;
    cfg.len_max = 1.0;
    CHECK_THROWS_AS(gen_instance(cfg, 0), std::invalid_argument);
}

TEST_CASE("eval_equation: rows from every standard suite replay identically") {
    // Reduction rows compose several evaluators and are not in the replay
    // vocabulary; every directly-dispatched row must reproduce bit-for-bit.
    const InstanceConfig cfg = InstanceConfig::defaults(31);
    for (const char* suite : {"identities", "sandwiches", "bounds"}) {
        const SuiteReport s = run_suite(suite, 3, cfg);
        for (const auto& r : s.results) {
            const InequalityReport again = eval_equation(r.instance);
            CHECK(again.verdict == r.verdict);
            REQUIRE(again.sides.size() == r.sides.size());
            for (std::size_t i = 0; i < r.sides.size(); ++i)
                CHECK(again.sides[i].value == r.sides[i].value);
        }
    }
}
