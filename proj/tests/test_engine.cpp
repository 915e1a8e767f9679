#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hhf/engine.hpp"
#include "hhf/rng.hpp"

using namespace hhf;

namespace {

const Interval kUnit(0.0, 1.0);

double side_val(const InequalityReport& r, const char* label) {
    const Side* s = r.side(label);
    REQUIRE(s != nullptr);
    return s->value;
}

} // namespace

TEST_CASE("eval_kernel: unit weight at alpha = 1") {
    const KernelK k{FracOrder(1.0), parse_weight("one", kUnit), kUnit};
    CHECK(eval_kernel(k, 0.25) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(eval_kernel(k, 0.75) == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(eval_kernel(k, 0.0) == 0.0);
    CHECK(eval_kernel(k, 1.0) == 0.0);
    CHECK_THROWS_AS(eval_kernel(k, 1.5), std::invalid_argument);

    // Right branch is <= 0 for a nonnegative weight.
    const KernelK kb{FracOrder(0.6), parse_weight("sym:bump:2", kUnit), kUnit};
    CHECK(eval_kernel(kb, 0.8) < 0.0);
    CHECK(eval_kernel(kb, 0.2) > 0.0);
}

TEST_CASE("midpoint identity: constant f vanishes on both sides") {
    const FunctionModel c = parse_function("quad:0,0,3");
    const WeightModel g = parse_weight("sym:bump:2", kUnit);
    const InequalityReport r =
        midpoint_weighted_identity(c, g, FracOrder(0.7), kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(std::abs(side_val(r, "lhs")) < 1e-9);
    CHECK(std::abs(side_val(r, "rhs")) < 1e-9);
}

TEST_CASE("midpoint identity: f(x) = x, unit weight, alpha = 1") {
    const InequalityReport r = midpoint_weighted_identity(
        parse_function("pow:1"), parse_weight("one", kUnit), FracOrder(1.0), kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(std::abs(side_val(r, "lhs")) < 1e-12);
    CHECK(std::abs(side_val(r, "rhs")) < 1e-10);
}

TEST_CASE("midpoint identity: f(x) = x^2 gives -1/12 on both sides") {
    const InequalityReport r = midpoint_weighted_identity(
        parse_function("pow:2"), parse_weight("one", kUnit), FracOrder(1.0), kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(std::abs(side_val(r, "lhs") - (-1.0 / 12.0)) < 1e-10);
    CHECK(std::abs(side_val(r, "rhs") - (-1.0 / 12.0)) < 1e-10);
    CHECK(std::abs(side_val(r, "lhs") - side_val(r, "rhs")) < 1e-10);
}

TEST_CASE("midpoint identity: quadrature exhaustion turns inconclusive") {
    QuadConfig strangled;
    strangled.target_abs_tol = 1e-16;
    strangled.target_rel_tol = 1e-16;
    strangled.max_subdivisions = 2;
    const InequalityReport r = midpoint_weighted_identity(
        parse_function("exp"), parse_weight("sym:bump:2", kUnit), FracOrder(0.4),
        kUnit, strangled);
    CHECK(r.verdict == Verdict::inconclusive);
    CHECK(!r.notes.empty());
}

TEST_CASE("hh: affine equality case") {
    const InequalityReport r = hermite_hadamard(parse_function("pow:1"), kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(side_val(r, "midpoint_value") == doctest::Approx(0.5));
    CHECK(side_val(r, "integral_mean") == doctest::Approx(0.5));
    CHECK(side_val(r, "endpoint_average") == doctest::Approx(0.5));
    CHECK(std::abs(r.slack) < 1e-12);
}

TEST_CASE("hh: x^2 and exp closed forms") {
    const InequalityReport r2 = hermite_hadamard(parse_function("pow:2"), kUnit);
    CHECK(r2.verdict == Verdict::pass);
    CHECK(side_val(r2, "midpoint_value") == doctest::Approx(0.25));
    CHECK(side_val(r2, "integral_mean") == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(side_val(r2, "endpoint_average") == doctest::Approx(0.5));

    const InequalityReport re = hermite_hadamard(parse_function("exp"), kUnit);
    CHECK(re.verdict == Verdict::pass);
    CHECK(side_val(re, "midpoint_value") ==
          doctest::Approx(1.6487212707001282).epsilon(1e-12));
    CHECK(side_val(re, "integral_mean") ==
          doctest::Approx(1.7182818284590453).epsilon(1e-12));
    CHECK(side_val(re, "endpoint_average") ==
          doctest::Approx(1.8591409142295225).epsilon(1e-12));
}

TEST_CASE("hh: concave control fails, not inconclusive") {
    const InequalityReport r = hermite_hadamard(make_concave_control(), kUnit);
    CHECK(r.verdict == Verdict::fail);
    CHECK(r.slack == doctest::Approx(-1.0 / 6.0).epsilon(1e-9));
}

TEST_CASE("fejer: unit weight scales hh by the interval length") {
    const Interval iv(0.0, 2.0);
    const FunctionModel f = parse_function("pow:2");
    const InequalityReport fej = fejer_classical(f, parse_weight("one", iv), iv);
    const InequalityReport hh = hermite_hadamard(f, iv);
    CHECK(fej.verdict == Verdict::pass);
    CHECK(side_val(fej, "midpoint_weighted") ==
          doctest::Approx(2.0 * side_val(hh, "midpoint_value")).epsilon(1e-11));
    CHECK(side_val(fej, "weighted_integral") ==
          doctest::Approx(2.0 * side_val(hh, "integral_mean")).epsilon(1e-11));
    CHECK(side_val(fej, "endpoint_weighted") ==
          doctest::Approx(2.0 * side_val(hh, "endpoint_average")).epsilon(1e-11));
}

TEST_CASE("fejer: affine f has zero left gap under a symmetric weight") {
    const InequalityReport r = fejer_classical(
        parse_function("pow:1"), parse_weight("sym:bump:2", kUnit), kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(std::abs(side_val(r, "weighted_integral") -
                   side_val(r, "midpoint_weighted")) < 1e-10);
}

TEST_CASE("fejer: piecewise-polynomial example sides") {
    // f = x^2, g = |x - 1/2| on [0,1]: (1/16, 3/32, 1/8).
    const InequalityReport r = fejer_classical(
        parse_function("pow:2"), parse_weight("sym:poly:1,0", kUnit), kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(side_val(r, "midpoint_weighted") == doctest::Approx(0.0625).epsilon(1e-11));
    CHECK(side_val(r, "weighted_integral") == doctest::Approx(0.09375).epsilon(1e-11));
    CHECK(side_val(r, "endpoint_weighted") == doctest::Approx(0.125).epsilon(1e-11));
}

TEST_CASE("fejer: asymmetric weight is a precondition error, not a fail") {
    CHECK_THROWS_AS(fejer_classical(parse_function("pow:2"),
                                    parse_weight("asym:lin:1,0", kUnit), kUnit),
                    PreconditionError);
}

TEST_CASE("kirmaci identity: constants, affine, and x^2") {
    for (const char* spec : {"quad:0,0,2", "pow:1"}) {
        const InequalityReport r = midpoint_mean_identity(parse_function(spec), kUnit);
        CHECK(r.verdict == Verdict::pass);
        CHECK(std::abs(side_val(r, "lhs")) < 1e-12);
        CHECK(std::abs(side_val(r, "rhs")) < 1e-10);
    }
    const InequalityReport r = midpoint_mean_identity(parse_function("pow:2"), kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(side_val(r, "lhs") == doctest::Approx(1.0 / 12.0).epsilon(1e-11));
    CHECK(side_val(r, "rhs") == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
}

TEST_CASE("kirmaci identity: kinked f on a shifted interval") {
    const Interval iv(0.2, 2.3);
    const InequalityReport r =
        midpoint_mean_identity(parse_function("abslin:1.5,0.9"), iv);
    CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("kirmaci bound 1: affine, x^2, and exp") {
    const InequalityReport aff = midpoint_mean_linfty_bound(parse_function("pow:1"), kUnit);
    CHECK(aff.verdict == Verdict::pass);
    CHECK(std::abs(side_val(aff, "lhs")) < 1e-12);
    CHECK(side_val(aff, "rhs") == doctest::Approx(0.25));

    const InequalityReport sq = midpoint_mean_linfty_bound(parse_function("pow:2"), kUnit);
    CHECK(sq.verdict == Verdict::pass);
    CHECK(side_val(sq, "lhs") == doctest::Approx(1.0 / 12.0).epsilon(1e-11));
    CHECK(side_val(sq, "rhs") == doctest::Approx(0.25));

    const InequalityReport ex = midpoint_mean_linfty_bound(parse_function("exp"), kUnit);
    CHECK(ex.verdict == Verdict::pass);
    CHECK(side_val(ex, "lhs") ==
          doctest::Approx(0.06956055775891709).epsilon(1e-10));
    CHECK(side_val(ex, "rhs") ==
          doctest::Approx(0.46478522855738064).epsilon(1e-12));
}

TEST_CASE("kirmaci bound 2: plug-in arithmetic at p = 2") {
    const InequalityReport r =
        midpoint_mean_holder_bound(parse_function("pow:2"), kUnit, 2.0);
    CHECK(r.verdict == Verdict::pass);
    CHECK(side_val(r, "lhs") == doctest::Approx(1.0 / 12.0).epsilon(1e-11));
    // (1/16) sqrt(4/3) (sqrt(12) + 2)
    CHECK(side_val(r, "rhs") ==
          doctest::Approx(0.39433756729740643).epsilon(1e-13));
    CHECK_THROWS_AS(midpoint_mean_holder_bound(parse_function("pow:2"), kUnit, 1.0),
                    std::invalid_argument);
}

TEST_CASE("hh fractional: alpha = 1 matches the classical report") {
    const Interval iv(0.3, 1.9);
    const FunctionModel f = parse_function("exp");
    const InequalityReport frac = hermite_hadamard_fractional(f, FracOrder(1.0), iv);
    const InequalityReport classical = hermite_hadamard(f, iv);
    CHECK(frac.verdict == Verdict::pass);
    CHECK(side_val(frac, "fractional_mean") ==
          doctest::Approx(side_val(classical, "integral_mean")).epsilon(1e-10));
}

TEST_CASE("hh fractional: affine f collapses the sandwich") {
    for (double alpha : {0.3, 1.6}) {
        const InequalityReport r = hermite_hadamard_fractional(
            parse_function("pow:1"), FracOrder(alpha), Interval(0.5, 2.0));
        CHECK(r.verdict == Verdict::pass);
        CHECK(std::abs(side_val(r, "fractional_mean") -
                       side_val(r, "midpoint_value")) < 1e-10);
        CHECK(std::abs(r.slack) < 1e-10);
    }
}

TEST_CASE("hh fractional: x^2 at alpha = 1/2 via power rules") {
    const InequalityReport r = hermite_hadamard_fractional(
        parse_function("pow:2"), FracOrder(0.5), kUnit);
    CHECK(r.verdict == Verdict::pass);
    // Gamma(1.5)/2 [J_{0+}^{1/2} x^2 (1) + J_{1-}^{1/2} x^2 (0)] = 11/30.
    CHECK(side_val(r, "fractional_mean") ==
          doctest::Approx(0.36666666666666664).epsilon(1e-10));
}

TEST_CASE("hh fractional: negative left endpoint is a precondition error") {
    CHECK_THROWS_AS(hermite_hadamard_fractional(parse_function("exp"), FracOrder(0.5),
                                                Interval(-1.0, 1.0)),
                    PreconditionError);
}

TEST_CASE("fejer fractional: unit weight reduces to hh fractional") {
    const Interval iv(0.2, 1.7);
    const FunctionModel f = parse_function("pow:3");
    const double alpha = 0.8;
    const InequalityReport fr =
        fejer_fractional(f, parse_weight("one", iv), FracOrder(alpha), iv);
    const InequalityReport hh = hermite_hadamard_fractional(f, FracOrder(alpha), iv);
    CHECK(fr.verdict == Verdict::pass);
    const double scale =
        2.0 * std::pow(iv.length(), alpha) / hhf::gamma(alpha + 1.0);
    CHECK(side_val(fr, "weighted_integral") ==
          doctest::Approx(scale * side_val(hh, "fractional_mean")).epsilon(1e-9));
}

TEST_CASE("fejer fractional: alpha = 1 doubles the classical weighted sides") {
    // At alpha = 1 each whole-interval operator is the plain integral, so
    // the operator pair sums to twice int g.
    const Interval iv(0.1, 1.4);
    const FunctionModel f = parse_function("pow:2");
    const WeightModel g = parse_weight("sym:cosine:1", iv);
    const InequalityReport fr = fejer_fractional(f, g, FracOrder(1.0), iv);
    const InequalityReport cl = fejer_classical(f, g, iv);
    for (const char* label :
         {"midpoint_weighted", "weighted_integral", "endpoint_weighted"}) {
        CHECK(side_val(fr, label) ==
              doctest::Approx(2.0 * side_val(cl, label)).epsilon(1e-9));
    }
}

TEST_CASE("fejer fractional: generic smooth instance passes") {
    const InequalityReport r = fejer_fractional(
        parse_function("pow:2"), parse_weight("sym:bump:2", kUnit), FracOrder(0.5),
        kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.slack >= -1e-10);
}

TEST_CASE("thm24: analytic example and chain ordering") {
    const InequalityReport r = weighted_midpoint_linfty_bound(
        parse_function("pow:2"), parse_weight("one", kUnit), FracOrder(1.0), kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(side_val(r, "lhs") == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
    CHECK(side_val(r, "rhs_sharp") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(side_val(r, "rhs_final") == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("thm24: chain ordering holds on random instances") {
    SplitMix64 rng = SplitMix64::stream(77, 2);
    for (int i = 0; i < 8; ++i) {
        const double a = rng.uniform(0.0, 2.0);
        const Interval iv(a, a + rng.uniform(0.5, 3.0));
        const FunctionModel f = parse_function(i % 2 ? "exp" : "pow:2");
        const WeightModel g = parse_weight(i % 3 ? "sym:bump:2" : "sym:cosine:1", iv);
        const InequalityReport r = weighted_midpoint_linfty_bound(
            f, g, FracOrder(rng.uniform(0.2, 3.0)), iv);
        CHECK(r.verdict == Verdict::pass);
        CHECK(side_val(r, "rhs_sharp") <=
              side_val(r, "rhs_final") * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("thm25: both candidate constants on the x^2 example") {
    const InequalityReport r = weighted_midpoint_power_mean_bound(
        parse_function("pow:2"), parse_weight("one", kUnit), FracOrder(1.0), kUnit,
        2.0);
    CHECK(r.verdict == Verdict::pass);
    CHECK(side_val(r, "lhs") == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
    // Plug-in arithmetic: S = sqrt(8) + 4, common = 1/(2 sqrt(3)).
    const double S = std::sqrt(8.0) + 4.0;
    const double common = 1.0 / (2.0 * std::sqrt(3.0));
    CHECK(side_val(r, "rhs_stmt") ==
          doctest::Approx(common / std::pow(2.0, 2.5) * S).epsilon(1e-13));
    CHECK(side_val(r, "rhs_proof") ==
          doctest::Approx(common / std::pow(2.0, 1.5) * S).epsilon(1e-13));
    CHECK(side_val(r, "rhs_proof") ==
          doctest::Approx(2.0 * side_val(r, "rhs_stmt")).epsilon(1e-13));
    bool stmt_note = false, proof_note = false;
    for (const auto& n : r.notes) {
        stmt_note = stmt_note || n == "candidate rhs_stmt holds: yes";
        proof_note = proof_note || n == "candidate rhs_proof holds: yes";
    }
    CHECK(stmt_note);
    CHECK(proof_note);
}

TEST_CASE("thm25: affine f passes both candidates trivially") {
    const InequalityReport r = weighted_midpoint_power_mean_bound(
        parse_function("pow:1"), parse_weight("sym:bump:2", kUnit), FracOrder(0.7),
        kUnit, 3.0);
    CHECK(r.verdict == Verdict::pass);
    CHECK(std::abs(side_val(r, "lhs")) < 1e-10);
}

TEST_CASE("thm26: plug-in example at p = q = 2") {
    const InequalityReport r = weighted_midpoint_holder_bound(
        parse_function("pow:2"), parse_weight("one", kUnit), FracOrder(1.0), kUnit,
        2.0);
    CHECK(r.verdict == Verdict::pass);
    CHECK(side_val(r, "lhs") == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
    CHECK(side_val(r, "rhs") == doctest::Approx(0.39433756729740643).epsilon(1e-13));
}

TEST_CASE("thm26: exp with a bump weight at fractional order") {
    const InequalityReport r = weighted_midpoint_holder_bound(
        parse_function("exp"), parse_weight("sym:bump:2", kUnit), FracOrder(0.5),
        kUnit, 2.0);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.slack > 0.0);
}

TEST_CASE("eq0: constant f telescopes to zero") {
    const InequalityReport r = cumulative_weight_identity(
        parse_function("quad:0,0,5"), parse_weight("sym:bump:2", kUnit),
        FracOrder(1.3), 0.4, kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(std::abs(side_val(r, "lhs")) < 1e-10);
    CHECK(std::abs(side_val(r, "lhs") - side_val(r, "rhs")) < 1e-9);
}

TEST_CASE("eq0: unit weight, alpha = 1, f = x^2 at the midpoint") {
    const InequalityReport r = cumulative_weight_identity(
        parse_function("pow:2"), parse_weight("one", kUnit), FracOrder(1.0), 0.5,
        kUnit);
    CHECK(r.verdict == Verdict::pass);
    CHECK(side_val(r, "lhs") == doctest::Approx(-1.0 / 12.0).epsilon(1e-9));
    CHECK(side_val(r, "rhs") == doctest::Approx(-1.0 / 12.0).epsilon(1e-9));
}

TEST_CASE("eq0: affine f with unit weight at general alpha") {
    for (double alpha : {0.4, 1.0, 2.5}) {
        const InequalityReport r = cumulative_weight_identity(
            parse_function("pow:1"), parse_weight("one", kUnit), FracOrder(alpha), 0.5,
            kUnit);
        CHECK(r.verdict == Verdict::pass);
        CHECK(std::abs(side_val(r, "lhs") - side_val(r, "rhs")) < 1e-8);
    }
}

TEST_CASE("eq0: endpoint evaluation points") {
    const FunctionModel f = parse_function("exp");
    const WeightModel g = parse_weight("sym:cosine:1", kUnit);
    for (double x : {0.0, 1.0}) {
        const InequalityReport r =
            cumulative_weight_identity(f, g, FracOrder(0.6), x, kUnit);
        CHECK(r.verdict == Verdict::pass);
    }
    CHECK_THROWS_AS(
        cumulative_weight_identity(f, g, FracOrder(0.6), 1.5, kUnit),
        std::invalid_argument);
}

TEST_CASE("sandwich ordering holds across seeded random instances") {
    SplitMix64 rng = SplitMix64::stream(99, 1);
    const char* fs[] = {"exp", "pow:2", "pow:3", "quad:1,0,0",
                        "maxaffine:(-1,0.5),(1,-0.5)", "abslin:1.5,0.9"};
    const char* gs[] = {"one", "sym:bump:2", "sym:cosine:1", "sym:poly:2,1"};
    for (int i = 0; i < 10; ++i) {
        const double a = rng.uniform(0.0, 2.0);
        const Interval iv(a, a + rng.uniform(0.5, 3.0));
        const FunctionModel f = parse_function(fs[rng.uniform_index(6)]);
        const WeightModel g = parse_weight(gs[rng.uniform_index(4)], iv);
        const double alpha = rng.uniform(0.2, 3.0);
        CHECK(hermite_hadamard(f, iv).verdict == Verdict::pass);
        CHECK(fejer_classical(f, g, iv).verdict == Verdict::pass);
        CHECK(hermite_hadamard_fractional(f, FracOrder(alpha), iv).verdict ==
              Verdict::pass);
        CHECK(fejer_fractional(f, g, FracOrder(alpha), iv).verdict == Verdict::pass);
    }
}

TEST_CASE("eval_kernel: fractional order against the power rule") {
    // g = 1: left branch is (t-a)^alpha / alpha.
    const KernelK k{FracOrder(0.5), parse_weight("one", kUnit), kUnit};
    CHECK(eval_kernel(k, 0.36) == doctest::Approx(std::pow(0.36, 0.5) / 0.5).epsilon(1e-11));
    CHECK(eval_kernel(k, 0.9) ==
          doctest::Approx(-std::pow(0.1, 0.5) / 0.5).epsilon(1e-10));
}

TEST_CASE("eq0: fractional order closed form for the unit weight") {
    // w = 1, f = x^2, x = 1/2 on [0,1]: both sides equal
    //   4 (1/2)^(alpha+2)/(alpha+2) - 2 (1/2)^(alpha+1)/(alpha+1).
    const struct {
        double alpha, expected;
    } cases[] = {{0.5, -0.18856180831641267}, {1.7, -0.030809419753376283}};
    for (const auto& c : cases) {
        const InequalityReport r = cumulative_weight_identity(
            parse_function("pow:2"), parse_weight("one", kUnit), FracOrder(c.alpha),
            0.5, kUnit);
        CHECK(r.verdict == Verdict::pass);
        CHECK(side_val(r, "lhs") == doctest::Approx(c.expected).epsilon(1e-9));
        CHECK(side_val(r, "rhs") == doctest::Approx(c.expected).epsilon(1e-8));
    }
}
