#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>

#include "levy/classifier.hpp"
#include "levy/diagnostics.hpp"
#include "levy/errors.hpp"
#include "levy/integrals.hpp"
#include "levy/model_io.hpp"

using namespace levy;

namespace {

LevyModel model(const char* name) { return load_model(name); }

const double kMinZ2 = std::erf(1.0 / std::numbers::sqrt2) - 2.0 * std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi) +
                      std::erfc(1.0 / std::numbers::sqrt2);

double phi_bar(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("trend labels from least-squares slopes") {
    CHECK(sum_trend({1, 2, 3}, {5.0, 5.001, 5.002}) == Trend::Converging);
    CHECK(sum_trend({1, 2, 3}, {1.0, 2.0, 3.0}) == Trend::Diverging);
    CHECK(sum_trend({1, 2, 3}, {1.0, 1.05, 1.1}) == Trend::Flat);
    CHECK(ls_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(ls_slope({1, 1}, {0, 1}), ValidationError);
    CHECK(to_string(Trend::Diverging) == "Diverging");
}

TEST_CASE("I_beta: Brownian at beta = 2 grows linearly") {
    McOptions opt;
    const EstimateWithCI e = estimate_I_beta(model("brownian"), 2.0, opt);
    CHECK(e.trend == Trend::Diverging);
    REQUIRE(e.levels.size() >= 3);
    const double expect = (opt.depth + 1) * std::numbers::ln2 * kMinZ2;
    CHECK(std::abs(e.value - expect) < 4.0 * e.std_error);
    CHECK(e.std_error > 0.0);
    CHECK(e.samples == (opt.depth + 1) * opt.mc);
    CHECK(kMinZ2 == doctest::Approx(0.5161).epsilon(1e-4));
}

TEST_CASE("I_beta: drift converges to the deterministic sum") {
    const McOptions opt;
    const EstimateWithCI e = estimate_I_beta(model("drift"), 2.0, opt);
    CHECK(e.trend == Trend::Converging);
    double expect = 0.0;
    for (int j = 0; j <= opt.depth; ++j) expect += std::numbers::ln2 * std::ldexp(1.0, -j);
    CHECK(e.value == doctest::Approx(expect).epsilon(1e-12));
    CHECK(e.std_error < 1e-9 * e.value);
}

TEST_CASE("I_beta: stable 1.5 diverges, matching J_beta = inf") {
    const LevyModel s = model("stable-1.5");
    REQUIRE(j_p(s, 1.5).status == IntegralStatus::Infinite);
    McOptions opt;
    opt.mc = 4000;
    CHECK(estimate_I_beta(s, 1.5, opt).trend == Trend::Diverging);
}

TEST_CASE("I_beta preconditions") {
    CHECK_THROWS_AS(estimate_I_beta(model("example15"), 2.0), CapabilityError);
    CHECK_THROWS_AS(estimate_I_beta(model("brownian"), 1.0), DomainError);
    CHECK_THROWS_AS(estimate_I_beta(model("brownian"), 2.5), DomainError);
    McOptions bad;
    bad.depth = 2;
    CHECK_THROWS_AS(estimate_I_beta(model("brownian"), 2.0, bad), ValidationError);
}

TEST_CASE("Khintchine integral") {
    McOptions opt;
    opt.mc = 4000;
    const KhintchineReport d = khintchine_integral(model("drift"), HSpec::power(0.5), 1.0, opt);
    CHECK(d.at_R.status == IntegralStatus::Finite);
    const KhintchineReport b = khintchine_integral(model("brownian"), HSpec::power(0.5), 1.0, opt);
    CHECK(b.at_R.status == IntegralStatus::Infinite);
    CHECK(b.at_quarter_R.status == IntegralStatus::Infinite);
    CHECK(b.at_eight_R.status != IntegralStatus::Undetermined);
    const KhintchineReport f = khintchine_integral(model("brownian"), HSpec::power(0.4), 1.0, opt);
    CHECK(f.at_R.status == IntegralStatus::Finite);
    CHECK(f.R == 1.0);
    const LevyModel cpd(0.0, 1.0, CompoundPoisson{1.0, JumpLaw::Normal, 0.0, 1.0});
    CHECK_THROWS_AS(khintchine_integral(cpd, HSpec::power(0.5), 1.0, opt), CapabilityError);
    CHECK_THROWS_AS(khintchine_integral(model("brownian"), HSpec::power(0.5), 0.0, opt), ValidationError);
}

TEST_CASE("limsup estimates") {
    const EstimateWithCI d = limsup_estimate(model("drift"), HSpec::power(1.0), 20, 20, 1);
    CHECK(d.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.trend == Trend::Flat);
    const EstimateWithCI up = limsup_estimate(model("brownian"), HSpec::power(0.6), 200, 40, 2);
    CHECK(up.trend == Trend::Diverging);
    CHECK_THROWS_AS(limsup_estimate(model("example15"), HSpec::lil(), 10, 20, 1), CapabilityError);
    CHECK_THROWS_AS(limsup_estimate(model("brownian"), HSpec::lil(), 1, 20, 1), ValidationError);
}

TEST_CASE("limsup: Brownian law of the iterated logarithm") {
    const EstimateWithCI e = limsup_estimate(model("brownian"), HSpec::lil(), 1000, 40, 3);
    CHECK(std::abs(e.value - std::numbers::sqrt2) < 0.1 * std::numbers::sqrt2);
}

TEST_CASE("limsup trend agrees with classify_r on both sides of the critical exponent") {
    for (const char* name : {"brownian", "brownian-jumps", "stable-1.5"}) {
        const LevyModel m = model(name);
        const double c = critical_exponent(m);
        for (double r : {c - 0.1, c + 0.1}) {
            CAPTURE(name);
            CAPTURE(r);
            const Answer a = classify_r(m, r + 0.01).answer;
            REQUIRE(a != Answer::Inconclusive);
            const Trend t = limsup_estimate(m, HSpec::power(r), 200, 40, 4).trend;
            CHECK((t == Trend::Diverging) == (a == Answer::No));
        }
    }
}

TEST_CASE("stick-breaking sum vs integral") {
    McOptions opt;
    opt.mc = 2000;
    opt.depth = 40;
    struct Row {
        const char* model;
        double r, q;
        Trend expect;
    };
    for (const Row& row : {Row{"brownian", 0.5, 2.0, Trend::Diverging}, Row{"brownian", 0.25, 4.0 / 3.0, Trend::Converging},
                           Row{"drift", 0.0, 2.0, Trend::Converging}}) {
        CAPTURE(row.model);
        CAPTURE(row.r);
        const SbComparison s = sb_sum_vs_integral(model(row.model), row.r, row.q, 64, opt);
        CHECK(s.sum_side.trend == row.expect);
        CHECK(s.integral_side.trend == row.expect);
        CHECK(s.trends_agree());
        CHECK(s.sum_side.levels.size() >= 3);
    }
    const SbComparison d = sb_sum_vs_integral(model("drift"), 0.0, 2.0, 64, opt);
    CHECK(d.sum_side.value <= 0.5 + 3.0 * d.sum_side.std_error);
    CHECK_THROWS_AS(sb_sum_vs_integral(model("brownian"), 1.5, 2.0, 64, opt), ValidationError);
    CHECK_THROWS_AS(sb_sum_vs_integral(model("brownian"), 0.5, 0.0, 64, opt), ValidationError);
    CHECK_THROWS_AS(sb_sum_vs_integral(model("example15"), 0.5, 2.0, 64, opt), CapabilityError);
}

TEST_CASE("maximal inequality") {
    CHECK(2.0 * phi_bar(4.0) <= 2.0 * phi_bar(2.0));
    const MaximalReport b = maximal_inequality_check(model("brownian"), 1.0, 0.01, 200000, 5);
    CHECK(b.precondition_ok);
    CHECK(b.pass);
    CHECK(std::abs(b.rhs - 2.0 * phi_bar(2.0)) < 4.0 * b.rhs_se);
    CHECK(b.lhs <= 2.0 * phi_bar(4.0) + 4.0 * b.lhs_se + 1e-5);
    const LevyModel drift(0.0, 0.1, ZeroMeasure{});
    const MaximalReport d = maximal_inequality_check(drift, 1.0, 0.01, 1000, 6);
    CHECK(d.lhs == 0.0);
    CHECK(d.pass);
    CHECK(d.precondition_ok);
    const MaximalReport big = maximal_inequality_check(model("brownian"), 0.1, 0.5, 1000, 7);
    CHECK_FALSE(big.precondition_ok);
    CHECK_FALSE(big.pass);
}

TEST_CASE("estimators are seed-deterministic and worker-count invariant") {
    McOptions opt;
    opt.mc = 3000;
    opt.depth = 10;
    auto once = [&] {
        return std::make_pair(estimate_I_beta(model("stable-1.5"), 1.5, opt).value,
                              sb_sum_vs_integral(model("brownian"), 0.5, 2.0, 16, opt).sum_side.value);
    };
    setenv("LEVY_MINORANT_THREADS", "1", 1);
    const auto a = once();
    const auto a2 = once();
    setenv("LEVY_MINORANT_THREADS", "3", 1);
    const auto b = once();
    unsetenv("LEVY_MINORANT_THREADS");
    CHECK(same_bits(a.first, a2.first));
    CHECK(same_bits(a.first, b.first));
    CHECK(same_bits(a.second, b.second));
    McOptions other = opt;
    other.seed = opt.seed + 1;
    CHECK_FALSE(same_bits(a.first, estimate_I_beta(model("stable-1.5"), 1.5, other).value));
}
