#include <doctest.h>

#include <cmath>
#include <vector>

#include "levy/errors.hpp"
#include "levy/minorant.hpp"
#include "levy/model_io.hpp"
#include "oracles.hpp"

using namespace levy;

namespace {

PiecewiseLinearConvex scaled(const PiecewiseLinearConvex& p, double a, double c) {
    std::vector<Face> f = p.faces();
    for (Face& x : f) {
        x.length *= a;
        x.height *= c;
    }
    return PiecewiseLinearConvex(f, p.origin() * c);
}

} // namespace

TEST_CASE("hull of three points with the middle below the chord") {
    const auto p = convex_minorant({0.0, 0.5, 1.0}, {0.0, -1.0, 1.0});
    REQUIRE(p.face_count() == 2);
    CHECK(p.faces()[0].length == 0.5);
    CHECK(p.faces()[0].height == -1.0);
    CHECK(p.faces()[1].length == 0.5);
    CHECK(p.faces()[1].height == 2.0);
    CHECK(k_r(p, 0.5) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(K_r(p, 0.5) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
    CHECK(p.span() == 1.0);
}

TEST_CASE("points on or above the chord collapse to one face") {
    const auto p = convex_minorant({0.0, 0.5, 1.0}, {0.0, 1.0, 2.0});
    REQUIRE(p.face_count() == 1);
    CHECK(p.faces()[0].length == 1.0);
    CHECK(p.faces()[0].height == 2.0);
    const auto q = convex_minorant({0.0, 0.25, 0.5, 1.0}, {0.0, 3.0, 1.0, 2.0});
    REQUIRE(q.face_count() == 1);
}

TEST_CASE("single face: k = sup = K") {
    for (double r : {0.1, 0.5, 0.9}) {
        const PiecewiseLinearConvex p({{2.0, -3.0}});
        const double k = 3.0 / std::pow(2.0, r);
        CHECK(k_r(p, r) == doctest::Approx(k).epsilon(1e-14));
        CHECK(K_r(p, r) == doctest::Approx(k).epsilon(1e-12));
        CHECK(holder_sup(p, r) == doctest::Approx(k).epsilon(1e-14));
        const RSlopeStats s = verify_sandwich(p, r);
        CHECK(s.face_count == 1);
    }
    CHECK(holder_sup(PiecewiseLinearConvex({{1.0, -1.0}}), 0.5) == doctest::Approx(1.0));
}

TEST_CASE("strict fixture") {
    const auto p = holder_strict_fixture(0.5);
    CHECK(p.span() == 2.0);
    const RSlopeStats s = verify_sandwich(p, 0.5);
    CHECK(std::abs(s.k_r - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(s.holder_sup - 1.5) < 1e-12);
    CHECK(std::abs(s.K_r - std::sqrt(2.5)) < 1e-12);
    CHECK(s.k_r < s.holder_sup);
    CHECK(s.holder_sup < s.K_r);
    for (double r : {0.2, 0.4, 0.6, 0.8}) {
        CAPTURE(r);
        const auto q = holder_strict_fixture(r);
        CHECK(holder_sup(q, r) == doctest::Approx(1.0 + r).epsilon(1e-12));
        CHECK(k_r(q, r) == doctest::Approx(std::pow(2.0, r)).epsilon(1e-12));
    }
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(convex_minorant({0.0}, {0.0}), ValidationError);
    CHECK_THROWS_AS(convex_minorant({0.0, 1.0}, {0.0}), ValidationError);
    CHECK_THROWS_AS(convex_minorant({0.0, 1.0, 1.0}, {0.0, 1.0, 2.0}), ValidationError);
    const auto p = holder_strict_fixture(0.5);
    CHECK_THROWS_AS(K_r(p, 0.995), ValidationError);
    CHECK_NOTHROW(K_r(p, 0.99));
    CHECK_THROWS_AS(k_r(p, 0.0), ValidationError);
    CHECK_THROWS_AS(holder_sup(p, 1.0), ValidationError);
    CHECK_THROWS_AS(PiecewiseLinearConvex({{1.0, 1.0}, {1.0, 1.0}}), ValidationError);
    CHECK_THROWS_AS(PiecewiseLinearConvex({{0.0, 1.0}}), ValidationError);
    const auto m = PiecewiseLinearConvex::from_unordered_faces({{1.0, 2.0}, {1.0, -1.0}, {2.0, 4.0}});
    REQUIRE(m.face_count() == 2);
    CHECK(m.faces()[0].height == -1.0);
    CHECK(m.faces()[1].length == 3.0);
    CHECK(m.faces()[1].height == 6.0);
}

TEST_CASE("hull matches the brute-force oracle on random 10-point paths") {
    RngStream rng(21, StreamTag::Test, 0);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> t{0.0}, x{0.0};
        for (int i = 1; i < 10; ++i) {
            t.push_back(t.back() + 0.01 + rng.uniform());
            x.push_back(x.back() + rng.normal());
        }
        const auto p = convex_minorant(t, x);
        const auto vert = oracle::brute_hull_vertices(t, x);
        const auto kt = p.knot_times();
        const auto kv = p.knot_values();
        REQUIRE(kt.size() == vert.size());
        for (std::size_t k = 0; k < vert.size(); ++k) {
            CHECK(kt[k] == t[vert[k]]);
            CHECK(kv[k] == x[vert[k]]);
        }
        const auto c = oracle::brute_hull_values(t, x);
        for (std::size_t i = 0; i < t.size(); ++i) {
            CHECK(p.value(t[i]) == doctest::Approx(c[i]).epsilon(1e-12));
            CHECK(p.value(t[i]) <= x[i] + 1e-12 * (1.0 + std::abs(x[i])));
        }
    }
}

TEST_CASE("hull idempotence and dominance on simulated paths") {
    for (const char* name : {"brownian", "stable-1.5", "brownian-jumps"}) {
        CAPTURE(name);
        const LevyModel m = load_model(name);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const PathSample path = sample_path(m, 1.0, 2000, seed);
            const auto p = convex_minorant(path);
            CHECK(p.origin() == 0.0);
            CHECK(p.span() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(p.knot_values().back() == path.values.back());
            for (std::size_t i = 0; i < path.times.size(); ++i)
                CHECK(p.value(path.times[i]) <= path.values[i] + 1e-12 * (1.0 + std::abs(path.values[i])));
            const auto q = convex_minorant(p.knot_times(), p.knot_values());
            REQUIRE(q.face_count() == p.face_count());
            for (std::size_t k = 0; k < p.face_count(); ++k) {
                CHECK(q.faces()[k].length == p.faces()[k].length);
                CHECK(q.faces()[k].height == p.faces()[k].height);
            }
        }
    }
}

TEST_CASE("holder_sup matches the grid oracle") {
    RngStream rng(22, StreamTag::Test, 0);
    for (double r : {0.25, 0.5, 0.75}) {
        for (int rep = 0; rep < 300; ++rep) {
            const auto p = oracle::fuzz_plc(rng, 1 + static_cast<int>(rng.uniform() * 4));
            const double exact = holder_sup(p, r);
            const double grid = oracle::grid_holder_sup(p, r);
            CAPTURE(r);
            CAPTURE(rep);
            CHECK(exact >= grid * (1.0 - 1e-12));
            CHECK(exact <= grid * (1.0 + 1e-6));
        }
    }
}

TEST_CASE("sandwich on fuzzed instances") {
    RngStream rng(23, StreamTag::Test, 0);
    for (int rep = 0; rep < 10000; ++rep) {
        const int F = 1 + static_cast<int>(rng.uniform() * 64);
        const double min_len = rep % 3 == 0 ? 1e-9 : 0.01;
        const auto p = oracle::fuzz_plc(rng, F, min_len, rep % 2 ? 1.0 : 50.0);
        for (double r : {0.25, 0.5, 0.75}) CHECK_NOTHROW(verify_sandwich(p, r));
    }
}

TEST_CASE("sandwich on stick-breaking samples") {
    for (const char* name : {"brownian", "stable-1.5", "brownian-jumps", "drift"}) {
        const LevyModel m = load_model(name);
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto p = PiecewiseLinearConvex::from_unordered_faces(stick_breaking_faces(m, 1.0, 64, seed).faces);
            for (double r : {0.25, 0.5, 0.75}) CHECK_NOTHROW(verify_sandwich(p, r));
        }
    }
}

TEST_CASE("scaling covariance") {
    RngStream rng(24, StreamTag::Test, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const auto p = oracle::fuzz_plc(rng, 1 + static_cast<int>(rng.uniform() * 10));
        const double c = 0.1 + 5.0 * rng.uniform();
        const double a = 0.1 + 5.0 * rng.uniform();
        for (double r : {0.25, 0.5, 0.75}) {
            const auto h = scaled(p, 1.0, c);
            CHECK(k_r(h, r) == doctest::Approx(c * k_r(p, r)).epsilon(1e-12));
            CHECK(K_r(h, r) == doctest::Approx(c * K_r(p, r)).epsilon(1e-12));
            CHECK(holder_sup(h, r) == doctest::Approx(c * holder_sup(p, r)).epsilon(1e-12));
            const auto s = scaled(p, a, 1.0);
            const double f = std::pow(a, -r);
            CHECK(k_r(s, r) == doctest::Approx(f * k_r(p, r)).epsilon(1e-12));
            CHECK(K_r(s, r) == doctest::Approx(f * K_r(p, r)).epsilon(1e-12));
            CHECK(holder_sup(s, r) == doctest::Approx(f * holder_sup(p, r)).epsilon(1e-12));
        }
    }
}

TEST_CASE("K_r is non-decreasing in r when the total span is at most 1") {
    RngStream rng(25, StreamTag::Test, 0);
    for (int rep = 0; rep < 500; ++rep) {
        const auto raw = oracle::fuzz_plc(rng, 1 + static_cast<int>(rng.uniform() * 20));
        const auto p = scaled(raw, rng.uniform() / raw.span(), 1.0);
        REQUIRE(p.span() <= 1.0);
        double prev = 0.0;
        for (double r = 0.05; r <= 0.95 + 1e-9; r += 0.05) {
            const double k = K_r(p, r);
            CHECK(k >= prev * (1.0 - 1e-12));
            prev = k;
        }
    }
    // sub-unit faces alone do not suffice once the span exceeds 1
    const PiecewiseLinearConvex two({{1.0, -1.0}, {1.0, 1.0}});
    CHECK(K_r(two, 0.75) < K_r(two, 0.25));
}
