// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "levy/classifier.hpp"
#include "levy/diagnostics.hpp"
#include "levy/integrals.hpp"
#include "levy/minorant.hpp"
#include "levy/model_io.hpp"
#include "levy/pathsim.hpp"
#include "oracles.hpp"

using namespace levy;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int n, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0.0 && secs > budget_s) {
        o.ok = false;
        o.detail << " [over budget: " << budget_s << " s]";
    }
    if (!o.ok) ++failures;
    std::printf("criterion %d: %s (%.2f s)%s\n", n, o.ok ? "PASS" : "FAIL", secs, o.detail.str().c_str());
    std::fflush(stdout);
}

double phi_bar(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

void c1(Outcome& o) {
    const JpRoutes r = j_p_routes(load_model("stable-1.5"), 1.8);
    o.detail << " moment=" << r.moment.value << " tail=" << r.tail.value;
    o.require(r.moment.finite() && r.tail.finite(), "both routes Finite");
    o.require(std::abs(r.moment.value - 5.0) < 1e-6, "moment route = 5");
    o.require(std::abs(r.tail.value - 5.0) < 1e-6, "tail route = 5");
    o.require(std::abs(r.moment.value - r.tail.value) < 1e-6, "routes agree");
    o.require(j_p(load_model("stable-1.5"), 1.8).finite(), "j_p Finite");
}

void c2(Outcome& o) {
    const Lambda2Result l = lambda2(load_model("example15"), 0.05);
    o.detail << " lambda2=" << l.value << " bracket=[" << l.lo << ", " << l.hi << "]";
    o.require(l.status == IntegralStatus::Finite, "Finite");
    o.require(std::abs(l.value - 1.0) <= 0.05, "lambda2 = 1 +- 0.05");
}

void c3(Outcome& o) {
    struct Row {
        const char* model;
        double r;  // 0: critical exponent
        Answer answer;
        const char* clause;
    };
    const Row rows[] = {
        {"brownian", 0.45, Answer::Yes, "i"},
        {"brownian", 0.0, Answer::No, "i"},
        {"brownian-jumps", 0.3, Answer::Yes, "i"},
        {"brownian-jumps", 0.6, Answer::No, "i"},
        {"cauchy-tab", 0.95, Answer::Yes, "ii-beta=1"},
        {"stable-1.25", 0.7, Answer::Yes, "ii-J_beta=inf"},
        {"stable-1.5", 0.0, Answer::No, "ii-J_beta=inf"},
        {"stable-1.75", 0.0, Answer::No, "ii-J_beta=inf"},
        {"log-tempered-1.25-2", 0.0, Answer::Yes, "ii-J_beta<inf"},
        {"log-tempered-1.5-2", 0.0, Answer::Yes, "ii-J_beta<inf"},
        {"log-tempered-1.75-2", 0.7, Answer::No, "ii-J_beta<inf"},
        {"lambda-inf-tab", 0.0, Answer::No, "iii-a"},
        {"example15", 0.0, Answer::Inconclusive, "iii-b"},
        {"i2-tab", 0.0, Answer::Yes, "iii-d"},
    };
    int mismatches = 0;
    for (const Row& row : rows) {
        const LevyModel m = load_model(row.model);
        const double r = row.r == 0.0 ? critical_exponent(m) : row.r;
        const HolderVerdict v = classify_r(m, r);
        if (v.answer != row.answer || v.clause != row.clause) {
            ++mismatches;
            o.detail << " " << row.model << "@" << r << "->" << to_string(v.answer) << "/" << v.clause;
        }
    }
    o.detail << " rows=" << std::size(rows) << " mismatches=" << mismatches;
    o.require(mismatches == 0, "zero mismatches");
}

void c4(Outcome& o) {
    const RSlopeStats s = verify_sandwich(holder_strict_fixture(0.5), 0.5);
    o.detail << " (k, sup, K)=(" << s.k_r << ", " << s.holder_sup << ", " << s.K_r << ")";
    o.require(std::abs(s.k_r - std::sqrt(2.0)) < 1e-9, "k = sqrt 2");
    o.require(std::abs(s.holder_sup - 1.5) < 1e-9, "sup = 1.5");
    o.require(std::abs(s.K_r - std::sqrt(2.5)) < 1e-9, "K = sqrt 2.5");
    o.require(s.k_r < s.holder_sup, "strict first inequality");
}

void c5(Outcome& o) {
    RngStream rng(51, StreamTag::Test, 0);
    int hull_bad = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> t{0.0}, x{0.0};
        for (int i = 1; i < 10; ++i) {
            t.push_back(t.back() + 0.01 + rng.uniform());
            x.push_back(x.back() + rng.normal());
        }
        const auto p = convex_minorant(t, x);
        const auto v = oracle::brute_hull_vertices(t, x);
        bool same = p.knot_times().size() == v.size();
        for (std::size_t k = 0; same && k < v.size(); ++k)
            same = p.knot_times()[k] == t[v[k]] && p.knot_values()[k] == x[v[k]];
        hull_bad += !same;
    }
    int sup_bad = 0;
    double worst = 0.0;
    RngStream frng(52, StreamTag::Test, 0);
    for (double r : {0.25, 0.5, 0.75})
        for (int rep = 0; rep < 1000; ++rep) {
            const auto p = oracle::fuzz_plc(frng, 1 + static_cast<int>(frng.uniform() * 4));
            const double exact = holder_sup(p, r), grid = oracle::grid_holder_sup(p, r);
            const double rel = std::abs(exact - grid) / grid;
            worst = std::max(worst, rel);
            sup_bad += exact < grid * (1.0 - 1e-12) || rel > 1e-6;
        }
    o.detail << " hull_mismatches=" << hull_bad << " sup_mismatches=" << sup_bad << " worst_rel=" << worst;
    o.require(hull_bad == 0, "hull equals brute-force oracle");
    o.require(sup_bad == 0, "holder_sup within 1e-6 of grid oracle");
}

void c6(Outcome& o) {
    const LevyModel b = load_model("brownian");
    Moments sq;
    for (std::uint64_t s = 0; s < 100000; ++s) {
        double q = 0.0;
        for (const Face& f : stick_breaking_faces(b, 1.0, 64, s).faces) q += f.length * f.length;
        sq.add(q);
    }
    o.detail << " E[sum l^2]=" << sq.mean() << " se=" << sq.std_error();
    o.require(std::abs(sq.mean() - 0.5) <= 3.0 * sq.std_error(), "E[sum l^2] = 1/2 within 3 se");
    const LevyModel d = load_model("drift");
    for (int N : {5, 10, 20}) {
        Moments res;
        for (std::uint64_t s = 0; s < 100000; ++s) res.add(stick_breaking_faces(d, 1.0, N, s).residual);
        o.detail << " residual[" << N << "]=" << res.mean();
        o.require(std::abs(res.mean() - std::ldexp(1.0, -N)) <= 3.0 * res.std_error(),
                  "residual mean 2^-" + std::to_string(N));
    }
}

void c7(Outcome& o) {
    RngStream rng(71, StreamTag::Test, 0);
    int bad = 0;
    for (int rep = 0; rep < 10000; ++rep) {
        const int F = 1 + static_cast<int>(rng.uniform() * 64);
        const auto p = oracle::fuzz_plc(rng, F, rep % 3 == 0 ? 1e-9 : 0.01, rep % 2 ? 1.0 : 50.0);
        for (double r : {0.25, 0.5, 0.75}) {
            try {
                verify_sandwich(p, r);
            } catch (const ConsistencyError&) {
                ++bad;
            }
        }
    }
    o.detail << " instances=10000 violations=" << bad;
    o.require(bad == 0, "sandwich on every instance");
}

void c8(Outcome& o) {
    const LevyModel b = load_model("brownian");
    const EstimateWithCI ib = estimate_I_beta(b, 2.0);
    o.detail << " I_2=" << ib.value << "(" << to_string(ib.trend) << ")";
    o.require(ib.trend == Trend::Diverging, "I_2 Diverging");
    McOptions opt;
    opt.depth = 40;
    opt.mc = 2000;
    const SbComparison hi = sb_sum_vs_integral(b, 0.5, 2.0, 64, opt);
    const SbComparison lo = sb_sum_vs_integral(b, 0.25, 4.0 / 3.0, 64, opt);
    o.detail << " sb(0.5,2)=" << to_string(hi.sum_side.trend) << "/" << to_string(hi.integral_side.trend)
             << " sb(0.25,4/3)=" << to_string(lo.sum_side.trend) << "/" << to_string(lo.integral_side.trend);
    o.require(hi.sum_side.trend == Trend::Diverging && hi.integral_side.trend == Trend::Diverging, "sb r=0.5 Diverging");
    o.require(lo.sum_side.trend == Trend::Converging && lo.integral_side.trend == Trend::Converging,
              "sb r=0.25 Converging");
    const EstimateWithCI ls = limsup_estimate(b, HSpec::lil(), 1000, 40, 0x5EED);
    o.detail << " limsup=" << ls.value;
    o.require(std::abs(ls.value - std::numbers::sqrt2) <= 0.1 * std::numbers::sqrt2, "limsup within 10% of sqrt 2");
}

void c9(Outcome& o) {
    o.require(2.0 * phi_bar(4.0) <= 2.0 * phi_bar(2.0), "closed form 2 Phibar(4) <= 2 Phibar(2)");
    const MaximalReport b = maximal_inequality_check(load_model("brownian"), 1.0, 0.01, 1000000, 91);
    o.detail << " brownian lhs=" << b.lhs << " rhs=" << b.rhs;
    o.require(b.precondition_ok && b.pass, "Brownian MC passes");
    const MaximalReport s = maximal_inequality_check(load_model("stable-1.5"), 1.0, 0.001, 1000000, 92);
    o.detail << " stable lhs=" << s.lhs << "+-" << s.lhs_se << " rhs=" << s.rhs << "+-" << s.rhs_se
             << " half_prob=" << s.half_prob;
    o.require(s.precondition_ok, "stable half-probability precondition");
    o.require(s.pass, "stable lhs <= rhs + 3 se");
}

void c10(Outcome& o) {
    const LevyModel m = load_model("hstar-a");
    const HstarFunction h = construct_hstar(m);
    o.detail << " breakpoints=" << h.breakpoints.size() << " witness=" << (h.witness.empty() ? 0.0 : h.witness.back())
             << " budget=" << h.budget;
    o.require(h.breakpoints.size() >= 64, ">= 64 breakpoints");
    bool doubling = true;
    for (std::size_t n = 1; n < h.u.size(); ++n) {
        const double prev = sigma_bar_sq(m, h.u[n - 1]) / (h.u[n - 1] * h.u[n - 1]);
        const double cur = sigma_bar_sq(m, h.u[n]) / (h.u[n] * h.u[n]);
        doubling = doubling && cur > 2.0 * prev;
    }
    o.require(doubling, "doubling condition");
    o.require(!h.witness.empty() && h.witness.back() <= h.budget, "summability witness");
    bool failed = false;
    try {
        construct_hstar(load_model("stable-1.5"));
    } catch (const HstarConstructionError&) {
        failed = true;
    }
    o.require(failed, "construction fails on TruncatedStable");
}

} // namespace

int main() {
    criterion(1, 1.0, c1);
    criterion(2, 10.0, c2);
    criterion(3, 0.0, c3);
    criterion(4, 0.0, c4);
    criterion(5, 60.0, c5);
    criterion(6, 60.0, c6);
    criterion(7, 0.0, c7);
    criterion(8, 300.0, c8);
    criterion(9, 0.0, c9);
    criterion(10, 0.0, c10);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
