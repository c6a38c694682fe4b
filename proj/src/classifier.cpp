#include "levy/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace levy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-12;
constexpr double kBig = 1e6;
constexpr double kSmall = 1e-6;
constexpr int kProbeDepth = 60;
constexpr int kHstarDepth = 480;
constexpr int kHstarCount = 64;

bool near(double a, double b) { return std::abs(a - b) <= kTieTol * std::max(1.0, std::abs(b)); }

HolderVerdict verdict(Answer a, std::string clause, std::string note = {}) {
    HolderVerdict v;
    v.answer = a;
    v.clause = std::move(clause);
    v.note = std::move(note);
    return v;
}

IntegralVerdict lambda2_as_verdict(const Lambda2Result& l) {
    IntegralVerdict v;
    v.status = l.status;
    v.value = l.value;
    v.note = l.note;
    return v;
}

// Grows without bound on a sequence sampled along a geometric grid: value at the
// end more than doubles from the midpoint and rises over the last ten points.
bool grows(const std::vector<double>& q) {
    const std::size_t n = q.size();
    if (n < 12) return false;
    if (!(q.back() > 2.0 * q[n / 2])) return false;
    for (std::size_t i = n - 10; i < n; ++i)
        if (!(q[i] >= q[i - 1])) return false;
    return true;
}

// Tail masses etc. on the grid u = 2^{-k}.
struct GridPoint {
    double u, nb, D, E;
};

GridPoint grid_point(const LevyModel& model, int k) {
    const double u = std::ldexp(1.0, -k);
    const double L = k * std::numbers::ln2;
    GridPoint g;
    g.u = u;
    g.nb = log_nu_bar_at(model, L).value_at(L);
    g.D = sigma_bar_sq_at(model, L) / (u * u);
    const double vp = varpi(model, u);
    g.E = std::abs(model.drift() - vp) / u;
    return g;
}

} // namespace

const char* to_string(Answer a) {
    switch (a) {
        case Answer::Yes: return "Yes";
        case Answer::No: return "No";
        case Answer::Inconclusive: return "Inconclusive";
    }
    return "?";
}

double critical_exponent(const LevyModel& model) {
    if (variation_class(model) != Variation::InfiniteVariation)
        throw ValidationError("critical_exponent: model has finite variation");
    if (model.sigma2() > 0.0) return 0.5;
    return 1.0 / bg_index(model).value;
}

HolderVerdict classify_r(const LevyModel& model, double r) {
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("r must lie in (0,1)");
    if (variation_class(model) != Variation::InfiniteVariation)
        throw ValidationError("classify_r: model has finite variation (its minorant is Lipschitz)");

    if (model.sigma2() > 0.0)
        return verdict(r < 0.5 ? Answer::Yes : Answer::No, "i", "Brownian component");

    const BgIndex bg = bg_index(model);
    const double beta = bg.value;
    if (!bg.determined)
        return verdict(Answer::Inconclusive, "ii-beta=?", "bg index undetermined: " + bg.provenance);
    if (near(beta, 1.0)) return verdict(Answer::Yes, "ii-beta=1");
    if (beta < 1.0)
        return verdict(Answer::Inconclusive, "ii-beta=?",
                       "infinite variation with bg index below 1 is inconsistent");

    if (beta < 2.0 && !near(beta, 2.0)) {
        const IntegralVerdict jb = j_p(model, beta);
        const std::string clause = jb.infinite() ? "ii-J_beta=inf"
                                   : jb.finite() ? "ii-J_beta<inf"
                                                 : "ii-J_beta=?";
        HolderVerdict v;
        v.clause = clause;
        v.inputs.emplace_back("J_beta", jb);
        const double rc = 1.0 / beta;
        if (near(r, rc)) {
            v.answer = jb.finite() ? Answer::Yes : jb.infinite() ? Answer::No : Answer::Inconclusive;
            v.note = "tie r = 1/beta decided by J_beta";
        } else {
            v.answer = r < rc ? Answer::Yes : Answer::No;
        }
        return v;
    }

    // beta = 2.
    const Lambda2Result l2 = lambda2(model);
    const IntegralVerdict lwt = log_weighted_tail(model);
    HolderVerdict v;
    v.inputs.emplace_back("lambda2", lambda2_as_verdict(l2));
    v.inputs.emplace_back("log_weighted_tail", lwt);
    const bool l2_known = l2.status == IntegralStatus::Finite;
    Answer at_half = Answer::Inconclusive;
    if (l2_known && std::isinf(l2.value)) {
        v.clause = "iii-a";
        at_half = Answer::No;
    } else if (lwt.finite()) {
        v.clause = "iii-d";
        at_half = Answer::Yes;
        v.note = "log-weighted tail finite, so I_2 < inf";
    } else if (l2_known && l2.value > 0.0) {
        v.clause = "iii-b";
        v.note = "lambda2 in (0,inf): k_{1/2} < inf = K_{1/2}";
    } else if (l2_known) {
        v.clause = "iii-c";
        v.note = "lambda2 = 0 without a certificate for I_2 < inf";
    } else {
        v.clause = "iii-?";
        v.note = "lambda2 undetermined: " + l2.note;
    }
    if (near(r, 0.5)) v.answer = at_half;
    else v.answer = r < 0.5 ? Answer::Yes : Answer::No;
    return v;
}

RatioCondition ratio_condition(const LevyModel& model) {
    std::vector<double> q;
    for (int k = 1; k <= kProbeDepth; ++k) {
        const GridPoint g = grid_point(model, k);
        const double num = g.D + g.E;
        q.push_back(g.nb > 0.0 ? num / g.nb : (num > 0.0 ? kInf : 0.0));
    }
    RatioCondition rc;
    rc.last = q.back();
    rc.max = *std::max_element(q.begin(), q.end());
    rc.bounded = rc.last <= kBig && !grows(q);
    return rc;
}

HolderVerdict classify_kh(const LevyModel& model, const HSpec& h) {
    if (is_compound_poisson_with_drift(model))
        throw ValidationError("classify_kh: model is compound Poisson with drift");
    h.require_monotone();
    if (h.kind() == HSpec::Kind::Monomial &&
        monomial_ratio_limit(h, HSpec::monomial(0.0, 0.0, 0.0)) != Asymptotic::Zero)
        throw ValidationError("classify_kh: h(0+) must be 0");

    if (model.sigma2() > 0.0) {
        const HSpec ref = HSpec::lil();
        if (h.kind() == HSpec::Kind::Monomial) {
            const Asymptotic lim = monomial_ratio_limit(h, ref);
            return verdict(lim == Asymptotic::Zero ? Answer::No : Answer::Yes, "kh-i",
                           lim == Asymptotic::Zero ? "liminf h/sqrt(t loglog 1/t) = 0"
                                                   : "liminf h/sqrt(t loglog 1/t) > 0");
        }
        std::vector<double> q;
        for (int k = 20; k <= kProbeDepth; ++k) {
            const double L = k * std::numbers::ln2;
            q.push_back(std::exp(h.log_at(L) - ref.log_at(L)));
        }
        const double mn = *std::min_element(q.begin(), q.end());
        if (mn < kSmall) return verdict(Answer::No, "kh-i", "grid liminf below 1e-6");
        if (q.back() < 0.9 * q[q.size() / 2])
            return verdict(Answer::Inconclusive, "kh-i", "grid ratio still decreasing");
        return verdict(Answer::Yes, "kh-i", "grid liminf positive");
    }

    const RatioCondition rc = ratio_condition(model);
    if (rc.bounded) {
        const bool mono = h.kind() == HSpec::Kind::Monomial;
        const Integrand f{[&](double L) -> LogScaled {
            if (mono) {
                const double Lh = h.a() * L + h.log_correction(L);
                if (Lh > 0.0) {
                    const LogScaled s = log_nu_bar_at(model, Lh);
                    if (s.is_zero()) return s;
                    return {s.coef * h.a() - 1.0, s.rest + s.coef * h.log_correction(L)};
                }
                const LogScaled s = log_nu_bar_at(model, 0.0);
                return s.is_zero() ? s : LogScaled{-1.0, s.log_at(0.0)};
            }
            const double Lh = std::max(0.0, -h.log_at(L));
            const LogScaled s = log_nu_bar_at(model, Lh);
            return s.is_zero() ? s : LogScaled{-1.0, s.log_at(Lh)};
        }};
        const IntegralVerdict iv = classify_improper(f, std::exp(-std::numbers::e));
        HolderVerdict v = verdict(iv.finite() ? Answer::Yes : iv.infinite() ? Answer::No
                                                                             : Answer::Inconclusive,
                                  "kh-ii", "ratio condition holds; integral of nu_bar(h(t))");
        v.inputs.emplace_back("nu_bar_h", iv);
        return v;
    }

    HstarFunction hs;
    try {
        hs = construct_hstar(model);
    } catch (const HstarConstructionError& e) {
        return verdict(Answer::Inconclusive, "kh-iii", std::string("h* unavailable: ") + e.what());
    }
    std::vector<double> q;
    for (std::size_t n = 0; n < hs.breakpoints.size(); ++n) {
        const double hv = h(hs.breakpoints[n]);
        if (std::isfinite(hv) && hv > 0.0) q.push_back(hs.levels[n] / hv);
    }
    if (q.size() < 12) return verdict(Answer::Inconclusive, "kh-iii", "too few comparable breakpoints");
    const std::vector<double> tailq(q.begin() + q.size() / 2, q.end());
    const double mx = *std::max_element(tailq.begin(), tailq.end());
    const double mn = *std::min_element(tailq.begin(), tailq.end());
    if (mn > kBig || grows(q)) return verdict(Answer::No, "kh-iii", "liminf h*/h = inf");
    if (mx <= kBig && !(q.back() > 2.0 * q[q.size() / 2]))
        return verdict(Answer::Yes, "kh-iii", "limsup h*/h < inf");
    return verdict(Answer::Inconclusive, "kh-iii", "h*/h neither bounded nor divergent on the grid");
}

double HstarFunction::operator()(double t) const {
    if (breakpoints.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (t > breakpoints.front()) return levels.front();
    // levels[n] on (t_{n+1}, t_n]
    for (std::size_t n = 0; n + 1 < breakpoints.size(); ++n)
        if (t > breakpoints[n + 1]) return levels[n];
    return levels.back();
}

HstarFunction construct_hstar(const LevyModel& model) {
    if (model.sigma2() > 0.0) throw HstarConstructionError("construct_hstar: requires sigma2 = 0");

    std::vector<GridPoint> grid;
    double wk_min = kInf, a_min = kInf, b_min = kInf;
    for (int k = 1; k <= kHstarDepth; ++k) {
        const GridPoint g = grid_point(model, k);
        grid.push_back(g);
        const double tot = g.nb + g.D + g.E;
        if (tot > 0.0) wk_min = std::min(wk_min, g.nb / tot);
        if (g.D > 0.0) a_min = std::min(a_min, (g.nb + g.E) / g.D);
        if (g.E > 0.0) b_min = std::min(b_min, (g.nb + g.D) / g.E);
    }
    std::ostringstream diag;
    diag << "grid liminf nu_bar/(nu_bar + D + E) = " << wk_min << ", (nu_bar+E)/D = " << a_min
         << ", (nu_bar+D)/E = " << b_min;
    if (!(wk_min < kSmall))
        throw HstarConstructionError("construct_hstar: precondition fails on the grid (" + diag.str() +
                                     ")");

    HstarFunction hs;
    const bool case_a = a_min < kSmall;
    if (!case_a && !(b_min < kSmall))
        throw HstarConstructionError("construct_hstar: neither construction applies (" + diag.str() + ")");
    hs.case_tag = case_a ? 'a' : 'b';

    int n = 2;
    double prev_scale = 0.0, partial = 0.0;
    for (const GridPoint& g : grid) {
        if (static_cast<int>(hs.breakpoints.size()) == kHstarCount) break;
        const double scale = case_a ? g.D : g.E;
        const double other = case_a ? g.nb + g.E : g.nb + g.D;
        if (!(scale > 0.0)) continue;
        if (!hs.breakpoints.empty() && !(scale > 2.0 * prev_scale)) continue;
        const double logn = std::log(static_cast<double>(n));
        const double term = logn * other / scale;
        if (!(term <= std::ldexp(1.0, -n))) continue;
        const double t = case_a ? logn / scale : 1.0 / scale;
        if (!hs.breakpoints.empty() && !(t < hs.breakpoints.back())) continue;
        partial += term;
        hs.breakpoints.push_back(t);
        hs.levels.push_back(case_a ? g.u * logn : g.u);
        hs.u.push_back(g.u);
        hs.witness.push_back(partial);
        prev_scale = scale;
        ++n;
    }
    if (static_cast<int>(hs.breakpoints.size()) < kHstarCount) {
        std::ostringstream os;
        os << "construct_hstar: only " << hs.breakpoints.size() << " admissible u_n within depth "
           << kHstarDepth << " (" << diag.str() << ")";
        throw HstarConstructionError(os.str());
    }
    // Non-decreasing regularization: running minimum over larger t.
    for (std::size_t i = 1; i < hs.levels.size(); ++i)
        hs.levels[i] = std::min(hs.levels[i], hs.levels[i - 1]);
    return hs;
}

} // namespace levy
