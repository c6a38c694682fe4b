#include "levy/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "levy/quadrature.hpp"

namespace levy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;
constexpr double kUnitRatio = 1.0 - 1e-9;
constexpr int kLogShells = 256;
constexpr double kBlockRatioInfinite = 0.95;

double sample(const Integrand& f, double L) {
    const LogScaled s = f.log_density(L);
    const double g = s.log_at(L);
    if (std::isnan(g) || g == kInf) throw EvaluationError("non-finite integrand sample", L);
    return g;
}

// log \int_a^b exp(g(L)) dL; with log_var the integral is taken in v = log L.
double log_shell(const Integrand& f, double a, double b, bool log_var) {
    double m = -kInf;
    for (int i = 0; i <= 8; ++i) m = std::max(m, sample(f, a + (b - a) * i / 8.0));
    if (m == -kInf) m = 0.0;
    double I = 0.0;
    if (log_var) {
        I = quad::integrate(
            [&](double v) {
                const double L = std::exp(v);
                return std::exp(sample(f, L) + v - m);
            },
            std::log(a), std::log(b));
    } else {
        I = quad::integrate([&](double L) { return std::exp(sample(f, L) - m); }, a, b);
    }
    if (!(I > 0.0)) return -kInf;
    return m + std::log(I);
}

double ratio(double lm_prev, double lm_next) {
    if (lm_next == -kInf) return 0.0;
    if (lm_prev == -kInf) return kInf;
    return std::exp(lm_next - lm_prev);
}

enum class Trend { Decaying, Persistent, Unclear };

struct ShellDecision {
    Trend trend = Trend::Unclear;
    double worst_ratio = 0.0;
};

ShellDecision judge(const std::vector<double>& lm, int required, double threshold) {
    ShellDecision d;
    const int n = static_cast<int>(lm.size());
    if (n < required + 1) return d;
    bool decaying = true, persistent = true;
    for (int k = n - required; k < n; ++k) {
        const double q = ratio(lm[k - 1], lm[k]);
        d.worst_ratio = std::max(d.worst_ratio, q);
        decaying = decaying && q <= threshold;
        persistent = persistent && q >= kUnitRatio;
    }
    if (decaying) d.trend = Trend::Decaying;
    else if (persistent) d.trend = Trend::Persistent;
    return d;
}

std::vector<Shell> to_shells(const std::vector<double>& lm) {
    std::vector<Shell> out;
    out.reserve(lm.size());
    for (std::size_t k = 0; k < lm.size(); ++k)
        out.push_back({static_cast<int>(k), std::exp(lm[k])});
    return out;
}

IntegralVerdict finite_from(const std::vector<double>& lm, double worst_ratio, const char* stage) {
    double sum = 0.0;
    for (double v : lm) sum += std::exp(v);
    const double last = std::exp(lm.back());
    const double tail = worst_ratio > 0.0 ? last * worst_ratio / (1.0 - worst_ratio) : 0.0;
    IntegralVerdict v = IntegralVerdict::finite_value(sum + tail, stage);
    v.tail_bound = tail;
    v.shells = to_shells(lm);
    return v;
}

void check_monotone(const Integrand& f, const std::vector<double>& edges) {
    double prev = -kInf;
    for (double L : edges) {
        const double lf = sample(f, L) + L;  // log f(e^{-L})
        if (lf < prev - 1e-9 * (1.0 + std::abs(prev)))
            throw ValidationError("integrand tagged non-increasing is not monotone near L=" +
                                  std::to_string(L));
        prev = std::max(prev, lf);
    }
}

} // namespace

const char* to_string(IntegralStatus s) {
    switch (s) {
        case IntegralStatus::Finite: return "Finite";
        case IntegralStatus::Infinite: return "Infinite";
        case IntegralStatus::Undetermined: return "Undetermined";
    }
    return "?";
}

IntegralVerdict IntegralVerdict::finite_value(double v, std::string note) {
    IntegralVerdict r;
    r.status = IntegralStatus::Finite;
    r.value = v;
    r.note = std::move(note);
    return r;
}

IntegralVerdict IntegralVerdict::divergent(std::string note) {
    IntegralVerdict r;
    r.status = IntegralStatus::Infinite;
    r.note = std::move(note);
    return r;
}

void QuadratureConfig::validate() const {
    if (max_depth < 8) throw ValidationError("QuadratureConfig: max_depth must be >= 8");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw ValidationError("QuadratureConfig: tolerances must be > 0");
    if (!(shell_ratio_threshold > 0.0 && shell_ratio_threshold < 1.0))
        throw ValidationError("QuadratureConfig: shell_ratio_threshold must lie in (0,1)");
    if (shells_required < 1 || shells_required >= max_depth)
        throw ValidationError("QuadratureConfig: shells_required must lie in [1, max_depth)");
}

Integrand from_log_f(std::function<double(double)> log_f, Monotone tag) {
    return Integrand{[log_f = std::move(log_f)](double L) -> LogScaled {
                         const double v = log_f(L);
                         if (v == -kInf) return LogScaled::zero();
                         return {-1.0, v};
                     },
                     tag};
}

Integrand from_log_f(double coef, std::function<double(double)> rest, Monotone tag) {
    return Integrand{[coef, rest = std::move(rest)](double L) -> LogScaled {
                         const double v = rest(L);
                         if (v == -kInf) return LogScaled::zero();
                         return {coef - 1.0, v};
                     },
                     tag};
}

IntegralVerdict classify_improper(const Integrand& f, double b, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(b > 0.0) || !std::isfinite(b))
        throw DomainError("classify_improper: upper limit b must be positive and finite");
    const double Lb = -std::log(b);

    // Stage 1: shells (b 2^{-k-1}, b 2^{-k}].
    std::vector<double> lm;
    std::vector<double> edges;
    lm.reserve(cfg.max_depth);
    for (int k = 0; k < cfg.max_depth; ++k) {
        const double a = Lb + k * kLn2;
        lm.push_back(log_shell(f, a, a + kLn2, false));
        edges.push_back(a);
    }
    if (f.tag == Monotone::NonIncreasing) check_monotone(f, edges);

    const ShellDecision d1 = judge(lm, cfg.shells_required, cfg.shell_ratio_threshold);
    if (d1.trend == Trend::Decaying) return finite_from(lm, d1.worst_ratio, "dyadic shells in t");
    if (d1.trend == Trend::Persistent) {
        IntegralVerdict v = IntegralVerdict::divergent("dyadic shells in t");
        v.shells = to_shells(lm);
        return v;
    }

    // Stage 2: shells [Lb + 2^j - 1, Lb + 2^{j+1} - 1] in L.
    std::vector<double> lm2;
    lm2.reserve(kLogShells);
    lm2.push_back(log_shell(f, Lb, Lb + 1.0, false));
    for (int j = 1; j < kLogShells; ++j) {
        const double a = Lb + (std::ldexp(1.0, j) - 1.0);
        const double c = Lb + (std::ldexp(1.0, j + 1) - 1.0);
        lm2.push_back(log_shell(f, a, c, true));
    }
    const ShellDecision d2 = judge(lm2, cfg.shells_required, cfg.shell_ratio_threshold);
    if (d2.trend == Trend::Decaying)
        return finite_from(lm2, d2.worst_ratio, "dyadic shells in log(1/t)");
    if (d2.trend == Trend::Persistent) {
        IntegralVerdict v = IntegralVerdict::divergent("dyadic shells in log(1/t)");
        v.shells = to_shells(lm2);
        return v;
    }

    // Stage 3: condensation, blocks of stage-2 shells with indices in [2^m, 2^{m+1}).
    std::vector<double> block;
    for (int m = 0; (1 << (m + 1)) <= kLogShells; ++m) {
        double mx = -kInf;
        for (int j = 1 << m; j < (1 << (m + 1)); ++j) mx = std::max(mx, lm2[j]);
        double s = 0.0;
        if (mx > -kInf)
            for (int j = 1 << m; j < (1 << (m + 1)); ++j) s += std::exp(lm2[j] - mx);
        block.push_back(mx > -kInf ? mx + std::log(s) : -kInf);
    }
    // Divergent condensed blocks approach ratio 1 from below.
    const std::size_t nb = block.size();
    const double q1 = ratio(block[nb - 4], block[nb - 3]);
    const double q2 = ratio(block[nb - 3], block[nb - 2]);
    const double q3 = ratio(block[nb - 2], block[nb - 1]);
    const bool persistent = q2 >= kBlockRatioInfinite && q3 >= kBlockRatioInfinite &&
                            q1 <= q2 * (1.0 + 1e-9) && q2 <= q3 * (1.0 + 1e-9);
    if (persistent) {
        IntegralVerdict v = IntegralVerdict::divergent("condensed log(1/t) shells");
        v.shells = to_shells(lm2);
        return v;
    }

    IntegralVerdict v;
    std::ostringstream os;
    os << "shell ratios inconclusive (last t-shell ratio " << d1.worst_ratio
       << ", last log-shell ratio " << d2.worst_ratio << ")";
    v.note = os.str();
    v.shells = to_shells(lm2);
    return v;
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

JpRoutes j_p_routes(const LevyModel& model, double p, const QuadratureConfig& cfg) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("j_p: p must be > 0");

    double atoms = 0.0;
    for (const Atom& a : small_atoms(model)) atoms += a.mass * std::pow(a.abs_size, p);

    // \int_0^1 r^p rho(r) dr in y = log(1/r): density e^{-p y} (r rho)(e^{-y}).
    const Integrand direct{[&](double y) -> LogScaled {
        const LogScaled r = log_radial_density_at(model, y);
        if (r.is_zero()) return r;
        return {r.coef - p, r.rest};
    }};
    // \int_0^1 nu_bar(t^{1/p}) dt in L = log(1/t).
    const Integrand tail{[&](double L) -> LogScaled {
                             const LogScaled s = log_nu_bar_at(model, L / p);
                             if (s.is_zero()) return s;
                             return {s.coef / p - 1.0, s.rest};
                         },
                         Monotone::NonIncreasing};

    JpRoutes r{classify_improper(direct, 1.0, cfg), classify_improper(tail, 1.0, cfg)};
    if (r.moment.finite()) r.moment.value += atoms;
    if (r.tail.finite()) r.tail.value = std::max(0.0, r.tail.value - nu_bar_at_one(model));
    return r;
}

IntegralVerdict j_p(const LevyModel& model, double p, const QuadratureConfig& cfg) {
    const JpRoutes routes = j_p_routes(model, p, cfg);
    const IntegralVerdict& vd = routes.moment;
    const IntegralVerdict& vt = routes.tail;
    const std::optional<double> closed = closed_form_j_p(model, p);

    auto closed_verdict = [&](std::string note) {
        IntegralVerdict v = std::isinf(*closed) ? IntegralVerdict::divergent(std::move(note))
                                                : IntegralVerdict::finite_value(*closed, std::move(note));
        v.shells = vd.shells;
        return v;
    };

    std::ostringstream os;
    os.precision(12);
    IntegralVerdict out;
    if (vd.finite() && vt.finite()) {
        const double a = vd.value;
        const double b = vt.value;
        const double tol = std::max(cfg.abs_tol, 1e-6 * std::max(std::abs(a), std::abs(b))) +
                           vd.tail_bound + vt.tail_bound;
        if (std::abs(a - b) > tol) {
            os << "j_p: moment route " << a << " and tail route " << b << " disagree at p=" << p;
            throw ConsistencyError(os.str());
        }
        os << "moment route " << a << ", tail route " << b;
        out = IntegralVerdict::finite_value(a, os.str());
        out.tail_bound = std::max(vd.tail_bound, vt.tail_bound);
        out.shells = vd.shells;
    } else if (vd.infinite() && vt.infinite()) {
        out = IntegralVerdict::divergent("both routes divergent");
        out.shells = vd.shells;
    } else if ((vd.finite() && vt.infinite()) || (vd.infinite() && vt.finite())) {
        os << "j_p: moment route " << to_string(vd.status) << " but tail route "
           << to_string(vt.status) << " at p=" << p;
        throw ConsistencyError(os.str());
    } else {
        if (closed) return closed_verdict("closed form (quadrature undetermined)");
        out.note = "moment route " + std::string(to_string(vd.status)) + ", tail route " +
                   to_string(vt.status);
        out.shells = vd.shells;
        return out;
    }

    if (closed) {
        if (std::isinf(*closed) != out.infinite()) {
            os.str("");
            os << "j_p: closed form and quadrature disagree on finiteness at p=" << p;
            throw ConsistencyError(os.str());
        }
        if (out.finite()) {
            const double tol = std::max(cfg.abs_tol, 1e-6 * std::abs(*closed)) + out.tail_bound;
            if (std::abs(out.value - *closed) > tol) {
                os.str("");
                os << "j_p: quadrature " << out.value << " vs closed form " << *closed;
                throw ConsistencyError(os.str());
            }
            out.value = *closed;
        }
    }
    return out;
}

IntegralVerdict log_weighted_tail(const LevyModel& model, const QuadratureConfig& cfg) {
    const Integrand f{[&](double L) -> LogScaled {
                          const LogScaled s = log_nu_bar_at(model, L / 2.0);
                          if (s.is_zero() || L <= 0.0) return LogScaled::zero();
                          return {s.coef / 2.0 - 1.0, s.rest + std::log(L)};
                      },
                      Monotone::NonIncreasing};
    return classify_improper(f, 1.0, cfg);
}

IntegralVerdict big_lambda(const LevyModel& model, double x, const QuadratureConfig& cfg) {
    const double edge = std::exp(-std::numbers::e);
    if (!(x > 0.0 && x <= edge * (1.0 + 1e-15)))
        throw DomainError("big_lambda: x must lie in (0, e^{-e}]");
    const Integrand f{[&](double L) -> LogScaled {
                          const LogScaled s = log_nu_bar_at(model, L / 2.0);
                          if (s.is_zero()) return s;
                          return {s.coef / 2.0 - 1.0, s.rest + std::log(std::log(L))};
                      },
                      Monotone::NonIncreasing};
    return classify_improper(f, std::min(x, edge), cfg);
}

Lambda2Result lambda2(const LevyModel& model, double tol) {
    if (!(tol > 0.0)) throw DomainError("lambda2: tol must be > 0");
    if (model.sigma2() != 0.0) throw DomainError("lambda2: requires sigma2 = 0");

    Lambda2Result res;
    if (big_lambda(model, std::exp(-std::numbers::e)).finite()) {
        res.status = IntegralStatus::Finite;
        res.value = 0.0;
        res.lo = res.hi = 0.0;
        res.note = "Lambda(e^{-e}) finite";
        return res;
    }

    QuadratureConfig cfg;
    cfg.shell_ratio_threshold = 0.97;
    // The part over u in (e^{-1}, 1] is a proper integral; classify u <= e^{-1}.
    auto verdict = [&](double lambda) {
        const double l2 = lambda * lambda;
        const Integrand f{[&, l2](double L) -> LogScaled {
            const double s2 = sigma_bar_sq_at(model, L);
            if (!(s2 > 0.0)) return LogScaled::zero();
            return {0.0, -l2 / (2.0 * s2)};
        }};
        return classify_improper(f, std::exp(-1.0), cfg).status;
    };

    const IntegralStatus at_lo = verdict(tol);
    if (at_lo == IntegralStatus::Finite) {
        res.status = IntegralStatus::Finite;
        res.value = 0.0;
        res.lo = 0.0;
        res.hi = tol;
        res.note = "finite at lambda = tol";
        return res;
    }
    // lambda = 0 always gives \int du/u = inf.
    double lo = at_lo == IntegralStatus::Infinite ? tol : 0.0;
    double hi = 1.0 / tol;
    const IntegralStatus at_hi = verdict(hi);
    if (at_hi == IntegralStatus::Infinite) {
        res.status = IntegralStatus::Finite;
        res.value = kInf;
        res.lo = hi;
        res.hi = kInf;
        res.note = "infinite at lambda = 1/tol";
        return res;
    }
    if (at_hi == IntegralStatus::Undetermined) {
        res.lo = lo;
        res.note = "undetermined at lambda = 1/tol";
        return res;
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const IntegralStatus s = verdict(mid);
        if (s == IntegralStatus::Finite) { hi = mid; continue; }
        if (s == IntegralStatus::Infinite) { lo = mid; continue; }
        // Scan the bracket for certified points on either side of the undetermined band.
        constexpr int kScan = 8;
        double new_lo = lo, new_hi = hi;
        bool any = false;
        for (int i = 1; i <= kScan; ++i) {
            const double x = lo + (hi - lo) * i / (kScan + 1.0);
            const IntegralStatus si = verdict(x);
            if (si == IntegralStatus::Infinite) {
                if (x > new_hi)
                    throw ConsistencyError("lambda2: verdict not monotone in lambda");
                new_lo = std::max(new_lo, x);
                any = true;
            } else if (si == IntegralStatus::Finite) {
                if (x < new_lo)
                    throw ConsistencyError("lambda2: verdict not monotone in lambda");
                new_hi = std::min(new_hi, x);
                any = true;
            }
        }
        lo = new_lo;
        hi = new_hi;
        if (!any && hi - lo > tol) {
            res.lo = lo;
            res.hi = hi;
            res.note = "undetermined band wider than tol";
            return res;
        }
        if (!any) break;
    }
    res.status = IntegralStatus::Finite;
    res.lo = lo;
    res.hi = hi;
    res.value = 0.5 * (lo + hi);
    std::ostringstream os;
    os << "bracket [" << lo << ", " << hi << "]";
    res.note = os.str();
    return res;
}

} // namespace levy
