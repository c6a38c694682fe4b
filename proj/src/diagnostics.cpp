#include "levy/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "levy/errors.hpp"
#include "levy/pathsim.hpp"
#include "levy/rng.hpp"

namespace levy {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr std::uint64_t kBlock = 4096;

enum Salt : std::uint64_t { SaltIBeta = 1, SaltKhintchine = 2, SaltLimsup = 3, SaltSbSum = 4, SaltSbInt = 5, SaltMaximal = 6 };

std::uint64_t node_seed(std::uint64_t seed, Salt salt, std::uint64_t node) {
    return mix64(seed ^ mix64((static_cast<std::uint64_t>(salt) << 32) + node));
}

// Moments of k outputs per draw; draw i uses stream (seed, tag, i).
std::vector<Moments> multi_moments(std::uint64_t n, std::uint64_t seed, StreamTag tag, std::size_t k,
                                   const std::function<void(RngStream&, double*)>& draw) {
    const std::size_t n_blocks = static_cast<std::size_t>((n + kBlock - 1) / kBlock);
    std::vector<std::vector<Moments>> parts(n_blocks, std::vector<Moments>(k));
    parallel_for_blocks(n_blocks, [&](std::size_t b) {
        std::vector<double> out(k);
        const std::uint64_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i) {
            RngStream rng(seed, tag, i);
            draw(rng, out.data());
            for (std::size_t c = 0; c < k; ++c) parts[b][c].add(out[c]);
        }
    });
    std::vector<Moments> total(k);
    for (const auto& p : parts)
        for (std::size_t c = 0; c < k; ++c) total[c].merge(p[c]);
    return total;
}

void require_samplable(const LevyModel& model, const char* who) {
    if (!is_samplable(model))
        throw CapabilityError(std::string(who) + ": " + family_name(model.measure()) +
                              " has no exact sampler; use the integral criteria instead");
}

void require_options(const McOptions& opt) {
    if (opt.depth < 4) throw ValidationError("dyadic depth J must be >= 4");
    if (opt.mc < 2) throw ValidationError("mc must be >= 2");
}

std::vector<int> nested_depths(int J) { return {J / 2, (3 * J) / 4, J}; }

// Dyadic node sum sum_{j<=J} ln2 * E[g(X_t, t)] at t = 2^-j with nested partial sums.
EstimateWithCI dyadic_estimate(const LevyModel& model, const McOptions& opt, Salt salt,
                               const std::function<double(double x, double t)>& g) {
    std::vector<Moments> nodes;
    for (int j = 0; j <= opt.depth; ++j) {
        const double t = std::ldexp(1.0, -j);
        nodes.push_back(parallel_moments(opt.mc, node_seed(opt.seed, salt, j), StreamTag::Diagnostics,
                                         [&](std::uint64_t, RngStream& rng) {
                                             return g(marginal_sample(model, t, rng), t);
                                         }));
    }
    EstimateWithCI e;
    e.size = opt.depth;
    e.epsilon = std::ldexp(1.0, -opt.depth);
    e.samples = opt.mc * static_cast<std::uint64_t>(opt.depth + 1);
    std::vector<double> xs, ys;
    for (int Jp : nested_depths(opt.depth)) {
        double s = 0.0, v = 0.0;
        for (int j = 0; j <= Jp; ++j) {
            s += kLn2 * nodes[j].mean();
            v += kLn2 * kLn2 * nodes[j].std_error() * nodes[j].std_error();
        }
        e.levels.push_back({std::ldexp(1.0, -Jp), s, std::sqrt(v)});
        xs.push_back(Jp * kLn2);
        ys.push_back(s);
    }
    e.value = e.levels.back().estimate;
    e.std_error = e.levels.back().std_error;
    e.trend = sum_trend(xs, ys);
    return e;
}

IntegralVerdict verdict_from(const EstimateWithCI& e, const std::vector<double>& node_mass) {
    IntegralVerdict v;
    for (std::size_t j = 0; j < node_mass.size(); ++j) v.shells.push_back({static_cast<int>(j), node_mass[j]});
    v.note = "Monte Carlo shell trend " + to_string(e.trend);
    if (e.trend == Trend::Converging) {
        v.status = IntegralStatus::Finite;
        v.value = e.value;
        v.tail_bound = 3.0 * e.std_error;
    } else if (e.trend == Trend::Diverging) {
        v.status = IntegralStatus::Infinite;
    }
    return v;
}

} // namespace

std::string to_string(Trend t) {
    switch (t) {
        case Trend::Converging: return "Converging";
        case Trend::Diverging: return "Diverging";
        case Trend::Flat: return "Flat";
    }
    return "?";
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("ls_slope: need >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (!(sxx > 0.0)) throw ValidationError("ls_slope: abscissae must not coincide");
    return sxy / sxx;
}

Trend sum_trend(const std::vector<double>& x, const std::vector<double>& y) {
    const double s = std::abs(ls_slope(x, y));
    if (s < 0.02) return Trend::Converging;
    if (s > 0.1) return Trend::Diverging;
    return Trend::Flat;
}

EstimateWithCI estimate_I_beta(const LevyModel& model, double beta, const McOptions& opt) {
    if (!(beta > 1.0 && beta <= 2.0)) throw DomainError("estimate_I_beta: beta must lie in (1,2]");
    require_samplable(model, "estimate_I_beta");
    require_options(opt);
    const double q = beta / (beta - 1.0);
    return dyadic_estimate(model, opt, SaltIBeta, [&](double x, double t) {
        return std::min(std::pow(std::abs(x) / std::pow(t, 1.0 / beta), q), 1.0);
    });
}

KhintchineReport khintchine_integral(const LevyModel& model, const HSpec& h, double R, const McOptions& opt) {
    if (!(R > 0.0)) throw ValidationError("khintchine_integral: R must be > 0");
    require_samplable(model, "khintchine_integral");
    if (is_compound_poisson_with_drift(model) && !model.as<ZeroMeasure>())
        throw CapabilityError("khintchine_integral: compound Poisson with drift is outside the test's scope");
    require_options(opt);
    const double mult[3] = {1.0, 0.25, 8.0};
    std::vector<std::vector<Moments>> nodes;
    for (int j = 0; j <= opt.depth; ++j) {
        const double t = std::ldexp(1.0, -j);
        const double ht = h(t);
        nodes.push_back(multi_moments(opt.mc, node_seed(opt.seed, SaltKhintchine, j), StreamTag::Diagnostics, 3,
                                      [&](RngStream& rng, double* out) {
                                          const double ax = std::abs(marginal_sample(model, t, rng));
                                          for (int c = 0; c < 3; ++c)
                                              out[c] = !(ht > 0.0) || ax > mult[c] * R * ht ? 1.0 : 0.0;
                                      }));
    }
    KhintchineReport rep;
    rep.R = R;
    IntegralVerdict* dst[3] = {&rep.at_R, &rep.at_quarter_R, &rep.at_eight_R};
    for (int c = 0; c < 3; ++c) {
        EstimateWithCI e;
        std::vector<double> xs, ys, mass;
        for (int j = 0; j <= opt.depth; ++j) mass.push_back(kLn2 * nodes[j][c].mean());
        for (int Jp : nested_depths(opt.depth)) {
            double s = 0.0, v = 0.0;
            for (int j = 0; j <= Jp; ++j) {
                s += mass[j];
                v += kLn2 * kLn2 * nodes[j][c].variance() / static_cast<double>(nodes[j][c].count);
            }
            e.levels.push_back({std::ldexp(1.0, -Jp), s, std::sqrt(v)});
            xs.push_back(Jp * kLn2);
            ys.push_back(s);
        }
        e.value = e.levels.back().estimate;
        e.std_error = e.levels.back().std_error;
        e.trend = sum_trend(xs, ys);
        *dst[c] = verdict_from(e, mass);
    }
    return rep;
}

EstimateWithCI limsup_estimate(const LevyModel& model, const HSpec& h, std::uint64_t n_seeds, int depth,
                               std::uint64_t seed) {
    require_samplable(model, "limsup_estimate");
    if (depth < 4) throw ValidationError("limsup_estimate: depth must be >= 4");
    if (n_seeds < 2) throw ValidationError("limsup_estimate: need >= 2 seeds");
    const std::vector<int> depths = nested_depths(depth);
    std::vector<double> inv_h(depth + 1, std::numeric_limits<double>::quiet_NaN());
    for (int j = 1; j <= depth; ++j) {
        const double v = h(std::ldexp(1.0, -j));
        if (std::isfinite(v) && v > 0.0) inv_h[j] = 1.0 / v;
    }
    for (int Jp : depths) {
        bool any = false;
        for (int j = std::max(1, Jp / 4); j <= Jp; ++j) any = any || std::isfinite(inv_h[j]);
        if (!any) throw ValidationError("limsup_estimate: h is undefined on the level window");
    }
    // Pure Gaussian models refine one path by the Brownian bridge; others restart per level.
    const bool bridge = model.as<ZeroMeasure>() != nullptr;
    const double s2 = model.sigma2();
    auto m = multi_moments(n_seeds, node_seed(seed, SaltLimsup, 0), StreamTag::Diagnostics, 3,
                           [&](RngStream& rng, double* out) {
                               std::vector<double> x(depth + 1, 0.0);
                               double t = 0.5;
                               x[1] = marginal_sample(model, t, rng);
                               for (int j = 2; j <= depth; ++j) {
                                   if (bridge) x[j] = 0.5 * x[j - 1] + std::sqrt(s2 * t / 4.0) * rng.normal();
                                   else x[j] = marginal_sample(model, t / 2.0, rng);
                                   t /= 2.0;
                               }
                               for (int c = 0; c < 3; ++c) {
                                   double best = 0.0;
                                   for (int j = std::max(1, depths[c] / 4); j <= depths[c]; ++j)
                                       if (std::isfinite(inv_h[j])) best = std::max(best, std::abs(x[j]) * inv_h[j]);
                                   out[c] = best;
                               }
                           });
    EstimateWithCI e;
    e.size = depth;
    e.epsilon = std::ldexp(1.0, -depth);
    e.samples = n_seeds;
    std::vector<double> xs, ys;
    for (int c = 0; c < 3; ++c) {
        e.levels.push_back({std::ldexp(1.0, -depths[c]), m[c].mean(), m[c].std_error()});
        xs.push_back(depths[c] * kLn2);
        ys.push_back(m[c].mean());
    }
    e.value = m[2].mean();
    e.std_error = m[2].std_error();
    const double slope = ls_slope(xs, ys);
    e.trend = slope > 0.1 ? Trend::Diverging : slope < -0.1 ? Trend::Converging : Trend::Flat;
    return e;
}

SbComparison sb_sum_vs_integral(const LevyModel& model, double r, double q, int N, const McOptions& opt) {
    if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("sb_sum_vs_integral: phi needs r in [0,1]");
    if (!(q > 0.0)) throw ValidationError("sb_sum_vs_integral: phi needs q > 0");
    if (N < 4) throw ValidationError("sb_sum_vs_integral: N must be >= 4");
    require_samplable(model, "sb_sum_vs_integral");
    require_options(opt);
    auto phi = [r, q](double x, double t) { return std::min(std::pow(std::abs(x) / std::pow(t, r), q), 1.0); };

    SbComparison out;
    out.r = r;
    out.q = q;
    const int cut[3] = {N / 4, N / 2, N};
    auto m = multi_moments(opt.mc, node_seed(opt.seed, SaltSbSum, 0), StreamTag::StickBreaking, 3,
                           [&](RngStream& rng, double* o) {
                               const FaceSample fs = stick_breaking_faces(model, 1.0, N, rng);
                               double s = 0.0;
                               int c = 0;
                               for (int n = 0; n < N; ++n) {
                                   s += phi(fs.faces[n].height, fs.faces[n].length);
                                   while (c < 3 && n + 1 == cut[c]) o[c++] = s;
                               }
                           });
    EstimateWithCI& sum = out.sum_side;
    sum.size = N;
    sum.epsilon = std::exp(-static_cast<double>(N));
    sum.samples = opt.mc;
    std::vector<double> xs, ys;
    for (int c = 0; c < 3; ++c) {
        sum.levels.push_back({static_cast<double>(cut[c]), m[c].mean(), m[c].std_error()});
        xs.push_back(cut[c]);  // E[-log residual] after n breaks is n
        ys.push_back(m[c].mean());
    }
    sum.value = m[2].mean();
    sum.std_error = m[2].std_error();
    sum.trend = sum_trend(xs, ys);

    McOptions iopt = opt;
    iopt.seed = node_seed(opt.seed, SaltSbInt, 0);
    out.integral_side = dyadic_estimate(model, iopt, SaltSbInt, phi);
    return out;
}

MaximalReport maximal_inequality_check(const LevyModel& model, double R, double t, std::uint64_t mc,
                                       std::uint64_t seed, const HSpec& h) {
    if (!(R > 0.0)) throw ValidationError("maximal_inequality_check: R must be > 0");
    if (!(t > 0.0 && t < 1.0)) throw ValidationError("maximal_inequality_check: t must lie in (0,1)");
    if (mc < 2) throw ValidationError("maximal_inequality_check: mc must be >= 2");
    require_samplable(model, "maximal_inequality_check");
    constexpr int kSteps = 64;
    const double ht = h(t);
    if (!(ht > 0.0)) throw ValidationError("maximal_inequality_check: h(t) must be positive");
    const double dt = t / kSteps;
    auto m = multi_moments(mc, node_seed(seed, SaltMaximal, 0), StreamTag::Diagnostics, 3,
                           [&](RngStream& rng, double* o) {
                               double x = 0.0, peak = 0.0;
                               for (int k = 0; k < kSteps; ++k) {
                                   x += marginal_sample(model, dt, rng);
                                   peak = std::max(peak, x);
                               }
                               o[0] = peak > 4.0 * R * ht ? 1.0 : 0.0;
                               o[1] = x > 2.0 * R * ht ? 2.0 : 0.0;
                               o[2] = std::abs(x) >= 2.0 * R * ht ? 1.0 : 0.0;
                           });
    MaximalReport rep;
    rep.R = R;
    rep.t = t;
    rep.samples = mc;
    rep.lhs = m[0].mean();
    rep.lhs_se = m[0].std_error();
    rep.rhs = m[1].mean();
    rep.rhs_se = m[1].std_error();
    rep.half_prob = m[2].mean();
    rep.precondition_ok = rep.half_prob < 0.5;
    const double se = std::sqrt(rep.lhs_se * rep.lhs_se + rep.rhs_se * rep.rhs_se);
    rep.pass = rep.precondition_ok && rep.lhs <= rep.rhs + 3.0 * se;
    return rep;
}

} // namespace levy
