#include "levy/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "levy/integrals.hpp"
#include "levy/quadrature.hpp"

namespace levy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kE = std::numbers::e;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

// Moments of Y ~ N(m, s^2) restricted to (a, b).
struct NormalWindow {
    double p0, p1, p2;  // E[1], E[Y], E[Y^2] over the window
};

NormalWindow normal_window(double m, double s, double a, double b) {
    if (!(b > a)) return {0.0, 0.0, 0.0};
    const double za = (a - m) / s;
    const double zb = (b - m) / s;
    const double dphi = normal_cdf(zb) - normal_cdf(za);
    const double fa = std::isfinite(za) ? normal_pdf(za) : 0.0;
    const double fb = std::isfinite(zb) ? normal_pdf(zb) : 0.0;
    const double e1 = fa - fb;  // \int z phi
    const double e2 = dphi + (std::isfinite(za) ? za * fa : 0.0) - (std::isfinite(zb) ? zb * fb : 0.0);
    return {dphi, m * dphi + s * e1, m * m * dphi + 2.0 * m * s * e1 + s * s * e2};
}

void require_unit_interval(double u, const char* what) {
    if (!(u > 0.0 && u <= 1.0))
        throw DomainError(std::string(what) + ": u must lie in (0,1], got " + std::to_string(u));
}

// (b^d - a^d)/d evaluated stably for d near 0, with a, b > 0.
double power_increment(double a, double b, double d) {
    const double la = std::log(a);
    const double lr = std::log(b) - la;
    if (std::abs(d) < 1e-14) return lr;
    return std::exp(d * la) * std::expm1(d * lr) / d;
}

} // namespace

// ---------------------------------------------------------------------------
// TabulatedTail
// ---------------------------------------------------------------------------

TabulatedTail::TabulatedTail(std::vector<double> u, std::vector<double> nu_bar,
                             std::vector<double> sigma_bar_sq, std::optional<double> declared_bg)
    : u_(std::move(u)), nu_(std::move(nu_bar)), sig_(std::move(sigma_bar_sq)),
      declared_bg_(declared_bg) {
    const std::size_t n = u_.size();
    if (n < 2) throw ValidationError("TabulatedTail: need at least two grid points");
    if (nu_.size() != n) throw ValidationError("TabulatedTail: u and nu_bar lengths differ");
    if (!sig_.empty() && sig_.size() != n)
        throw ValidationError("TabulatedTail: sigma_bar_sq length differs from u");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(u_[i] > 0.0 && u_[i] <= 1.0))
            throw ValidationError("TabulatedTail: u must lie in (0,1]");
        if (!(nu_[i] > 0.0) || !std::isfinite(nu_[i]))
            throw ValidationError("TabulatedTail: nu_bar values must be positive and finite");
        if (i > 0 && !(u_[i] > u_[i - 1]))
            throw ValidationError("TabulatedTail: u grid must be strictly increasing");
        if (i > 0 && nu_[i] > nu_[i - 1])
            throw ValidationError("TabulatedTail: nu_bar must be non-increasing in u");
        if (!sig_.empty()) {
            if (!(sig_[i] > 0.0) || !std::isfinite(sig_[i]))
                throw ValidationError("TabulatedTail: sigma_bar_sq values must be positive");
            if (i > 0 && sig_[i] < sig_[i - 1])
                throw ValidationError("TabulatedTail: sigma_bar_sq must be non-decreasing in u");
        }
    }
    if (declared_bg_ && !(*declared_bg_ >= 0.0 && *declared_bg_ <= 2.0))
        throw ValidationError("TabulatedTail: bg_index must lie in [0,2]");

    log_u_.resize(n);
    log_nu_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        log_u_[i] = std::log(u_[i]);
        log_nu_[i] = std::log(nu_[i]);
    }
    slope_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        slope_[i] = -(log_nu_[i + 1] - log_nu_[i]) / (log_u_[i + 1] - log_u_[i]);

    if (sig_.empty()) {
        if (!(slope_.front() < 2.0))
            throw ValidationError(
                "TabulatedTail: tail exponent below the grid must be < 2 for sigma_bar_sq(1) < inf");
        moment_cum_.resize(n);
        const double s0 = slope_.front();
        moment_cum_[0] = 2.0 * nu_[0] * u_[0] * u_[0] / (2.0 - s0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double s = slope_[i];
            const double A = nu_[i] * std::pow(u_[i], s);
            moment_cum_[i + 1] = moment_cum_[i] + 2.0 * A * power_increment(u_[i], u_[i + 1], 2.0 - s);
        }
    }
}

std::size_t TabulatedTail::segment_for(double log_u) const {
    const std::size_t n = u_.size();
    if (log_u <= log_u_.front()) return 0;
    if (log_u >= log_u_.back()) return n - 2;
    auto it = std::upper_bound(log_u_.begin(), log_u_.end(), log_u);
    return static_cast<std::size_t>(std::distance(log_u_.begin(), it)) - 1;
}

LogScaled TabulatedTail::log_nu_bar_at(double L) const {
    const std::size_t i = segment_for(-L);
    const double s = slope_[i];
    return {s, log_nu_[i] + s * log_u_[i]};
}

double TabulatedTail::local_exponent_at(double L) const { return slope_[segment_for(-L)]; }

double TabulatedTail::sigma_bar_sq_at(double L) const {
    const double lu = -L;
    if (!sig_.empty()) {
        const std::size_t i = segment_for(lu);
        const double ls0 = std::log(sig_[i]);
        const double ls1 = std::log(sig_[i + 1]);
        const double w = (lu - log_u_[i]) / (log_u_[i + 1] - log_u_[i]);
        return std::exp(ls0 + w * (ls1 - ls0));
    }
    const LogScaled tail = log_nu_bar_at(L);
    const double x2nu = std::exp(-2.0 * L + tail.log_at(L));
    if (lu <= log_u_.front()) {
        const double s0 = slope_.front();
        return x2nu * s0 / (2.0 - s0);
    }
    const std::size_t i = segment_for(lu);
    const double s = slope_[i];
    const double A = nu_[i] * std::pow(u_[i], s);
    const double x = std::exp(lu);
    const double m = moment_cum_[i] + 2.0 * A * power_increment(u_[i], x, 2.0 - s);
    return std::max(0.0, m - x2nu);
}

LogScaled TabulatedTail::log_radial_density_at(double y) const {
    const std::size_t i = segment_for(-y);
    const double s = slope_[i];
    if (!(s > 0.0)) return LogScaled::zero();
    const LogScaled tail = log_nu_bar_at(y);
    return {tail.coef, tail.rest + std::log(s)};
}

// ---------------------------------------------------------------------------
// LevyModel
// ---------------------------------------------------------------------------

std::string family_name(const LevyMeasureSpec& m) {
    return std::visit(overloaded{
                          [](const TruncatedStable&) { return std::string("TruncatedStable"); },
                          [](const LogTemperedStable&) { return std::string("LogTemperedStable"); },
                          [](const Example15&) { return std::string("Example15"); },
                          [](const CompoundPoisson&) { return std::string("CompoundPoisson"); },
                          [](const TabulatedTail&) { return std::string("TabulatedTail"); },
                          [](const ZeroMeasure&) { return std::string("Zero"); },
                      },
                      m);
}

LevyModel::LevyModel(double sigma2, double drift, LevyMeasureSpec measure, std::string label)
    : sigma2_(sigma2), drift_(drift), measure_(std::move(measure)), label_(std::move(label)) {
    if (!std::isfinite(sigma2_) || sigma2_ < 0.0) throw ValidationError("sigma2 must be ≥ 0");
    if (!std::isfinite(drift_)) throw ValidationError("drift must be finite");
    std::visit(overloaded{
                   [](const TruncatedStable& f) {
                       if (!(f.alpha > 0.0 && f.alpha < 2.0))
                           throw ValidationError("measure.alpha must lie in (0,2)");
                       if (!(f.c_plus >= 0.0) || !(f.c_minus >= 0.0))
                           throw ValidationError("measure.c_plus and measure.c_minus must be >= 0");
                       if (!(f.c_plus + f.c_minus > 0.0))
                           throw ValidationError("measure: c_plus + c_minus must be > 0");
                   },
                   [](const LogTemperedStable& f) {
                       if (!(f.beta > 1.0 && f.beta < 2.0))
                           throw ValidationError("measure.beta must lie in (1,2)");
                       if (!std::isfinite(f.kappa))
                           throw ValidationError("measure.kappa must be finite");
                   },
                   [](const Example15&) {},
                   [](const CompoundPoisson& f) {
                       if (!(f.rate > 0.0) || !std::isfinite(f.rate))
                           throw ValidationError("measure.rate must be > 0");
                       if (f.law == JumpLaw::Normal && !(f.jump_sd > 0.0))
                           throw ValidationError("measure.jump_sd must be > 0");
                       if (f.law == JumpLaw::Constant && f.jump_mean == 0.0)
                           throw ValidationError("measure.jump_size must be non-zero");
                   },
                   [](const TabulatedTail&) {},
                   [](const ZeroMeasure&) {},
               },
               measure_);
    if (!std::isfinite(sigma_bar_sq_at(*this, 0.0)))
        throw ValidationError("sigma_bar_sq(1) must be finite");
}

// ---------------------------------------------------------------------------
// Tail functions
// ---------------------------------------------------------------------------

LogScaled log_nu_bar_at(const LevyModel& model, double L) {
    if (!(L >= 0.0)) throw DomainError("log_nu_bar_at: L = log(1/u) must be >= 0");
    return std::visit(
        overloaded{
            [&](const TruncatedStable& f) -> LogScaled {
                if (L == 0.0) return LogScaled::zero();
                const double c = f.c_plus + f.c_minus;
                return {f.alpha, std::log(c / f.alpha) + std::log(-std::expm1(-f.alpha * L))};
            },
            [&](const LogTemperedStable& f) -> LogScaled {
                if (L <= 1.0) return LogScaled::zero();
                const double kappa = f.kappa;
                const double rest = quad::log_laplace(f.beta, L - 1.0, [&](double z) {
                    return std::pow(L - z, -kappa);
                });
                return {f.beta, rest};
            },
            [&](const Example15&) -> LogScaled {
                if (L <= kE) return LogScaled::zero();
                const double rest = quad::log_laplace(2.0, L - kE, [&](double z) {
                    const double y = L - z;
                    const double ly = std::log(y);
                    return 1.0 / (y * ly * ly);
                });
                return {2.0, std::log(0.5) + rest};
            },
            [&](const CompoundPoisson& f) -> LogScaled {
                const double u = std::exp(-L);
                double mass = 0.0;
                if (f.law == JumpLaw::Constant) {
                    mass = std::abs(f.jump_mean) >= u ? f.rate : 0.0;
                } else {
                    const double m = f.jump_mean, s = f.jump_sd;
                    mass = f.rate * (normal_cdf((-u - m) / s) + normal_cdf(-(u - m) / s));
                }
                if (!(mass > 0.0)) return LogScaled::zero();
                return {0.0, std::log(mass)};
            },
            [&](const TabulatedTail& f) { return f.log_nu_bar_at(L); },
            [&](const ZeroMeasure&) { return LogScaled::zero(); },
        },
        model.measure());
}

double sigma_bar_sq_at(const LevyModel& model, double L) {
    if (!(L >= 0.0)) throw DomainError("sigma_bar_sq_at: L = log(1/u) must be >= 0");
    return std::visit(
        overloaded{
            [&](const TruncatedStable& f) {
                const double c = f.c_plus + f.c_minus;
                return c / (2.0 - f.alpha) * std::exp(-(2.0 - f.alpha) * L);
            },
            [&](const LogTemperedStable& f) {
                const double Lp = std::max(L, 1.0);
                const double a = 2.0 - f.beta;
                const double kappa = f.kappa;
                const double lr = quad::log_laplace(a, kInf, [&](double z) {
                    return std::pow(Lp + z, -kappa);
                });
                return std::exp(-a * Lp + lr);
            },
            [&](const Example15&) { return L >= kE ? 0.5 / std::log(L) : 0.5; },
            [&](const CompoundPoisson& f) {
                const double u = std::exp(-L);
                if (f.law == JumpLaw::Constant) {
                    const double a = f.jump_mean;
                    return std::abs(a) < u ? f.rate * a * a : 0.0;
                }
                return f.rate * normal_window(f.jump_mean, f.jump_sd, -u, u).p2;
            },
            [&](const TabulatedTail& f) { return f.sigma_bar_sq_at(L); },
            [&](const ZeroMeasure&) { return 0.0; },
        },
        model.measure());
}

double nu_bar(const LevyModel& model, double u) {
    require_unit_interval(u, "nu_bar");
    const double L = -std::log(u);
    return log_nu_bar_at(model, L).value_at(L);
}

double sigma_bar_sq(const LevyModel& model, double u) {
    require_unit_interval(u, "sigma_bar_sq");
    return sigma_bar_sq_at(model, -std::log(u));
}

double varpi(const LevyModel& model, double u) {
    require_unit_interval(u, "varpi");
    const double L = -std::log(u);
    return std::visit(
        overloaded{
            [&](const TruncatedStable& f) {
                const double d = f.c_plus - f.c_minus;
                if (d == 0.0) return 0.0;
                if (f.alpha == 1.0) return d * L;
                // \int_u^1 x^{-alpha} dx
                return d * std::expm1((f.alpha - 1.0) * L) / (f.alpha - 1.0);
            },
            [&](const LogTemperedStable& f) {
                if (L <= 1.0) return 0.0;
                const double kappa = f.kappa;
                const double lr = quad::log_laplace(f.beta - 1.0, L - 1.0, [&](double z) {
                    return std::pow(L - z, -kappa);
                });
                return std::exp((f.beta - 1.0) * L + lr);
            },
            [&](const Example15&) {
                if (L <= kE) return 0.0;
                const double lr = quad::log_laplace(1.0, L - kE, [&](double z) {
                    const double y = L - z;
                    const double ly = std::log(y);
                    return 1.0 / (y * ly * ly);
                });
                return 0.5 * std::exp(L + lr);
            },
            [&](const CompoundPoisson& f) {
                if (f.law == JumpLaw::Constant) {
                    const double a = f.jump_mean;
                    return (std::abs(a) >= u && std::abs(a) < 1.0) ? f.rate * a : 0.0;
                }
                const double m = f.jump_mean, s = f.jump_sd;
                return f.rate * (normal_window(m, s, u, 1.0).p1 + normal_window(m, s, -1.0, -u).p1);
            },
            [&](const TabulatedTail&) { return 0.0; },
            [&](const ZeroMeasure&) { return 0.0; },
        },
        model.measure());
}

double nu_bar_at_one(const LevyModel& model) { return log_nu_bar_at(model, 0.0).value_at(0.0); }

LogScaled log_radial_density_at(const LevyModel& model, double y) {
    if (!(y >= 0.0)) throw DomainError("log_radial_density_at: y must be >= 0");
    return std::visit(
        overloaded{
            [&](const TruncatedStable& f) -> LogScaled {
                return {f.alpha, std::log(f.c_plus + f.c_minus)};
            },
            [&](const LogTemperedStable& f) -> LogScaled {
                if (y <= 1.0) return LogScaled::zero();
                return {f.beta, -f.kappa * std::log(y)};
            },
            [&](const Example15&) -> LogScaled {
                if (y <= kE) return LogScaled::zero();
                const double ly = std::log(y);
                return {2.0, std::log(0.5) - ly - 2.0 * std::log(ly)};
            },
            [&](const CompoundPoisson& f) -> LogScaled {
                if (f.law == JumpLaw::Constant) return LogScaled::zero();
                const double r = std::exp(-y);
                const double m = f.jump_mean, s = f.jump_sd;
                const double dens =
                    f.rate * (normal_pdf((r - m) / s) + normal_pdf((-r - m) / s)) / s;
                if (!(dens > 0.0)) return LogScaled::zero();
                return {-1.0, std::log(dens)};
            },
            [&](const TabulatedTail& f) { return f.log_radial_density_at(y); },
            [&](const ZeroMeasure&) { return LogScaled::zero(); },
        },
        model.measure());
}

std::vector<Atom> small_atoms(const LevyModel& model) {
    if (const auto* cp = model.as<CompoundPoisson>(); cp && cp->law == JumpLaw::Constant) {
        const double a = std::abs(cp->jump_mean);
        if (a < 1.0) return {Atom{a, cp->rate}};
    }
    return {};
}

bool is_compound_poisson_with_drift(const LevyModel& model) {
    if (model.sigma2() > 0.0) return false;
    if (model.as<CompoundPoisson>() || model.as<ZeroMeasure>()) return true;
    if (const auto* tab = model.as<TabulatedTail>())
        return !tab->has_sigma_column() && tab->local_exponent_at(kInf) == 0.0;
    return false;
}

std::optional<double> closed_form_j_p(const LevyModel& model, double p) {
    return std::visit(
        overloaded{
            [&](const TruncatedStable& f) -> std::optional<double> {
                if (p > f.alpha) return (f.c_plus + f.c_minus) / (p - f.alpha);
                return kInf;
            },
            [&](const LogTemperedStable& f) -> std::optional<double> {
                if (p < f.beta) return kInf;
                if (p == f.beta) return f.kappa > 1.0 ? 1.0 / (f.kappa - 1.0) : kInf;
                return std::nullopt;
            },
            [&](const Example15&) -> std::optional<double> {
                if (p < 2.0) return kInf;
                if (p == 2.0) return 0.5;
                return std::nullopt;
            },
            [&](const CompoundPoisson& f) -> std::optional<double> {
                if (f.law != JumpLaw::Constant) return std::nullopt;
                const double a = std::abs(f.jump_mean);
                return a < 1.0 ? f.rate * std::pow(a, p) : 0.0;
            },
            [&](const TabulatedTail&) -> std::optional<double> { return std::nullopt; },
            [&](const ZeroMeasure&) -> std::optional<double> { return 0.0; },
        },
        model.measure());
}

BgIndex bg_index(const LevyModel& model) {
    return std::visit(
        overloaded{
            [](const TruncatedStable& f) { return BgIndex{f.alpha, true, "closed form: alpha"}; },
            [](const LogTemperedStable& f) {
                std::string prov = "closed form: beta";
                if (f.kappa <= 1.0) prov += " (kappa <= 1: J_beta = inf)";
                return BgIndex{f.beta, true, prov};
            },
            [](const Example15&) { return BgIndex{2.0, true, "closed form: J_p = inf for p < 2"}; },
            [](const CompoundPoisson&) { return BgIndex{0.0, true, "finite activity"}; },
            [](const TabulatedTail& f) {
                if (f.declared_bg_index())
                    return BgIndex{*f.declared_bg_index(), true, "declared"};
                // Least-squares slope of log nu_bar on log u over the lowest third of the grid.
                const auto& u = f.u();
                const auto& nu = f.nu_bar_values();
                const std::size_t n = std::max<std::size_t>(2, u.size() / 3);
                double sx = 0, sy = 0, sxx = 0, sxy = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = std::log(u[i]), y = std::log(nu[i]);
                    sx += x, sy += y, sxx += x * x, sxy += x * y;
                }
                const double dn = static_cast<double>(n);
                const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
                double beta = std::clamp(-slope, 0.0, 2.0);
                for (double edge : {1.0, 2.0}) {
                    const double gap = std::abs(beta - edge);
                    if (gap <= 0.01) return BgIndex{edge, true, "regression (snapped)"};
                    if (gap <= 0.1) return BgIndex{beta, false, "regression inside undetermined band"};
                }
                return BgIndex{beta, true, "regression"};
            },
            [](const ZeroMeasure&) { return BgIndex{0.0, true, "no jumps"}; },
        },
        model.measure());
}

Variation variation_class(const LevyModel& model) {
    if (model.sigma2() > 0.0) return Variation::InfiniteVariation;
    if (is_compound_poisson_with_drift(model)) return Variation::FiniteVariation;
    const IntegralVerdict j1 = j_p(model, 1.0);
    if (j1.status == IntegralStatus::Undetermined)
        throw ConsistencyError("variation_class: J_1 could not be decided");
    return j1.status == IntegralStatus::Infinite ? Variation::InfiniteVariation
                                                 : Variation::FiniteVariation;
}

} // namespace levy
