#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "levy/levy_model.hpp"

namespace levy {

enum class IntegralStatus { Finite, Infinite, Undetermined };

const char* to_string(IntegralStatus s);

struct Shell {
    int index;
    double mass;
};

struct IntegralVerdict {
    IntegralStatus status = IntegralStatus::Undetermined;
    double value = std::numeric_limits<double>::quiet_NaN();  // set iff Finite
    double tail_bound = 0.0;  // geometric estimate of the mass beyond the last shell
    std::vector<Shell> shells;
    std::string note;

    bool finite() const { return status == IntegralStatus::Finite; }
    bool infinite() const { return status == IntegralStatus::Infinite; }
    bool undetermined() const { return status == IntegralStatus::Undetermined; }

    static IntegralVerdict finite_value(double v, std::string note = {});
    static IntegralVerdict divergent(std::string note = {});
};

struct QuadratureConfig {
    int max_depth = 60;
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    double shell_ratio_threshold = 0.9;
    int shells_required = 12;

    /// Throws ValidationError on out-of-range fields.
    void validate() const;
};

enum class Monotone { Unknown, NonIncreasing };

/// Integrand on (0,b] expressed through L = log(1/t): `log_density(L)` is the
/// log of f(e^{-L}) e^{-L}, the density of the integral in the L variable.
/// The coefficient/rest split lets leading exponential terms cancel exactly.
struct Integrand {
    std::function<LogScaled(double L)> log_density;
    Monotone tag = Monotone::Unknown;  // NonIncreasing: f non-increasing in t
};

/// Integrand from log f(L), f evaluated at t = e^{-L}.
Integrand from_log_f(std::function<double(double L)> log_f, Monotone tag = Monotone::Unknown);
/// log f = coef * L + rest(L). Use when log f grows linearly in L: the
/// density's leading term then cancels exactly instead of in floating point.
Integrand from_log_f(double coef, std::function<double(double L)> rest, Monotone tag = Monotone::Unknown);

/// Convergence classification of \int_0^b f(t) dt.
///
/// Dyadic shells in t are tried first. Slowly varying integrands near the
/// 1/t boundary are retried on shells dyadic in log(1/t) and then on
/// condensed blocks of those shells.
IntegralVerdict classify_improper(const Integrand& f, double b, const QuadratureConfig& cfg = {});

struct JpRoutes {
    IntegralVerdict moment;  // \int |x|^p nu(dx) on (-1,1), atoms included
    IntegralVerdict tail;    // \int_0^1 nu_bar(t^{1/p}) dt - nu_bar(1-)
};
JpRoutes j_p_routes(const LevyModel& model, double p, const QuadratureConfig& cfg = {});

/// J_p = \int_{(-1,1)} |x|^p nu(dx), computed as a moment integral and as
/// \int_0^1 nu_bar(t^{1/p}) dt - nu_bar(1-). Throws ConsistencyError if the
/// two disagree.
IntegralVerdict j_p(const LevyModel& model, double p, const QuadratureConfig& cfg = {});

struct Lambda2Result {
    IntegralStatus status = IntegralStatus::Undetermined;  // Finite: value is meaningful
    double value = std::numeric_limits<double>::quiet_NaN();  // may be +inf
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();  // certified bracket
    std::string note;
};

/// inf{lambda > 0 : \int_0^1 exp(-lambda^2 / (2 sigma_bar_sq(u))) du/u < inf}.
Lambda2Result lambda2(const LevyModel& model, double tol = 0.05);

/// \int_0^1 log(1/t) nu_bar(sqrt t) dt.
IntegralVerdict log_weighted_tail(const LevyModel& model, const QuadratureConfig& cfg = {});

/// \int_0^x log log(1/t) nu_bar(sqrt t) dt for x in (0, e^{-e}).
IntegralVerdict big_lambda(const LevyModel& model, double x, const QuadratureConfig& cfg = {});

} // namespace levy
