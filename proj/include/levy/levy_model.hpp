#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levy/errors.hpp"

namespace levy {

/// A nonnegative quantity stored as exp(coef * L + rest), L the argument it
/// was evaluated at.
///
/// Tail masses near the origin grow like exp(c L) with L = log(1/u). Keeping
/// the coefficient separate lets callers cancel leading growth exactly
/// (e.g. nu_bar(sqrt t) * t for a measure with bg index 2).
struct LogScaled {
    double coef = 0.0;
    double rest = -std::numeric_limits<double>::infinity();

    static LogScaled zero() { return {}; }
    bool is_zero() const { return rest == -std::numeric_limits<double>::infinity(); }
    double log_at(double L) const { return is_zero() ? rest : coef * L + rest; }
    double value_at(double L) const { return is_zero() ? 0.0 : std::exp(coef * L + rest); }
};

// ---------------------------------------------------------------------------
// Jump-measure families
// ---------------------------------------------------------------------------

/// c_plus x^{-1-alpha} on (0,1) and c_minus |x|^{-1-alpha} on (-1,0).
struct TruncatedStable {
    double alpha = 1.5;
    double c_plus = 0.75;
    double c_minus = 0.75;
};

/// x^{-1-beta} (log 1/x)^{-kappa} on (0, e^{-1}).
struct LogTemperedStable {
    double beta = 1.5;
    double kappa = 2.0;
};

/// (1/2) x^{-3} (log 1/x)^{-1} (log log 1/x)^{-2} on (0, e^{-e}).
/// sigma_bar_sq(x) = 1 / (2 log log 1/x); beta = 2 with lambda2 = 1.
struct Example15 {};

enum class JumpLaw { Normal, Constant };

/// Finite-activity jumps. For JumpLaw::Constant every jump equals jump_mean.
struct CompoundPoisson {
    double rate = 1.0;
    JumpLaw law = JumpLaw::Normal;
    double jump_mean = 0.0;
    double jump_sd = 1.0;
};

/// Symmetric measure described only through its tail on a grid.
///
/// nu_bar is interpolated linearly in log-log coordinates and the boundary
/// slopes are extrapolated outside the grid. An optional sigma_bar_sq column
/// overrides the value derived from the interpolant (synthetic fixtures),
/// and an optional declared Blumenthal-Getoor index overrides the regression
/// estimate.
class TabulatedTail {
public:
    TabulatedTail(std::vector<double> u, std::vector<double> nu_bar,
                  std::vector<double> sigma_bar_sq = {},
                  std::optional<double> declared_bg_index = std::nullopt);

    const std::vector<double>& u() const { return u_; }
    const std::vector<double>& nu_bar_values() const { return nu_; }
    const std::vector<double>& sigma_bar_sq_values() const { return sig_; }
    std::optional<double> declared_bg_index() const { return declared_bg_; }
    bool has_sigma_column() const { return !sig_.empty(); }

    LogScaled log_nu_bar_at(double L) const;
    double sigma_bar_sq_at(double L) const;
    /// Log of r * rho(r) at r = e^{-y}, rho = -d nu_bar / dr.
    LogScaled log_radial_density_at(double y) const;
    /// Tail exponent -d log nu_bar / d log u on the segment containing u=e^{-L}.
    double local_exponent_at(double L) const;

private:
    std::size_t segment_for(double log_u) const;

    std::vector<double> u_, nu_, sig_;
    std::optional<double> declared_bg_;
    std::vector<double> log_u_, log_nu_, slope_;
    std::vector<double> moment_cum_;  // \int_0^{u_i} 2 y nu_bar(y) dy
};

struct ZeroMeasure {};

using LevyMeasureSpec = std::variant<TruncatedStable, LogTemperedStable, Example15,
                                     CompoundPoisson, TabulatedTail, ZeroMeasure>;

std::string family_name(const LevyMeasureSpec& m);

// ---------------------------------------------------------------------------
// The triplet
// ---------------------------------------------------------------------------

/// Levy triplet (sigma^2, nu, gamma) with the truncation 1{|x|<1} for gamma.
/// Immutable after construction.
class LevyModel {
public:
    LevyModel(double sigma2, double drift, LevyMeasureSpec measure, std::string label = {});

    double sigma2() const { return sigma2_; }
    double drift() const { return drift_; }
    const LevyMeasureSpec& measure() const { return measure_; }
    const std::string& label() const { return label_; }

    template <class Family>
    const Family* as() const { return std::get_if<Family>(&measure_); }

private:
    double sigma2_;
    double drift_;
    LevyMeasureSpec measure_;
    std::string label_;
};

// Tail and truncated-moment functions on u in (0,1]. Throw DomainError otherwise.
double nu_bar(const LevyModel& model, double u);
double sigma_bar_sq(const LevyModel& model, double u);
double varpi(const LevyModel& model, double u);

// Same quantities in the coordinate L = log(1/u) >= 0, usable for u far
// below the smallest positive double.
LogScaled log_nu_bar_at(const LevyModel& model, double L);
double sigma_bar_sq_at(const LevyModel& model, double L);

/// nu({|x| >= 1}).
double nu_bar_at_one(const LevyModel& model);

/// Log of r rho(r) at r = e^{-y}, where rho is the density of |x| under nu
/// restricted to (0,1). Atoms are reported separately by `small_atoms`.
LogScaled log_radial_density_at(const LevyModel& model, double y);

struct Atom {
    double abs_size;
    double mass;
};
/// Point masses of nu inside (-1,1), keyed by |x|.
std::vector<Atom> small_atoms(const LevyModel& model);

enum class Variation { FiniteVariation, InfiniteVariation };

/// InfiniteVariation iff sigma2 > 0 or J_1 = infinity. Throws
/// ConsistencyError if J_1 cannot be decided.
Variation variation_class(const LevyModel& model);

struct BgIndex {
    double value = 0.0;
    bool determined = true;
    std::string provenance;
};

BgIndex bg_index(const LevyModel& model);

bool is_compound_poisson_with_drift(const LevyModel& model);

/// Closed-form J_p where the family admits one (nullopt otherwise);
/// +infinity encodes divergence.
std::optional<double> closed_form_j_p(const LevyModel& model, double p);

} // namespace levy
