#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levy/hspec.hpp"
#include "levy/integrals.hpp"
#include "levy/levy_model.hpp"

namespace levy {

enum class Trend { Converging, Diverging, Flat };
std::string to_string(Trend t);

/// One nested truncation level: the estimate computed with that truncation.
struct TruncationPoint {
    double truncation;  // lower t-cutoff, or face count for stick-breaking sums
    double estimate;
    double std_error;
};

struct EstimateWithCI {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    Trend trend = Trend::Flat;
    double epsilon = 1.0;  // lower t-cutoff
    int size = 0;          // dyadic depth J or face count N
    std::vector<TruncationPoint> levels;  // at least 3, finest last
};

/// Slope of y against x by least squares mapped to a trend for partial sums:
/// |slope| < 0.02 Converging, > 0.1 Diverging, else Flat.
Trend sum_trend(const std::vector<double>& x, const std::vector<double>& y);
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

struct McOptions {
    int depth = 20;          // dyadic depth J
    std::uint64_t mc = 10000;  // draws per node
    std::uint64_t seed = 0x5EEDULL;
};

/// Dyadic Monte Carlo estimate of int_0^1 E[min{(|X_t|/t^{1/beta})^{beta/(beta-1)}, 1}] dt/t.
EstimateWithCI estimate_I_beta(const LevyModel& model, double beta, const McOptions& opt = {});

struct KhintchineReport {
    double R = 1.0;
    IntegralVerdict at_R;
    IntegralVerdict at_quarter_R;
    IntegralVerdict at_eight_R;
};

/// Dyadic Monte Carlo estimate of int_0^1 P(|X_t| > R h(t)) dt/t at R, R/4, 8R.
KhintchineReport khintchine_integral(const LevyModel& model, const HSpec& h, double R,
                                     const McOptions& opt = {});

/// Per seed, max over dyadic levels j in [J/4, J] of |X_{2^-j}| / h(2^-j),
/// averaged over seeds. Trend: slope > 0.1 Diverging, < -0.1 Converging,
/// otherwise Flat (a stable level).
EstimateWithCI limsup_estimate(const LevyModel& model, const HSpec& h, std::uint64_t n_seeds, int depth,
                               std::uint64_t seed);

struct SbComparison {
    double r = 0.5;
    double q = 2.0;
    EstimateWithCI sum_side;
    EstimateWithCI integral_side;
    bool trends_agree() const { return sum_side.trend == integral_side.trend; }
};

/// phi(x,t) = (|x|/t^r)^q with r in [0,1], q > 0. Sum side: mean over opt.mc
/// seeds of sum_{n<=N} min{phi(xi_n, l_n), 1}; integral side: dyadic estimate.
SbComparison sb_sum_vs_integral(const LevyModel& model, double r, double q, int N, const McOptions& opt = {});

struct MaximalReport {
    double R = 1.0;
    double t = 0.01;
    double lhs = 0.0;  // P(sup_{s<=t} X_s > 4 R h(t)), 64-step skeleton
    double lhs_se = 0.0;
    double rhs = 0.0;  // 2 P(X_t > 2 R h(t))
    double rhs_se = 0.0;
    double half_prob = 0.0;  // P(|X_t| >= 2 R h(t)); must be < 1/2
    bool precondition_ok = false;
    bool pass = false;
    std::uint64_t samples = 0;
};

MaximalReport maximal_inequality_check(const LevyModel& model, double R, double t, std::uint64_t mc,
                                       std::uint64_t seed, const HSpec& h = HSpec::power(0.5));

} // namespace levy
