#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levy/hspec.hpp"
#include "levy/integrals.hpp"
#include "levy/levy_model.hpp"

namespace levy {

enum class Answer { Yes, No, Inconclusive };
const char* to_string(Answer a);

struct HolderVerdict {
    Answer answer = Answer::Inconclusive;
    /// Branch of the decision table: "i", "ii-beta=1", "ii-J_beta=inf",
    /// "ii-J_beta<inf", "ii-J_beta=?", "iii-a", "iii-b", "iii-c", "iii-d",
    /// and "kh-i", "kh-ii", "kh-iii" for general h.
    std::string clause;
    std::vector<std::pair<std::string, IntegralVerdict>> inputs;
    std::string note;
};

/// r-Hoelder continuity of the convex minorant of an infinite-variation process.
/// Throws ValidationError for finite-variation models and r outside (0,1).
HolderVerdict classify_r(const LevyModel& model, double r);

/// 1/2 with a Brownian component, else 1/bg_index.
double critical_exponent(const LevyModel& model);

/// Finiteness of k_h = sup_n |xi_n| / h(l_n).
HolderVerdict classify_kh(const LevyModel& model, const HSpec& h);

struct HstarFunction {
    std::vector<double> breakpoints;  // t_1 > t_2 > ... > 0
    std::vector<double> levels;       // h* on (t_{n+1}, t_n], non-increasing in n
    std::vector<double> u;            // selected u_n
    std::vector<double> witness;      // partial sums of the summability series
    char case_tag = 'a';
    double budget = 1.0;

    double operator()(double t) const;
};

class HstarConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reference function h* with limsup |X_t| / h*(t) in (0, inf), built from a
/// sequence u_n on the grid 2^{-k}, k <= 480. Returns the first 64 breakpoints.
HstarFunction construct_hstar(const LevyModel& model);

/// Grid evaluation of the ratio condition
/// (x^{-2} sigma_bar_sq(x) + x^{-1}|gamma - varpi(x)|) / nu_bar(x) on x = 2^{-k}, k <= 60.
struct RatioCondition {
    bool bounded = false;
    double last = 0.0;
    double max = 0.0;
};
RatioCondition ratio_condition(const LevyModel& model);

} // namespace levy
