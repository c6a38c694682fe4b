#pragma once

#include <string>
#include <vector>

namespace levy {

/// Reference functions h on (0,1) from a closed grammar.
///
/// Monomial: k t^a (log 1/t)^b (log log 1/t)^c, which covers t^a,
/// t^a (log 1/t)^b and sqrt(t log log 1/t). Tabulated: a monotone grid
/// interpolated linearly in log-log coordinates.
class HSpec {
public:
    enum class Kind { Monomial, Tabulated };

    static HSpec power(double a);
    static HSpec power_log(double a, double b);
    static HSpec lil();
    static HSpec monomial(double a, double b, double c, double scale = 1.0);
    static HSpec tabulated(std::vector<double> t, std::vector<double> h);

    /// "t^a", "t^a*log^b", "t^a*log^b*loglog^c", "lil", "sqrt(t*loglog)".
    static HSpec parse(const std::string& text);

    Kind kind() const { return kind_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double scale() const { return k_; }

    /// log h(e^{-L}). NaN where the loglog factor is undefined (L <= 1 with c != 0).
    double log_at(double L) const;
    double operator()(double t) const;

    /// -log h(e^{-L}) = a L + delta(L); returns delta. Monomials only.
    double log_correction(double L) const;

    /// Throws ValidationError if h is not positive and non-decreasing on t = 2^{-k}, k = 4..60.
    void require_monotone() const;

    std::string describe() const;

private:
    Kind kind_ = Kind::Monomial;
    double a_ = 0.5, b_ = 0.0, c_ = 0.0, k_ = 1.0;
    std::vector<double> log_t_, log_h_;
};

enum class Asymptotic { Zero, Finite, Infinite, Unknown };

/// Limit of h1(t)/h2(t) as t -> 0 for two monomials, decided from exponents.
Asymptotic monomial_ratio_limit(const HSpec& h1, const HSpec& h2);

} // namespace levy
