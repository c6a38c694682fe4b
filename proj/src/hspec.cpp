#include "levy/hspec.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

#include "levy/errors.hpp"

namespace levy {

HSpec HSpec::power(double a) { return monomial(a, 0.0, 0.0); }
HSpec HSpec::power_log(double a, double b) { return monomial(a, b, 0.0); }
HSpec HSpec::lil() { return monomial(0.5, 0.0, 0.5); }

HSpec HSpec::monomial(double a, double b, double c, double scale) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !(scale > 0.0))
        throw ValidationError("h: exponents must be finite and the scale positive");
    HSpec h;
    h.kind_ = Kind::Monomial;
    h.a_ = a;
    h.b_ = b;
    h.c_ = c;
    h.k_ = scale;
    return h;
}

HSpec HSpec::tabulated(std::vector<double> t, std::vector<double> hv) {
    if (t.size() < 2 || t.size() != hv.size())
        throw ValidationError("h: tabulated grid needs >= 2 matching (t, h) pairs");
    HSpec h;
    h.kind_ = Kind::Tabulated;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0 && t[i] < 1.0) || !(hv[i] > 0.0))
            throw ValidationError("h: tabulated t must lie in (0,1) and h must be positive");
        if (i > 0 && (!(t[i] > t[i - 1]) || hv[i] < hv[i - 1]))
            throw ValidationError("h: tabulated grid must be increasing in t, h non-decreasing");
        h.log_t_.push_back(std::log(t[i]));
        h.log_h_.push_back(std::log(hv[i]));
    }
    return h;
}

HSpec HSpec::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s == "lil" || s == "sqrt(t*loglog)" || s == "sqrt(t*loglog(1/t))") return lil();
    static const std::regex re(
        R"(t\^([-+0-9.eE]+)(\*log\^([-+0-9.eE]+))?(\*loglog\^([-+0-9.eE]+))?)");
    std::smatch m;
    if (std::regex_match(s, m, re)) {
        try {
            const double a = std::stod(m[1].str());
            const double b = m[3].matched ? std::stod(m[3].str()) : 0.0;
            const double c = m[5].matched ? std::stod(m[5].str()) : 0.0;
            return monomial(a, b, c);
        } catch (const std::logic_error&) {
        }
    }
    throw ValidationError("h: cannot parse \"" + text +
                          "\" (expected t^a, t^a*log^b, t^a*log^b*loglog^c or lil)");
}

double HSpec::log_at(double L) const {
    if (kind_ == Kind::Monomial) {
        double v = -a_ * L + std::log(k_);
        if (b_ != 0.0) v += b_ * std::log(L);
        if (c_ != 0.0) {
            if (!(L > 1.0)) return std::numeric_limits<double>::quiet_NaN();
            v += c_ * std::log(std::log(L));
        }
        return v;
    }
    const double lt = -L;
    std::size_t i = 0;
    if (lt >= log_t_.back()) i = log_t_.size() - 2;
    else if (lt > log_t_.front())
        i = static_cast<std::size_t>(std::upper_bound(log_t_.begin(), log_t_.end(), lt) -
                                     log_t_.begin()) - 1;
    const double w = (lt - log_t_[i]) / (log_t_[i + 1] - log_t_[i]);
    return log_h_[i] + w * (log_h_[i + 1] - log_h_[i]);
}

double HSpec::operator()(double t) const { return std::exp(log_at(-std::log(t))); }

double HSpec::log_correction(double L) const {
    double d = -std::log(k_);
    if (b_ != 0.0) d -= b_ * std::log(L);
    if (c_ != 0.0) d -= c_ * std::log(std::log(L));
    return d;
}

void HSpec::require_monotone() const {
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 4; k <= 60; ++k) {
        const double v = log_at(k * std::log(2.0));
        if (std::isnan(v)) continue;
        if (v > prev + 1e-12 * (1.0 + std::abs(prev)))
            throw ValidationError("h: not non-decreasing on the probe grid t = 2^-k (" + describe() +
                                  ")");
        prev = v;
    }
    if (std::isinf(prev)) throw ValidationError("h: undefined on the probe grid");
}

std::string HSpec::describe() const {
    if (kind_ == Kind::Tabulated) return "tabulated h";
    std::ostringstream os;
    if (k_ != 1.0) os << k_ << "*";
    os << "t^" << a_;
    if (b_ != 0.0) os << "*log^" << b_;
    if (c_ != 0.0) os << "*loglog^" << c_;
    return os.str();
}

Asymptotic monomial_ratio_limit(const HSpec& h1, const HSpec& h2) {
    if (h1.kind() != HSpec::Kind::Monomial || h2.kind() != HSpec::Kind::Monomial)
        return Asymptotic::Unknown;
    // t^{da} (log)^{db} (loglog)^{dc} as t -> 0: t-power first, then log, then loglog.
    const double da = h1.a() - h2.a();
    const double db = h1.b() - h2.b();
    const double dc = h1.c() - h2.c();
    for (double e : {-da, db, dc}) {
        if (e > 0.0) return Asymptotic::Infinite;
        if (e < 0.0) return Asymptotic::Zero;
    }
    return Asymptotic::Finite;
}

} // namespace levy
