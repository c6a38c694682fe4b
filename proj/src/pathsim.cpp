#include "levy/pathsim.hpp"

#include <cmath>
#include <numbers>

namespace levy {

namespace {

constexpr double kPi = std::numbers::pi;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

// Standard S_alpha(1, beta, 0) draw.
double standard_stable(double alpha, double beta, RngStream& rng) {
    const double V = kPi * (rng.uniform() - 0.5);
    const double W = rng.exponential();
    if (alpha == 1.0) return std::tan(V);  // symmetric only
    const double tq = std::tan(kPi * alpha / 2.0);
    const double B = std::atan(beta * tq) / alpha;
    const double S = std::pow(1.0 + beta * beta * tq * tq, 1.0 / (2.0 * alpha));
    return S * std::sin(alpha * (V + B)) / std::pow(std::cos(V), 1.0 / alpha) *
           std::pow(std::cos(V - alpha * (V + B)) / W, (1.0 - alpha) / alpha);
}

// Drift of the sampled process once the cutoff 1{|x|<1} is accounted for.
double effective_drift(const LevyModel& model) {
    const double g = model.drift();
    if (const auto* f = model.as<TruncatedStable>()) {
        const double d = f->c_plus - f->c_minus;
        if (f->alpha > 1.0) return g + d / (f->alpha - 1.0);
        if (f->alpha < 1.0) return g - d / (1.0 - f->alpha);
        return g;
    }
    if (const auto* f = model.as<CompoundPoisson>()) {
        if (f->law == JumpLaw::Constant)
            return std::abs(f->jump_mean) < 1.0 ? g - f->rate * f->jump_mean : g;
        const double m = f->jump_mean, s = f->jump_sd;
        const double za = (-1.0 - m) / s, zb = (1.0 - m) / s;
        const double small_mean = m * (normal_cdf(zb) - normal_cdf(za)) + s * (normal_pdf(za) - normal_pdf(zb));
        return g - f->rate * small_mean;
    }
    return g;
}

} // namespace

bool is_samplable(const LevyModel& model) {
    if (model.as<ZeroMeasure>() || model.as<CompoundPoisson>()) return true;
    if (const auto* f = model.as<TruncatedStable>()) return !(f->alpha == 1.0 && f->c_plus != f->c_minus);
    return false;
}

double marginal_sample(const LevyModel& model, double t, RngStream& rng) {
    if (!(t >= 0.0)) throw DomainError("marginal_sample: t must be >= 0");
    if (!is_samplable(model))
        throw CapabilityError("marginal_sample: " + family_name(model.measure()) +
                              " has no exact sampler; use the integral criteria instead");
    if (t == 0.0) return 0.0;
    double x = effective_drift(model) * t;
    if (model.sigma2() > 0.0) x += std::sqrt(model.sigma2() * t) * rng.normal();
    if (const auto* f = model.as<TruncatedStable>()) {
        const double c = f->c_plus + f->c_minus;
        const double a = f->alpha;
        double scale;
        if (a == 1.0) scale = c * kPi / 2.0;
        else scale = std::pow(-c * std::tgamma(-a) * std::cos(kPi * a / 2.0), 1.0 / a);
        const double skew = (f->c_plus - f->c_minus) / c;
        x += scale * std::pow(t, 1.0 / a) * standard_stable(a, skew, rng);
    } else if (const auto* f = model.as<CompoundPoisson>()) {
        const std::uint64_t n = rng.poisson(f->rate * t);
        if (n > 0) {
            const double dn = static_cast<double>(n);
            if (f->law == JumpLaw::Constant) x += dn * f->jump_mean;
            else x += dn * f->jump_mean + std::sqrt(dn) * f->jump_sd * rng.normal();
        }
    }
    return x;
}

PathSample sample_path(const LevyModel& model, double T, int n_steps, std::uint64_t seed) {
    if (n_steps < 2) throw ValidationError("sample_path: n_steps must be >= 2");
    if (!(T > 0.0)) throw ValidationError("sample_path: T must be > 0");
    RngStream rng(seed, StreamTag::PathSample, 0);
    PathSample p;
    p.model_label = model.label();
    p.seed = seed;
    p.times.resize(n_steps + 1);
    p.values.resize(n_steps + 1);
    const double dt = T / n_steps;
    p.times[0] = 0.0;
    p.values[0] = 0.0;
    for (int i = 1; i <= n_steps; ++i) {
        p.times[i] = i == n_steps ? T : i * dt;
        p.values[i] = p.values[i - 1] + marginal_sample(model, dt, rng);
    }
    return p;
}

FaceSample stick_breaking_faces(const LevyModel& model, double T, int N, RngStream& rng) {
    if (N < 1) throw ValidationError("stick_breaking_faces: N must be >= 1");
    if (!(T > 0.0)) throw ValidationError("stick_breaking_faces: T must be > 0");
    if (!is_samplable(model))
        throw CapabilityError("stick_breaking_faces: " + family_name(model.measure()) +
                              " has no exact sampler");
    FaceSample fs;
    fs.horizon = T;
    fs.truncation = N;
    fs.faces.reserve(N);
    double remaining = T;
    for (int n = 0; n < N; ++n) {
        const double U = rng.uniform();
        const double l = U * remaining;
        remaining *= (1.0 - U);
        fs.faces.push_back({l, marginal_sample(model, l, rng)});
    }
    fs.residual = remaining;
    return fs;
}

FaceSample stick_breaking_faces(const LevyModel& model, double T, int N, std::uint64_t seed) {
    RngStream rng(seed, StreamTag::StickBreaking, 0);
    return stick_breaking_faces(model, T, N, rng);
}

} // namespace levy
