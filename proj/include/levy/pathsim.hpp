#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levy/levy_model.hpp"
#include "levy/rng.hpp"

namespace levy {

struct PathSample {
    std::vector<double> times;
    std::vector<double> values;
    std::string model_label;
    std::uint64_t seed = 0;
};

struct Face {
    double length;
    double height;
};

struct FaceSample {
    std::vector<Face> faces;
    double horizon = 1.0;
    int truncation = 0;
    double residual = 0.0;  // T - sum of lengths
};

/// Whether marginal_sample supports the model's jump measure.
bool is_samplable(const LevyModel& model);

/// One exact draw of X_t. TruncatedStable is sampled as the untruncated
/// stable law with the same small-jump behaviour (Chambers-Mallows-Stuck).
/// Throws CapabilityError for Example15, LogTemperedStable and TabulatedTail.
double marginal_sample(const LevyModel& model, double t, RngStream& rng);

/// Random-walk skeleton on the uniform grid of n_steps steps over [0,T].
PathSample sample_path(const LevyModel& model, double T, int n_steps, std::uint64_t seed);

/// Uniform stick breaking of [0,T] with heights drawn from the marginal law.
FaceSample stick_breaking_faces(const LevyModel& model, double T, int N, std::uint64_t seed);
/// Same, driven by a caller-supplied stream.
FaceSample stick_breaking_faces(const LevyModel& model, double T, int N, RngStream& rng);

} // namespace levy
