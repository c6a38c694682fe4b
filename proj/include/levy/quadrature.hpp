#pragma once

#include <functional>

namespace levy::quad {

/// Adaptive 31-point Gauss-Kronrod on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-9);

/// log \int_0^Z e^{-rate z} w(z) dz for rate > 0 and Z in (0, +inf].
/// w must be positive and slowly varying; contributions past z = 60/rate
/// are below double precision and dropped.
double log_laplace(double rate, double Z, const std::function<double(double)>& w);

} // namespace levy::quad
