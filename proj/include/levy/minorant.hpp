#pragma once

#include <vector>

#include "levy/pathsim.hpp"

namespace levy {

/// Convex piecewise-linear function on [0, span] given by its faces in
/// order of strictly increasing slope.
class PiecewiseLinearConvex {
public:
    PiecewiseLinearConvex() = default;
    /// Faces must have positive lengths and strictly increasing slopes.
    PiecewiseLinearConvex(std::vector<Face> faces, double origin = 0.0);

    /// Sorts faces by slope and merges equal slopes (stick-breaking output).
    static PiecewiseLinearConvex from_unordered_faces(std::vector<Face> faces, double origin = 0.0);
    /// From breakpoints 0 = t_0 < ... < t_F. Knots are kept verbatim, faces are
    /// their differences.
    static PiecewiseLinearConvex from_knots(std::vector<double> t, std::vector<double> x);

    const std::vector<Face>& faces() const { return faces_; }
    double origin() const { return origin_; }
    double span() const { return span_; }
    std::size_t face_count() const { return faces_.size(); }

    /// Breakpoint abscissae 0 = t_0 < ... < t_F = span and the values there.
    const std::vector<double>& knot_times() const { return knot_t_; }
    const std::vector<double>& knot_values() const { return knot_x_; }
    double value(double t) const;

private:
    void validate_slopes() const;

    std::vector<Face> faces_;
    std::vector<double> knot_t_{0.0}, knot_x_{0.0};
    double origin_ = 0.0;
    double span_ = 0.0;
};

/// Lower convex hull of {(t_i, x_i)} by one monotone-chain pass. Collinear
/// runs are merged into single faces (cross-product test, relative 1e-12).
PiecewiseLinearConvex convex_minorant(const std::vector<double>& t, const std::vector<double>& x);
PiecewiseLinearConvex convex_minorant(const PathSample& path);

double k_r(const PiecewiseLinearConvex& plc, double r);
/// Rejects r > 0.99.
double K_r(const PiecewiseLinearConvex& plc, double r);
/// Exact sup over 0 <= u < t <= T of |C_t - C_u| / (t-u)^r.
double holder_sup(const PiecewiseLinearConvex& plc, double r);

struct RSlopeStats {
    double r = 0.5;
    double k_r = 0.0;
    double K_r = 0.0;
    double holder_sup = 0.0;
    std::size_t face_count = 0;
};

/// k_r <= holder_sup <= K_r; throws ConsistencyError beyond 1e-12 slack.
RSlopeStats verify_sandwich(const PiecewiseLinearConvex& plc, double r);

/// C(t) = -2^r min{t,1} - r 2^r max{t-1,0} on [0,2].
PiecewiseLinearConvex holder_strict_fixture(double r = 0.5);

} // namespace levy
