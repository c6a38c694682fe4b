#include "levy/minorant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace levy {

namespace {

constexpr double kCollinearTol = 1e-12;
constexpr double kSandwichSlack = 1e-12;

void require_r(double r) {
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("r must lie in (0,1)");
}

// max over d in [0, face.length] of |rise + m d| / (len + d)^r with m the
// face slope. The interior candidate solves the stationarity condition.
double edge_max(double rise, const Face& face, double len, double r) {
    double best = std::abs(rise + face.height) / std::pow(len + face.length, r);
    if (len > 0.0) best = std::max(best, std::abs(rise) / std::pow(len, r));
    if (face.height != 0.0) {
        const double m = face.height / face.length;
        const double d = (r * rise / m - len) / (1.0 - r);
        if (d > 0.0 && d < face.length) best = std::max(best, std::abs(rise + m * d) / std::pow(len + d, r));
    }
    return best;
}

} // namespace

PiecewiseLinearConvex::PiecewiseLinearConvex(std::vector<Face> faces, double origin)
    : faces_(std::move(faces)), origin_(origin) {
    validate_slopes();
    knot_t_.assign(1, 0.0);
    knot_x_.assign(1, origin_);
    for (const Face& f : faces_) {
        knot_t_.push_back(knot_t_.back() + f.length);
        knot_x_.push_back(knot_x_.back() + f.height);
    }
    span_ = knot_t_.back();
}

void PiecewiseLinearConvex::validate_slopes() const {
    for (std::size_t i = 0; i < faces_.size(); ++i) {
        const Face& f = faces_[i];
        if (!(f.length > 0.0) || !std::isfinite(f.height))
            throw ValidationError("PiecewiseLinearConvex: faces need positive length and finite height");
        if (i > 0 && !(f.height / f.length > faces_[i - 1].height / faces_[i - 1].length))
            throw ValidationError("PiecewiseLinearConvex: slopes must be strictly increasing");
    }
}

PiecewiseLinearConvex PiecewiseLinearConvex::from_knots(std::vector<double> t, std::vector<double> x) {
    if (t.size() != x.size() || t.empty()) throw ValidationError("PiecewiseLinearConvex: knot arrays must be non-empty and equal in length");
    if (t.front() != 0.0) throw ValidationError("PiecewiseLinearConvex: first knot must be at t = 0");
    PiecewiseLinearConvex p;
    p.origin_ = x.front();
    for (std::size_t i = 1; i < t.size(); ++i) p.faces_.push_back({t[i] - t[i - 1], x[i] - x[i - 1]});
    p.validate_slopes();
    p.knot_t_ = std::move(t);
    p.knot_x_ = std::move(x);
    p.span_ = p.knot_t_.back();
    return p;
}

PiecewiseLinearConvex PiecewiseLinearConvex::from_unordered_faces(std::vector<Face> faces, double origin) {
    std::stable_sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        return a.height / a.length < b.height / b.length;
    });
    std::vector<Face> merged;
    for (const Face& f : faces) {
        if (!(f.length > 0.0)) continue;
        if (!merged.empty() && f.height / f.length == merged.back().height / merged.back().length) {
            merged.back().length += f.length;
            merged.back().height += f.height;
        } else {
            merged.push_back(f);
        }
    }
    return PiecewiseLinearConvex(std::move(merged), origin);
}

double PiecewiseLinearConvex::value(double t) const {
    if (t <= 0.0) return origin_;
    const auto it = std::lower_bound(knot_t_.begin(), knot_t_.end(), t);
    if (it == knot_t_.end()) return knot_x_.back();
    const std::size_t k = static_cast<std::size_t>(it - knot_t_.begin());
    if (*it == t) return knot_x_[k];
    const Face& f = faces_[k - 1];
    return knot_x_[k - 1] + f.height * (t - knot_t_[k - 1]) / f.length;
}

PiecewiseLinearConvex convex_minorant(const std::vector<double>& t, const std::vector<double>& x) {
    if (t.size() != x.size()) throw ValidationError("convex_minorant: t and x lengths differ");
    if (t.size() < 2) throw ValidationError("convex_minorant: need at least 2 points");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw ValidationError("convex_minorant: times must be strictly increasing");

    std::vector<std::size_t> hull;
    hull.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull.back();
            const double abx = t[b] - t[a], aby = x[b] - x[a];
            const double apx = t[i] - t[a], apy = x[i] - x[a];
            const double cross = abx * apy - aby * apx;
            const double scale = std::hypot(abx, aby) * std::hypot(apx, apy);
            if (cross <= kCollinearTol * scale) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    std::vector<double> kt, kx;
    kt.reserve(hull.size());
    kx.reserve(hull.size());
    for (std::size_t k : hull) {
        kt.push_back(t[k] - t.front());
        kx.push_back(x[k]);
    }
    PiecewiseLinearConvex plc;
    try {
        plc = PiecewiseLinearConvex::from_knots(std::move(kt), std::move(kx));
    } catch (const ValidationError&) {
        throw ConsistencyError("convex_minorant: hull produced non-increasing slopes");
    }
    return plc;
}

PiecewiseLinearConvex convex_minorant(const PathSample& path) {
    if (!path.times.empty() && path.times.front() != 0.0)
        throw ValidationError("convex_minorant: path must start at t = 0");
    return convex_minorant(path.times, path.values);
}

double k_r(const PiecewiseLinearConvex& plc, double r) {
    require_r(r);
    double best = 0.0;
    for (const Face& f : plc.faces()) best = std::max(best, std::abs(f.height) / std::pow(f.length, r));
    return best;
}

double K_r(const PiecewiseLinearConvex& plc, double r) {
    require_r(r);
    if (r > 0.99) throw ValidationError("K_r: r > 0.99 is not supported");
    const double q = 1.0 / (1.0 - r);
    std::vector<double> logs;
    for (const Face& f : plc.faces())
        if (f.height != 0.0) logs.push_back(q * (std::log(std::abs(f.height)) - r * std::log(f.length)));
    if (logs.empty()) return 0.0;
    const double m = *std::max_element(logs.begin(), logs.end());
    double s = 0.0;
    for (double v : logs) s += std::exp(v - m);
    return std::exp((1.0 - r) * (m + std::log(s)));
}

double holder_sup(const PiecewiseLinearConvex& plc, double r) {
    require_r(r);
    const auto& faces = plc.faces();
    const std::size_t F = faces.size();
    double best = 0.0;
    // Offsets are accumulated from each anchor knot so that tiny faces are
    // not lost to prefix-sum rounding.
    for (std::size_t i = 0; i <= F; ++i) {
        // u at knot i, t inside face j >= i.
        double len = 0.0, rise = 0.0;
        for (std::size_t j = i; j < F; ++j) {
            best = std::max(best, edge_max(rise, faces[j], len, r));
            len += faces[j].length;
            rise += faces[j].height;
        }
        // t at knot i, u inside face j < i; the face is traversed backwards.
        len = 0.0;
        rise = 0.0;
        for (std::size_t j = i; j-- > 0;) {
            best = std::max(best, edge_max(rise, faces[j], len, r));
            len += faces[j].length;
            rise += faces[j].height;
        }
    }
    return best;
}

RSlopeStats verify_sandwich(const PiecewiseLinearConvex& plc, double r) {
    RSlopeStats s;
    s.r = r;
    s.k_r = k_r(plc, r);
    s.holder_sup = holder_sup(plc, r);
    s.K_r = K_r(plc, r);
    s.face_count = plc.face_count();
    const bool ok_low = s.k_r - s.holder_sup <= kSandwichSlack * std::max(1.0, s.holder_sup);
    const bool ok_high = s.holder_sup - s.K_r <= kSandwichSlack * std::max(1.0, s.K_r);
    if (!ok_low || !ok_high) {
        std::ostringstream os;
        os.precision(17);
        os << "verify_sandwich: k_r=" << s.k_r << " sup=" << s.holder_sup << " K_r=" << s.K_r
           << " violates k_r <= sup <= K_r";
        throw ConsistencyError(os.str());
    }
    return s;
}

PiecewiseLinearConvex holder_strict_fixture(double r) {
    require_r(r);
    const double p = std::pow(2.0, r);
    return PiecewiseLinearConvex({{1.0, -p}, {1.0, -r * p}}, 0.0);
}

} // namespace levy
