#include "levy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace levy::quad {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (!(b > a)) return 0.0;
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel_tol,
                                                                         &err);
}

double log_laplace(double rate, double Z, const std::function<double(double)>& w) {
    if (!(Z > 0.0)) return -std::numeric_limits<double>::infinity();
    const double upper = std::min(Z, 60.0 / rate);
    // Panels at multiples of the decay length keep each GK rule well conditioned.
    const std::array<double, 6> marks{0.0, 0.5 / rate, 2.0 / rate, 8.0 / rate, 24.0 / rate,
                                      60.0 / rate};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        const double a = marks[i];
        const double b = std::min(marks[i + 1], upper);
        if (b <= a) break;
        total += integrate([&](double z) { return std::exp(-rate * z) * w(z); }, a, b);
    }
    return std::log(total);
}

} // namespace levy::quad
