#include "ebitsim/scaling.hpp"

#include <cmath>
#include <stdexcept>

namespace ebitsim {

ScalingFit fit_log2_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("fit_log2_slope: need at least two points");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(points.size());
    std::vector<double> xs, ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    for (const auto& [x, y] : points) {
        if (x <= 0.0 || y <= 0.0)
            throw std::invalid_argument("fit_log2_slope: points must be positive");
        xs.push_back(std::log2(x));
        ys.push_back(std::log2(y));
        sx += xs.back();
        sy += ys.back();
        sxx += xs.back() * xs.back();
        sxy += xs.back() * ys.back();
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_log2_slope: degenerate x values");

    ScalingFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.residuals.reserve(points.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.residuals.push_back(ys[i] - (fit.slope * xs[i] + fit.intercept));
    return fit;
}

}  // namespace ebitsim
