#pragma once

#include <utility>
#include <vector>

namespace ebitsim {

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
};

/// Least-squares fit of log2(y) against log2(x).
ScalingFit fit_log2_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace ebitsim
