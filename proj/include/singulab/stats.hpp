#pragma once

#include <span>
#include <vector>

namespace singulab::stats {

double median(std::vector<double> values);

/// y ≈ slope·x + intercept in the least-squares sense.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

double rms(std::span<const double> residuals);

}  // namespace singulab::stats
