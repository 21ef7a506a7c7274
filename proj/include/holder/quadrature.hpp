#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace holder {

/// Composite Simpson weights for n uniformly spaced nodes on an interval of
/// length `length`. n must be odd and >= 3.
std::vector<double> simpson_weights(std::size_t n, double length);

/// Composite Simpson sum of uniformly spaced samples over [a, b].
double simpson(std::span<const double> samples, double a, double b);

/// n uniformly spaced nodes a, ..., b.
std::vector<double> uniform_nodes(double a, double b, std::size_t n);

}  // namespace holder
