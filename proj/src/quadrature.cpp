#include "holder/quadrature.hpp"

#include <stdexcept>

namespace holder {

std::vector<double> simpson_weights(std::size_t n, double length) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("Simpson rule needs an odd node count >= 3");
  const double h = length / static_cast<double>(n - 1);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = (i % 2 == 1) ? 4.0 : 2.0;
  w.front() = 1.0;
  w.back() = 1.0;
  for (double& wi : w) wi *= h / 3.0;
  return w;
}

double simpson(std::span<const double> samples, double a, double b) {
  const auto w = simpson_weights(samples.size(), b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) sum += w[i] * samples[i];
  return sum;
}

std::vector<double> uniform_nodes(double a, double b, std::size_t n) {
  if (n < 2) throw std::invalid_argument("need at least two nodes");
  std::vector<double> x(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = a + static_cast<double>(i) * h;
  x.back() = b;
  return x;
}

}  // namespace holder
