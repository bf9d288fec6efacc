#include "asyncbcd/sampling.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <stdexcept>

namespace asyncbcd {

std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  boost::random::uniform_int_distribution<std::uint64_t> dist(lo, hi);
  return dist(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  boost::random::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

double standard_normal(Rng& rng) {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

std::vector<Vector> sample_box(std::size_t dim, double lo, double hi, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> points(count, Vector(dim));
  for (auto& p : points)
    for (auto& v : p) v = uniform_real(rng, lo, hi);
  return points;
}

std::vector<Vector> sample_ball(std::size_t dim, double radius, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> points(count, Vector(dim));
  for (auto& p : points) {
    double r2 = 0.0;
    do {
      for (auto& v : p) v = standard_normal(rng);
      r2 = squared_norm(p);
    } while (r2 == 0.0);
    // Uniform in the ball: direction from a Gaussian, radius ~ U^(1/dim).
    const double scale = radius * std::pow(uniform_real(rng, 0.0, 1.0), 1.0 / static_cast<double>(dim)) / std::sqrt(r2);
    for (auto& v : p) v *= scale;
  }
  return points;
}

std::vector<Vector> sample_gaussian(std::size_t dim, double scale, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> points(count, Vector(dim));
  for (auto& p : points)
    for (auto& v : p) v = scale * standard_normal(rng);
  return points;
}

std::vector<Vector> grid_1d(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<Vector> points;
  points.reserve(count);
  const double h = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) points.push_back({lo + h * static_cast<double>(k)});
  return points;
}

std::vector<Vector> grid_2d(double lo, double hi, std::size_t per_axis) {
  const auto axis = grid_1d(lo, hi, per_axis);
  std::vector<Vector> points;
  points.reserve(per_axis * per_axis);
  for (const auto& a : axis)
    for (const auto& b : axis) points.push_back({a[0], b[0]});
  return points;
}

}  // namespace asyncbcd
