#include "bcuav/fuzzy/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcuav::fuzzy {

FuzzyPartition::FuzzyPartition(const std::array<double, kLabelCount>& centers) : centers_(centers) {
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    if (!std::isfinite(centers_[i])) throw std::invalid_argument("partition centers must be finite");
    if (i > 0 && !(centers_[i] > centers_[i - 1])) {
      throw std::invalid_argument("partition centers must be strictly increasing");
    }
  }
}

FuzzyPartition FuzzyPartition::uniform(double lo, double hi) {
  std::array<double, kLabelCount> centers{};
  const double step = (hi - lo) / static_cast<double>(kLabelCount - 1);
  for (std::size_t i = 0; i < kLabelCount; ++i) centers[i] = lo + step * static_cast<double>(i);
  centers.back() = hi;
  return FuzzyPartition(centers);
}

MembershipVector FuzzyPartition::fuzzify(double x) const {
  MembershipVector mu{};
  const double clamped = std::clamp(x, lo(), hi());
  // Index of the last center not above x, capped so that i + 1 is valid.
  std::size_t i = 0;
  while (i + 2 < kLabelCount && clamped >= centers_[i + 1]) ++i;
  const double t = (clamped - centers_[i]) / (centers_[i + 1] - centers_[i]);
  mu[i] = 1.0 - t;
  mu[i + 1] = t;
  return mu;
}

FuzzyPartition::Triangle FuzzyPartition::consequent(Label label) const {
  const std::size_t i = index_of(label);
  const double peak = centers_[i];
  const double left = i > 0 ? centers_[i - 1] : peak - (centers_[1] - centers_[0]);
  const double right = i + 1 < kLabelCount ? centers_[i + 1] : peak + (centers_[i] - centers_[i - 1]);
  return {left, peak, right};
}

double FuzzyPartition::consequent_membership(Label label, double x) const {
  const Triangle tri = consequent(label);
  if (x <= tri.left || x >= tri.right) return 0.0;
  if (x <= tri.peak) return (x - tri.left) / (tri.peak - tri.left);
  return (tri.right - x) / (tri.right - tri.peak);
}

}  // namespace bcuav::fuzzy
