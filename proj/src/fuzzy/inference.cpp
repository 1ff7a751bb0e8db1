#include "bcuav/fuzzy/inference.hpp"

#include <algorithm>
#include <vector>

namespace bcuav::fuzzy {

double centroid(std::span<const double> samples, double lo, double hi) {
  if (samples.size() < 2 || !(hi > lo)) throw std::invalid_argument("centroid needs >= 2 samples over lo < hi");
  const double h = (hi - lo) / static_cast<double>(samples.size() - 1);
  double area = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double w = (i == 0 || i + 1 == samples.size()) ? 0.5 : 1.0;
    const double x = lo + h * static_cast<double>(i);
    area += w * samples[i];
    moment += w * x * samples[i];
  }
  area *= h;
  moment *= h;
  if (area < kMinCentroidArea) throw ZeroActivation();
  return moment / area;
}

double aggregated_membership(const FuzzyPartition& output, const Activation& activation, double x) {
  double mu = 0.0;
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    if (activation[i] <= 0.0) continue;
    mu = std::max(mu, std::min(activation[i], output.consequent_membership(label_at(i), x)));
  }
  return mu;
}

namespace {

struct Line {
  double slope;
  double intercept;
};

}  // namespace

double aggregated_centroid(const FuzzyPartition& output, const Activation& activation) {
  const double lo = output.support_lo();
  const double hi = output.support_hi();

  std::vector<double> knots = {lo, hi};
  std::vector<std::vector<Line>> lines;
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    const double a = activation[i];
    if (a <= 0.0) continue;
    const auto tri = output.consequent(label_at(i));
    const double rise = 1.0 / (tri.peak - tri.left);
    const double fall = 1.0 / (tri.right - tri.peak);
    knots.insert(knots.end(), {tri.left, tri.peak, tri.right});
    knots.push_back(tri.left + a * (tri.peak - tri.left));
    knots.push_back(tri.right - a * (tri.right - tri.peak));
    lines.push_back({{rise, -rise * tri.left}, {-fall, fall * tri.right}, {0.0, a}});
  }
  if (lines.empty()) throw ZeroActivation();

  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      for (const Line& p : lines[i]) {
        for (const Line& q : lines[j]) {
          if (p.slope == q.slope) continue;
          const double x = (q.intercept - p.intercept) / (p.slope - q.slope);
          if (x > lo && x < hi) knots.push_back(x);
        }
      }
    }
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  // Between consecutive knots the shape is linear, so trapezoid moments are exact.
  double area = 0.0;
  double moment = 0.0;
  double x0 = knots.front();
  double f0 = aggregated_membership(output, activation, x0);
  for (std::size_t k = 1; k < knots.size(); ++k) {
    const double x1 = knots[k];
    const double f1 = aggregated_membership(output, activation, x1);
    const double width = x1 - x0;
    area += 0.5 * width * (f0 + f1);
    moment += width / 6.0 * (x0 * (2.0 * f0 + f1) + x1 * (f0 + 2.0 * f1));
    x0 = x1;
    f0 = f1;
  }
  if (area < kMinCentroidArea) throw ZeroActivation();
  return moment / area;
}

MamdaniEngine MamdaniEngine::normalized() {
  const auto p = FuzzyPartition::uniform(-3.0, 3.0);
  return MamdaniEngine(p, p, p);
}

Activation MamdaniEngine::activations(double error, double error_rate, const RuleTable& table) const {
  const MembershipVector mu_e = error_.fuzzify(error);
  const MembershipVector mu_ec = error_rate_.fuzzify(error_rate);
  Activation act{};
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    if (mu_e[i] <= 0.0) continue;
    for (std::size_t j = 0; j < kLabelCount; ++j) {
      if (mu_ec[j] <= 0.0) continue;
      const double strength = std::min(mu_e[i], mu_ec[j]);
      const std::size_t out = index_of(table.lookup(label_at(i), label_at(j)));
      act[out] = std::max(act[out], strength);
    }
  }
  return act;
}

double MamdaniEngine::infer(double error, double error_rate, const RuleTable& table) const {
  const double c = aggregated_centroid(output_, activations(error, error_rate, table));
  return std::clamp(c, output_.lo(), output_.hi());
}

}  // namespace bcuav::fuzzy
