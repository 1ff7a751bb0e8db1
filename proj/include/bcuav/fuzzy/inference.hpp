#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

#include "bcuav/fuzzy/partition.hpp"
#include "bcuav/fuzzy/rule_table.hpp"

namespace bcuav::fuzzy {

/// Grid size used by `centroid` when sampling a membership shape.
inline constexpr std::size_t kCentroidResolution = 1001;

/// Below this aggregated area the centroid is undefined.
inline constexpr double kMinCentroidArea = 1e-12;

class ZeroActivation : public std::runtime_error {
 public:
  ZeroActivation() : std::runtime_error("fuzzy output has zero aggregated area") {}
};

/// Centroid of a membership shape sampled on a uniform grid spanning [lo, hi]
/// (trapezoid rule). Throws ZeroActivation when the area is negligible and
/// std::invalid_argument for fewer than two samples or lo >= hi.
double centroid(std::span<const double> samples, double lo, double hi);

/// Per-consequent firing strengths after max aggregation.
using Activation = MembershipVector;

/// Membership of the clipped, max-aggregated consequent shape at x.
double aggregated_membership(const FuzzyPartition& output, const Activation& activation, double x);

/// Exact centroid of the clipped, max-aggregated consequent shape. The shape
/// is piecewise linear; every kink (feet, peaks, clip corners, crossings
/// between sets) is located and each linear piece is integrated in closed form.
double aggregated_centroid(const FuzzyPartition& output, const Activation& activation);

/// Mamdani engine with min for rule AND and max for aggregation.
class MamdaniEngine {
 public:
  MamdaniEngine(FuzzyPartition error, FuzzyPartition error_rate, FuzzyPartition output)
      : error_(error), error_rate_(error_rate), output_(output) {}

  /// Standard layout: all three variables on [-3, 3] with unit spacing.
  static MamdaniEngine normalized();

  Activation activations(double error, double error_rate, const RuleTable& table) const;

  /// Crisp output for normalized (error, error_rate); always inside the
  /// output universe.
  double infer(double error, double error_rate, const RuleTable& table) const;

  const FuzzyPartition& error_partition() const { return error_; }
  const FuzzyPartition& error_rate_partition() const { return error_rate_; }
  const FuzzyPartition& output_partition() const { return output_; }

 private:
  FuzzyPartition error_;
  FuzzyPartition error_rate_;
  FuzzyPartition output_;
};

}  // namespace bcuav::fuzzy
