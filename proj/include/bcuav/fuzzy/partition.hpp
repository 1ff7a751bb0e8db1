#pragma once

#include <array>

#include "bcuav/fuzzy/labels.hpp"

namespace bcuav::fuzzy {

/// Degree of membership of one crisp value in each of the seven labels.
using MembershipVector = std::array<double, kLabelCount>;

/// Seven triangular sets over a closed universe [lo, hi].
///
/// Set i peaks at centers[i] and has its feet on the neighbouring centers, so
/// any point of the universe belongs to at most two adjacent sets and the
/// degrees sum to one. When used as antecedents the two outer sets saturate
/// (shoulders). When used as consequents every set is a full isosceles-style
/// triangle; the outer ones extend one spacing past the universe so that their
/// centroid sits on their center.
class FuzzyPartition {
 public:
  /// Throws std::invalid_argument unless centers are finite and strictly increasing.
  explicit FuzzyPartition(const std::array<double, kLabelCount>& centers);

  /// Seven evenly spaced centers from lo to hi.
  static FuzzyPartition uniform(double lo, double hi);

  double lo() const { return centers_.front(); }
  double hi() const { return centers_.back(); }
  double center(Label label) const { return centers_[index_of(label)]; }
  const std::array<double, kLabelCount>& centers() const { return centers_; }

  /// Antecedent membership. x is clamped into [lo, hi] first.
  MembershipVector fuzzify(double x) const;

  /// Left foot, peak and right foot of the consequent triangle for `label`.
  struct Triangle {
    double left;
    double peak;
    double right;
  };
  Triangle consequent(Label label) const;

  /// Consequent membership of `label` at x (zero outside its feet).
  double consequent_membership(Label label, double x) const;

  /// Interval outside which every consequent set is zero.
  double support_lo() const { return consequent(Label::NB).left; }
  double support_hi() const { return consequent(Label::PB).right; }

 private:
  std::array<double, kLabelCount> centers_;
};

}  // namespace bcuav::fuzzy
