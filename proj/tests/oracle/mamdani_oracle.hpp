#pragma once

#include "oracle/golden.hpp"

namespace oracle {

// Brute-force Mamdani reference on the normalized layout: seven unit-spaced
// triangles on [-3, 3], shoulder antecedents, full-triangle consequents,
// min AND, max aggregation, centroid by a 10,001-point trapezoid over [-4, 4].
double antecedent(int label, double x);
double consequent(int label, double x);
double infer(const Table& table, double e, double ec);

inline constexpr int kQuadraturePoints = 10001;

}  // namespace oracle
