#pragma once

#include <optional>

#include "binopt/types.hpp"

namespace binopt {

struct MetricReport {
  std::optional<double> acc;
  std::optional<double> ber;
  std::optional<double> gap_percent;
  double objective = 0.0;
  double time_secs = 0.0;
};

/// 1 - ||x - x*|| / ||x*||. Not clamped; can be negative.
double accuracy(const Vector& x, const Vector& x_star);

/// Share of positions where two binary vectors differ.
double bit_error_rate(const Vector& x, const Vector& x_star);

/// |obj - lowest| / |lowest| * 100.
double gap(double obj_value, double lowest);

}  // namespace binopt
