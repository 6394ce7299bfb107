#pragma once

#include <span>
#include <vector>

namespace roadgen {

struct Summary {
  int n = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) standard deviation; 0 when n < 2
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;

  double iqr() const { return q3 - q1; }
};

/// Quantile with linear interpolation between order statistics; `sorted` must be ascending.
double quantile(std::span<const double> sorted, double p);

/// Throws std::invalid_argument on empty input.
Summary summarize_values(std::vector<double> values);

}  // namespace roadgen
