#pragma once

#include <functional>
#include <span>

namespace fsosn {

struct QuadratureResult {
  double value{};
  bool converged{true};
  long evaluations{};
};

/// Adaptive Simpson on [a, b] with an absolute error target.
/// `converged` is false when any subinterval hit `max_depth` before meeting tolerance.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth = 48);

/// Same, summed over consecutive breakpoints; tolerance is shared evenly.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  std::span<const double> breakpoints, double abs_tol,
                                  int max_depth = 48);

/// Pairwise (cascade) summation; result does not depend on how work was scheduled.
double pairwise_sum(std::span<const double> values);

}  // namespace fsosn
