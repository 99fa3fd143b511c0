#include "fsosn/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fsosn {

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;
  long evaluations = 0;
  bool converged = true;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // Force a few levels so narrow features inside the first samples are not missed.
    if (depth >= 6 && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth) {
      converged = false;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (a == b) return {0.0, true, 0};
  Simpson s{f, max_depth};
  const double fa = s.eval(a);
  const double fb = s.eval(b);
  const double fm = s.eval(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double v = s.recurse(a, b, fa, fm, fb, whole, abs_tol, 0);
  return {v, s.converged && std::isfinite(v), s.evaluations};
}

QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  std::span<const double> breakpoints, double abs_tol,
                                  int max_depth) {
  if (breakpoints.size() < 2) throw std::invalid_argument("need at least two breakpoints");
  QuadratureResult total;
  const double share = abs_tol / static_cast<double>(breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const auto part = adaptive_simpson(f, breakpoints[i], breakpoints[i + 1], share, max_depth);
    total.value += part.value;
    total.converged = total.converged && part.converged;
    total.evaluations += part.evaluations;
  }
  return total;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace fsosn
