#ifndef SELAB_QUADRATURE_HPP
#define SELAB_QUADRATURE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace selab {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  int max_subdivisions = 2000;
  double tail_cut = 8.0;  // truncation radius for unbounded domains, in scale units
  int initial_subdivisions = 1;

  void validate() const;
};

/// Thrown when the subdivision budget is exhausted; carries the partial estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial_estimate)
      : std::runtime_error(what), partial(partial_estimate) {}
  double partial;
};

/// Location/scale hint used to truncate infinite endpoints at
/// center +- tail_cut * scale.
struct ScaleHint {
  double center = 0.0;
  double scale = 1.0;
};

/// Adaptive Gauss-Kronrod (7-15) quadrature of f over (lo, hi).
///
/// Infinite endpoints require a ScaleHint; the domain is truncated at
/// tail_cut scale units around the hint center. Known discontinuities or
/// kinks of f can be passed as breakpoints; they seed the initial
/// subdivision so the estimate converges on each smooth piece.
/// Deterministic for fixed inputs.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {},
                 std::optional<ScaleHint> hint = std::nullopt,
                 const std::vector<double>& breakpoints = {});

}  // namespace selab

#endif  // SELAB_QUADRATURE_HPP
