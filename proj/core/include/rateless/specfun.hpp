#pragma once

#include "rateless/quadrature.hpp"

namespace rateless {

// delta = 2 / alpha, restricted to (0, 1), i.e. path-loss exponent alpha > 2.
class Delta {
 public:
  explicit Delta(double delta);
  static Delta from_alpha(double alpha);

  double value() const { return delta_; }
  double alpha() const { return 2.0 / delta_; }

 private:
  double delta_;
};

// 2F1([1, -delta]; 1 - delta; -x) for x >= 0, evaluated as
// 1 + x^delta * int_0^x delta / ((1 + y) y^delta) dy.
// Returns +inf for x = +inf (the value grows like x^delta).
double hyp2f1_neg_delta(Delta delta, double x, const QuadratureSpec& spec = {});

// hyp2f1_neg_delta(delta, x) - 1, computed without cancellation for small x.
double hyp2f1_neg_delta_excess(Delta delta, double x, const QuadratureSpec& spec = {});

// d/dx hyp2f1_neg_delta(delta, x).
double hyp2f1_neg_delta_derivative(Delta delta, double x, const QuadratureSpec& spec = {});

// 2F1([1, delta]; 1 + delta; -x) = int_0^1 delta y^(delta-1) / (1 + x y) dy for x >= 0.
// Returns 0 for x = +inf.
double hyp2f1_pos_delta(Delta delta, double x, const QuadratureSpec& spec = {});

}  // namespace rateless
