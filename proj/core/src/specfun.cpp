#include "rateless/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace rateless {

namespace {

void check_argument(double x, const char* who) {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError(std::string(who) + ": argument must be >= 0, got " + std::to_string(x));
  }
}

// int_0^1 dv / (1 + x v^p)
double kernel_unit(double x, double p, const QuadratureSpec& spec) {
  return integrate([&](double v) { return 1.0 / (1.0 + x * std::pow(v, p)); }, 0.0, 1.0, spec)
      .value;
}

}  // namespace

Delta::Delta(double delta) : delta_(delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in (0, 1) (alpha > 2), got " + std::to_string(delta));
  }
}

Delta Delta::from_alpha(double alpha) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw DomainError("path-loss exponent must exceed 2, got " + std::to_string(alpha));
  }
  return Delta(2.0 / alpha);
}

double hyp2f1_neg_delta_excess(Delta delta, double x, const QuadratureSpec& spec) {
  check_argument(x, "hyp2f1_neg_delta");
  const double d = delta.value();
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::numeric_limits<double>::infinity();

  // Head of int_0^x delta y^-delta / (1 + y) dy over y <= min(x, 1), with
  // u = y^(1-delta) removing the endpoint singularity.
  const double p_head = 1.0 / (1.0 - d);
  const double head_scale = d / (1.0 - d);
  if (x <= 1.0) {
    // Further scale u = x^(1-delta) v so the integral is O(1):
    // x^delta * head = delta/(1-delta) * x * int_0^1 dv / (1 + x v^p).
    return head_scale * x * kernel_unit(x, p_head, spec);
  }

  // x > 1: head over [0, 1] plus the tail over [1, x]; the tail uses
  // w = y^-delta, giving int_{x^-delta}^1 dw / (1 + w^(1/delta)).
  const double head = head_scale * kernel_unit(1.0, p_head, spec);
  const double log_x = std::log(x);
  const double w_lo = std::exp(-d * log_x);
  const double p_tail = 1.0 / d;
  const double tail =
      integrate([&](double w) { return 1.0 / (1.0 + std::pow(w, p_tail)); }, w_lo, 1.0, spec)
          .value;
  return std::exp(d * log_x) * (head + tail);
}

double hyp2f1_neg_delta(Delta delta, double x, const QuadratureSpec& spec) {
  return 1.0 + hyp2f1_neg_delta_excess(delta, x, spec);
}

double hyp2f1_neg_delta_derivative(Delta delta, double x, const QuadratureSpec& spec) {
  check_argument(x, "hyp2f1_neg_delta_derivative");
  const double d = delta.value();
  if (std::isinf(x)) return 0.0;
  // F'(x) = delta/x * (F(x) - 1) + delta / (1 + x); near zero, (F - 1)/x is
  // taken from the scaled head integral directly.
  double excess_over_x;
  if (x <= 1.0) {
    excess_over_x = d / (1.0 - d) * kernel_unit(x, 1.0 / (1.0 - d), spec);
  } else {
    excess_over_x = hyp2f1_neg_delta_excess(delta, x, spec) / x;
  }
  return d * excess_over_x + d / (1.0 + x);
}

double hyp2f1_pos_delta(Delta delta, double x, const QuadratureSpec& spec) {
  check_argument(x, "hyp2f1_pos_delta");
  const double d = delta.value();
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;

  // u = y^delta: int_0^1 du / (1 + x u^(1/delta)).
  const double p = 1.0 / d;
  if (x <= 1.0) return kernel_unit(x, p, spec);

  // Knee at u0 = x^-delta, where x u^(1/delta) = 1. With u = u0 s:
  //   u0 * [ int_0^1 ds/(1+s^p) + int_0^{delta ln x} e^r/(1+e^{r p}) dr ].
  const double log_x = std::log(x);
  const double near = kernel_unit(1.0, p, spec);
  const double far = integrate(
                         [&](double r) {
                           // e^r / (1 + e^{rp}) written to stay finite for large r.
                           return std::exp(r - r * p) / (std::exp(-r * p) + 1.0);
                         },
                         0.0, d * log_x, spec)
                         .value;
  return std::exp(-d * log_x) * (near + far);
}

}  // namespace rateless
