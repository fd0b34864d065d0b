#include "rateless/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rateless {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_time(double t, const char* who) {
  if (!(t > 0.0)) {
    throw DomainError(std::string(who) + ": t must be > 0, got " + std::to_string(t));
  }
}

void check_mu(const CodingParams& params, double mu, const char* who) {
  if (!(mu > 0.0) || mu >= params.n_max) {
    throw DomainError(std::string(who) + ": mu must lie in (0, N), got " + std::to_string(mu));
  }
}

// P(SIR <= x) under the Rayleigh link-distance model: H / (c + H) with H = 2F1(-delta) - 1.
double outage_from_excess(double excess, double c) {
  if (std::isinf(excess)) return 1.0;
  return excess / (c + excess);
}

double outage(const CodingParams& params, double x, const QuadratureSpec& spec) {
  return outage_from_excess(hyp2f1_neg_delta_excess(params.delta(), x, spec), params.crofton_c);
}

// Integrals over (0, N] of CCDF-type integrands. The outer tolerance is
// looser than the inner one so inner quadrature noise does not stall
// the outer adaptive loop.
QuadratureSpec outer_spec(const QuadratureSpec& inner) {
  QuadratureSpec outer = inner;
  outer.abs_tol = std::max(inner.abs_tol, 1e-12) * 10.0;
  outer.rel_tol = std::max(inner.rel_tol, 1e-12) * 10.0;
  outer.max_subdivisions = std::max(inner.max_subdivisions, 200);
  return outer;
}

QuadratureSpec inner_spec(const QuadratureSpec& spec) {
  QuadratureSpec inner = spec;
  inner.abs_tol = spec.abs_tol * 1e-2;
  inner.rel_tol = spec.rel_tol * 1e-2;
  return inner;
}

}  // namespace

void CodingParams::validate() const {
  if (!(k_bits > 0.0) || !std::isfinite(k_bits)) {
    throw DomainError("CodingParams: k_bits must be positive");
  }
  if (n_max < 1) throw DomainError("CodingParams: n_max must be >= 1");
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw DomainError("CodingParams: alpha must exceed 2");
  }
  if (!(crofton_c > 0.0) || !std::isfinite(crofton_c)) {
    throw DomainError("CodingParams: crofton_c must be positive");
  }
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::CcdfUbTheorem1: return "ccdf_ub_thm1";
    case CurveKind::CcdfTni: return "ccdf_tni";
    case CurveKind::CcdfUbThinning: return "ccdf_ub_thinning";
    case CurveKind::CcdfContinuous: return "ccdf_continuous";
    case CurveKind::PsFixed: return "ps_fixed";
    case CurveKind::PsRatelessLb: return "ps_rateless_lb";
    case CurveKind::RateFixed: return "rate_fixed";
    case CurveKind::RateRateless: return "rate_rateless";
  }
  return "unknown";
}

double theta_t(const CodingParams& params, double t) {
  check_time(t, "theta_t");
  const double exponent = params.k_bits / t * std::numbers::ln2;
  if (exponent > std::log(std::numeric_limits<double>::max())) return kInf;
  return std::expm1(exponent);
}

double ccdf_ub_theorem1(const CodingParams& params, double t, const QuadratureSpec& spec) {
  params.validate();
  check_time(t, "ccdf_ub_theorem1");
  if (t >= params.n_max) return 0.0;
  return outage(params, theta_t(params, t), spec);
}

double ccdf_continuous(const CodingParams& params, double t, const QuadratureSpec& spec) {
  return ccdf_ub_theorem1(params, t, spec);
}

double ccdf_tni(const CodingParams& params, double t, const QuadratureSpec& spec) {
  params.validate();
  check_time(t, "ccdf_tni");
  return 1.0 - hyp2f1_pos_delta(params.delta(), theta_t(params, t), spec);
}

double mean_interferer_time_mu(const CodingParams& params, const QuadratureSpec& spec) {
  params.validate();
  const auto inner = inner_spec(spec);
  return integrate([&](double t) { return ccdf_tni(params, t, inner); }, 0.0,
                   static_cast<double>(params.n_max), outer_spec(spec))
      .value;
}

double ccdf_ub_thinning(const CodingParams& params, double t, double mu,
                        const QuadratureSpec& spec) {
  params.validate();
  check_time(t, "ccdf_ub_thinning");
  check_mu(params, mu, "ccdf_ub_thinning");
  if (t >= params.n_max) return 0.0;
  const double theta = theta_t(params, t);
  return outage(params, theta * std::min(1.0, mu / t), spec);
}

InterfererCdf tni_interferer_cdf(const CodingParams& params, const QuadratureSpec& spec) {
  params.validate();
  const double n = params.n_max;
  return {[params, spec, n](double s) {
            if (s <= 0.0) return 0.0;
            if (s >= n) return 1.0;
            return hyp2f1_pos_delta(params.delta(), theta_t(params, s), spec);
          },
          {n}};
}

double ccdf_thinning_exact(const CodingParams& params, double t, const InterfererCdf& interferer,
                           const QuadratureSpec& spec) {
  params.validate();
  check_time(t, "ccdf_thinning_exact");
  if (!interferer.cdf) throw DomainError("ccdf_thinning_exact: empty interferer CDF");
  if (t >= params.n_max) return 0.0;

  // Reject non-monotone or out-of-range CDFs on a probe grid over [0, t].
  constexpr int kProbes = 64;
  double previous = 0.0;
  for (int i = 0; i <= kProbes; ++i) {
    const double s = t * i / kProbes;
    const double f = interferer.cdf(s);
    if (!(f >= 0.0 && f <= 1.0) || f < previous - 1e-12) {
      throw DomainError("ccdf_thinning_exact: interferer CDF is not a valid CDF near s = " +
                        std::to_string(s));
    }
    previous = f;
  }

  const double theta = theta_t(params, t);
  if (std::isinf(theta)) return 1.0;
  const Delta delta = params.delta();

  // H(t) = E[2F1(-delta; theta eta) - 1] with eta = min(1, Tbar / t). Integrating
  // by parts against dF gives int_0^t (1 - F(s)) (theta/t) 2F1'(theta s / t) ds.
  const auto inner = inner_spec(spec);
  const double h =
      integrate(
          [&](double s) {
            const double survival = 1.0 - interferer.cdf(s);
            if (survival <= 0.0) return 0.0;
            return survival * theta / t *
                   hyp2f1_neg_delta_derivative(delta, theta * s / t, inner);
          },
          0.0, t, outer_spec(spec), interferer.breakpoints)
          .value;
  return outage_from_excess(h, params.crofton_c);
}

double ps_fixed(const CodingParams& params, const QuadratureSpec& spec) {
  params.validate();
  const double theta = theta_t(params, params.n_max);
  return 1.0 - outage(params, theta, spec);
}

double rate_fixed(const CodingParams& params, const QuadratureSpec& spec) {
  return params.k_bits / params.n_max * ps_fixed(params, spec);
}

double ps_rateless_lb(const CodingParams& params, double mu, const QuadratureSpec& spec) {
  params.validate();
  check_mu(params, mu, "ps_rateless_lb");
  const double n = params.n_max;
  const double theta = theta_t(params, n);
  return 1.0 - outage(params, theta * std::min(1.0, mu / n), spec);
}

double expected_T_ub(const CodingParams& params, double mu, const QuadratureSpec& spec) {
  params.validate();
  check_mu(params, mu, "expected_T_ub");
  const auto inner = inner_spec(spec);
  const double n = params.n_max;
  const std::array<double, 1> kink{mu};
  return integrate([&](double t) { return ccdf_ub_thinning(params, t, mu, inner); }, 0.0, n,
                   outer_spec(spec), kink)
      .value;
}

double rate_rateless_estimate(const CodingParams& params, double mu, const QuadratureSpec& spec) {
  return params.k_bits * ps_rateless_lb(params, mu, spec) / expected_T_ub(params, mu, spec);
}

double gbar_r(const CodingParams& params, const QuadratureSpec& spec) {
  params.validate();
  const auto inner = inner_spec(spec);
  const double n = params.n_max;
  const double mean_t =
      integrate([&](double t) { return ccdf_continuous(params, t, inner); }, 0.0, n,
                outer_spec(spec))
          .value;
  return n / mean_t;
}

GainReport gains_report(const CodingParams& params, const QuadratureSpec& spec) {
  params.validate();
  GainReport report;
  const double n = params.n_max;
  report.mu = mean_interferer_time_mu(params, spec);
  report.sir_gain_gamma = n / report.mu;
  report.gs_lower_bound = ps_rateless_lb(params, report.mu, spec) / ps_fixed(params, spec);
  report.gr = report.gs_lower_bound * n / expected_T_ub(params, report.mu, spec);
  report.gbar_r = gbar_r(params, spec);

  constexpr double kSlack = 1e-9;
  if (!(report.gbar_r >= 1.0 - kSlack && report.gbar_r <= report.gr * (1.0 + kSlack))) {
    throw std::logic_error("gains_report: ordering 1 <= gbar_r <= gr violated (gbar_r = " +
                           std::to_string(report.gbar_r) + ", gr = " +
                           std::to_string(report.gr) + ")");
  }
  return report;
}

std::vector<double> default_t_grid(int n_max, std::size_t points) {
  if (n_max < 1) throw DomainError("default_t_grid: n_max must be >= 1");
  if (points < 2) throw DomainError("default_t_grid: need at least 2 points");
  constexpr double kStart = 0.1;
  std::vector<double> grid(points);
  const double log_ratio = std::log(n_max / kStart);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = kStart * std::exp(log_ratio * static_cast<double>(i + 1) / points);
  }
  grid.back() = n_max;
  return grid;
}

AnalyticCurve analytic_curve(CurveKind kind, const CodingParams& params,
                             std::span<const double> t_grid, const QuadratureSpec& spec) {
  params.validate();
  AnalyticCurve curve{{t_grid.begin(), t_grid.end()}, {}, kind};
  curve.values.reserve(t_grid.size());
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw DomainError("analytic_curve: grid must be strictly increasing");
    }
  }

  auto with_n = [&](double value) {
    const double rounded = std::round(value);
    if (rounded < 1.0 || std::abs(rounded - value) > 1e-9) {
      throw DomainError("analytic_curve: delay-constraint grid needs integer values >= 1");
    }
    CodingParams p = params;
    p.n_max = static_cast<int>(rounded);
    return p;
  };

  double mu = 0.0;
  if (kind == CurveKind::CcdfUbThinning) mu = mean_interferer_time_mu(params, spec);

  for (double t : t_grid) {
    double v = 0.0;
    switch (kind) {
      case CurveKind::CcdfUbTheorem1: v = ccdf_ub_theorem1(params, t, spec); break;
      case CurveKind::CcdfContinuous: v = ccdf_continuous(params, t, spec); break;
      case CurveKind::CcdfTni: v = ccdf_tni(params, t, spec); break;
      case CurveKind::CcdfUbThinning: v = ccdf_ub_thinning(params, t, mu, spec); break;
      case CurveKind::PsFixed: v = ps_fixed(with_n(t), spec); break;
      case CurveKind::RateFixed: v = rate_fixed(with_n(t), spec); break;
      case CurveKind::PsRatelessLb: {
        const auto p = with_n(t);
        v = ps_rateless_lb(p, mean_interferer_time_mu(p, spec), spec);
        break;
      }
      case CurveKind::RateRateless: {
        const auto p = with_n(t);
        v = rate_rateless_estimate(p, mean_interferer_time_mu(p, spec), spec);
        break;
      }
    }
    curve.values.push_back(v);
  }
  return curve;
}

namespace alpha4 {

double hyp2f1_neg(double x) {
  if (std::isinf(x)) return kInf;
  const double r = std::sqrt(x);
  return 1.0 + r * std::atan(r);
}

double hyp2f1_pos(double x) {
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double r = std::sqrt(x);
  return std::atan(r) / r;
}

namespace {
void require_alpha4(const CodingParams& params) {
  params.validate();
  if (params.alpha != 4.0) throw DomainError("alpha4 closed forms need alpha == 4");
}
}  // namespace

double mean_interferer_time_mu(const CodingParams& params, const QuadratureSpec& spec) {
  require_alpha4(params);
  return integrate([&](double t) { return 1.0 - hyp2f1_pos(theta_t(params, t)); }, 0.0,
                   static_cast<double>(params.n_max), spec)
      .value;
}

double gbar_r(const CodingParams& params, const QuadratureSpec& spec) {
  require_alpha4(params);
  const double n = params.n_max;
  const double c = params.crofton_c;
  const double complement =
      integrate(
          [&](double t) {
            const double f = hyp2f1_neg(theta_t(params, t));
            return std::isinf(f) ? 0.0 : c / (c + f - 1.0);
          },
          0.0, n, spec)
          .value;
  return 1.0 / (1.0 - complement / n);
}

}  // namespace alpha4

}  // namespace rateless
