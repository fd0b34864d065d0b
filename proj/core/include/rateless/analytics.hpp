#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "rateless/quadrature.hpp"
#include "rateless/specfun.hpp"

namespace rateless {

// K-bit packet, delay constraint of n_max channel uses, path-loss exponent alpha.
// crofton_c scales the Rayleigh link-distance model, D ~ Rayleigh(1/sqrt(2 pi c lambda));
// c = 1 gives the closed forms below exactly.
struct CodingParams {
  double k_bits = 75.0;
  int n_max = 50;
  double alpha = 3.0;
  double crofton_c = 1.0;

  void validate() const;
  Delta delta() const { return Delta::from_alpha(alpha); }
};

enum class CurveKind {
  CcdfUbTheorem1,
  CcdfTni,
  CcdfUbThinning,
  CcdfContinuous,
  PsFixed,
  PsRatelessLb,
  RateFixed,
  RateRateless,
};

std::string_view to_string(CurveKind kind);

struct AnalyticCurve {
  std::vector<double> t_grid;
  std::vector<double> values;
  CurveKind kind;
};

struct GainReport {
  double mu = 0.0;              // mean interferer transmission time
  double sir_gain_gamma = 0.0;  // N / mu
  double gs_lower_bound = 0.0;  // success-probability gain bound
  double gr = 0.0;              // rate gain, with expected_T_ub in the denominator
  double gbar_r = 0.0;          // continuous-transmission rate gain
};

// 2^(K/t) - 1, evaluated through expm1; +inf once 2^(K/t) overflows.
double theta_t(const CodingParams& params, double t);

// Upper bound on P(T > t) with every interferer active; 0 for t >= N.
double ccdf_ub_theorem1(const CodingParams& params, double t,
                        const QuadratureSpec& spec = {});

// Exact P(T > t) when interferers transmit continuously; same form as the bound.
double ccdf_continuous(const CodingParams& params, double t,
                       const QuadratureSpec& spec = {});

// P(T_ni > t): packet time against the nearest interferer only (always active).
// Not truncated at N.
double ccdf_tni(const CodingParams& params, double t, const QuadratureSpec& spec = {});

// mu = int_0^N P(T_ni > t) dt.
double mean_interferer_time_mu(const CodingParams& params, const QuadratureSpec& spec = {});

// Independent-thinning bound on P(T > t), with mean interferer time mu.
double ccdf_ub_thinning(const CodingParams& params, double t, double mu,
                        const QuadratureSpec& spec = {});

// Interferer-duration distribution for the exact independent-thinning CCDF.
// `cdf` must be a CDF on [0, N]; `breakpoints` marks its jumps or kinks.
struct InterfererCdf {
  std::function<double(double)> cdf;
  std::vector<double> breakpoints;
};

// The CCDF of T under independent thinning, evaluated with the exact
// expectation over interferer durations rather than its Jensen bound.
double ccdf_thinning_exact(const CodingParams& params, double t,
                           const InterfererCdf& interferer, const QuadratureSpec& spec = {});

// CDF of min(T_ni, N), the interferer law behind mu.
InterfererCdf tni_interferer_cdf(const CodingParams& params, const QuadratureSpec& spec = {});

double ps_fixed(const CodingParams& params, const QuadratureSpec& spec = {});
double rate_fixed(const CodingParams& params, const QuadratureSpec& spec = {});
double ps_rateless_lb(const CodingParams& params, double mu, const QuadratureSpec& spec = {});

// int_0^N ccdf_ub_thinning(t) dt, an upper bound on E[T].
double expected_T_ub(const CodingParams& params, double mu, const QuadratureSpec& spec = {});

// K * ps_rateless_lb / expected_T_ub. An estimate, not a bound in either direction.
double rate_rateless_estimate(const CodingParams& params, double mu,
                              const QuadratureSpec& spec = {});

// Continuous-transmission rate gain N / int_0^N ccdf_continuous(t) dt.
double gbar_r(const CodingParams& params, const QuadratureSpec& spec = {});

// All gain quantities for one parameter set. Throws std::logic_error if the
// ordering 1 <= gbar_r <= gr is violated beyond 1e-9.
GainReport gains_report(const CodingParams& params, const QuadratureSpec& spec = {});

// 400 log-spaced points on (0.1, N], ending exactly at N.
std::vector<double> default_t_grid(int n_max, std::size_t points = 400);

// Evaluates `kind` on `t_grid`. Kinds that need mu compute it once; rate and
// success-probability kinds treat each grid value as the delay constraint.
AnalyticCurve analytic_curve(CurveKind kind, const CodingParams& params,
                             std::span<const double> t_grid, const QuadratureSpec& spec = {});

// Closed forms for alpha = 4 (delta = 1/2), independent of the 2F1 kernels.
namespace alpha4 {

double hyp2f1_neg(double x);  // 1 + sqrt(x) atan(sqrt(x))
double hyp2f1_pos(double x);  // atan(sqrt(x)) / sqrt(x)
double mean_interferer_time_mu(const CodingParams& params, const QuadratureSpec& spec = {});
double gbar_r(const CodingParams& params, const QuadratureSpec& spec = {});

}  // namespace alpha4

}  // namespace rateless
