#include "tropharm/collar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "tropharm/error.hpp"

namespace tropharm {

namespace {
void require_positive(double l) {
  if (!(l > 0.0) || !std::isfinite(l)) fail(ErrorCode::NonPositiveLength, "geodesic length must be positive");
}
}  // namespace

double collar_width(double l) {
  require_positive(l);
  return std::asinh(1.0 / std::sinh(0.5 * l));
}

double collar_modulus(double l) {
  require_positive(l);
  // 1/cosh(arcsinh(1/sinh(l/2))) = tanh(l/2); the closed form is stable for tiny l.
  return (2.0 / l) * std::acos(std::tanh(0.5 * l));
}

CollarRow collar_row(double l) {
  const double m = collar_modulus(l);
  return {l, collar_width(l), m, l * m};
}

std::vector<CollarRow> collar_sweep(int first_exponent, int last_exponent) {
  std::vector<CollarRow> rows;
  const int step = first_exponent <= last_exponent ? 1 : -1;
  for (int k = first_exponent;; k += step) {
    rows.push_back(collar_row(std::pow(10.0, -k)));
    if (k == last_exponent) break;
  }
  return rows;
}

CollarLimitReport collar_limit_report(int first_exponent, int last_exponent) {
  CollarLimitReport report;
  report.rows = collar_sweep(first_exponent, last_exponent);
  std::sort(report.rows.begin(), report.rows.end(),
            [](const CollarRow& a, const CollarRow& b) { return a.length > b.length; });
  report.monotone = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    report.monotone = report.monotone && report.rows[i].length_times_modulus > report.rows[i - 1].length_times_modulus;
  }
  report.limit_estimate = report.rows.back().length_times_modulus;
  report.pi_gap = std::abs(report.limit_estimate - std::numbers::pi);
  report.contradicts_quoted_constant =
      std::abs(report.limit_estimate - report.quoted_constant) > 100.0 * report.pi_gap;
  return report;
}

DegenerationSchedule::DegenerationSchedule(MetricGraph target_graph, double kappa_value,
                                           std::vector<double> t)
    : target(std::move(target_graph)), kappa(kappa_value), t_values(std::move(t)) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) fail(ErrorCode::InvalidInput, "kappa must be positive");
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (!(t_values[i] >= std::numbers::e) || !std::isfinite(t_values[i])) {
      fail(ErrorCode::InvalidInput, "schedule values of t must be at least e");
    }
    if (i > 0 && !(t_values[i] > t_values[i - 1])) {
      fail(ErrorCode::InvalidInput, "schedule values of t must increase strictly");
    }
  }
}

std::map<std::string, double> length_schedule(const DegenerationSchedule& schedule, double t) {
  bool listed = false;
  for (double x : schedule.t_values) listed = listed || x == t;
  if (!listed) fail(ErrorCode::InvalidInput, "t is not part of the schedule");
  std::map<std::string, double> out;
  const double log_t = std::log(t);
  for (const auto& e : schedule.target.edges()) out.emplace(e.id, schedule.kappa / (e.length * log_t));
  return out;
}

AnnulusPeriodReport annulus_period_experiment(double tropical_length, double kappa,
                                              std::span<const double> t_values) {
  if (!(tropical_length > 0.0)) fail(ErrorCode::NonPositiveLength, "tropical length must be positive");
  if (!(kappa > 0.0)) fail(ErrorCode::InvalidInput, "kappa must be positive");
  if (t_values.empty()) fail(ErrorCode::InvalidInput, "need at least one value of t");

  AnnulusPeriodReport report{tropical_length, kappa, {}, 0.0, 0.0, 0.0};
  for (double t : t_values) {
    if (!(t > 1.0) || !std::isfinite(t)) fail(ErrorCode::InvalidInput, "t must be finite and > 1");
    const double log_t = std::log(t);
    const double l_t = kappa / (tropical_length * log_t);
    // Transversal integral of 2pi dz across A_m is exactly 2pi m.
    const double value = 2.0 * std::numbers::pi * collar_modulus(l_t) / log_t;
    report.rows.push_back({t, l_t, value});
  }
  report.raw_limit = report.rows.back().value;

  // value(x) with x = 1/log t is analytic at 0; fit a low-degree polynomial.
  const auto n = static_cast<Eigen::Index>(report.rows.size());
  const Eigen::Index degree = std::min<Eigen::Index>(3, n - 1);
  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = 1.0 / std::log(report.rows[static_cast<std::size_t>(i)].t);
    double power = 1.0;
    for (Eigen::Index d = 0; d <= degree; ++d) {
      design(i, d) = power;
      power *= x;
    }
    values(i) = report.rows[static_cast<std::size_t>(i)].value;
  }
  const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(values);
  report.extrapolated_limit = coeffs(0);
  report.kappa_star = kappa * report.extrapolated_limit / tropical_length;
  return report;
}

}  // namespace tropharm
