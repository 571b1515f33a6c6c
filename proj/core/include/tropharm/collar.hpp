#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tropharm/graph.hpp"

namespace tropharm {

/// Half-width of the collar around a closed geodesic of length l:
/// arcsinh(1 / sinh(l/2)). Throws NonPositiveLength.
double collar_width(double l);

/// Modulus of the collar annulus: (2/l) arccos(1 / cosh(collar_width(l))),
/// evaluated as (2/l) arccos(tanh(l/2)). l * m(l) increases to pi as l -> 0.
/// Throws NonPositiveLength.
double collar_modulus(double l);

struct CollarRow {
  double length;
  double width;
  double modulus;
  double length_times_modulus;
};

CollarRow collar_row(double l);
/// Rows for l = 10^-first_exponent ... 10^-last_exponent.
std::vector<CollarRow> collar_sweep(int first_exponent, int last_exponent);

/// Sweep of l * m(l) towards its small-l limit, compared with the constant 2
/// of the asymptotic m(l) ~ 2/l that is often quoted for collars.
struct CollarLimitReport {
  std::vector<CollarRow> rows;
  double limit_estimate;           // l * m(l) at the smallest l
  double quoted_constant = 2.0;
  double pi_gap;                   // |limit_estimate - pi|
  bool monotone;                   // l * m(l) increases as l decreases
  bool contradicts_quoted_constant;
};

CollarLimitReport collar_limit_report(int first_exponent, int last_exponent);

/// Fenchel-Nielsen length schedule l_t(e) = kappa / (l(e) log t).
struct DegenerationSchedule {
  MetricGraph target;
  double kappa;
  std::vector<double> t_values;

  /// Throws InvalidInput unless kappa > 0 and t strictly increasing, all >= e.
  DegenerationSchedule(MetricGraph target, double kappa, std::vector<double> t_values);
};

inline constexpr double kDefaultKappa = 4.0 * 3.14159265358979323846;

/// Edge id -> l_t(e). Throws InvalidInput when t is not in the schedule.
std::map<std::string, double> length_schedule(const DegenerationSchedule& schedule, double t);

struct AnnulusPeriodRow {
  double t;
  double collar_length;  // l_t
  double value;          // (1/log t) * 2pi * m(l_t)
};

struct AnnulusPeriodReport {
  double tropical_length;
  double kappa;
  std::vector<AnnulusPeriodRow> rows;
  /// Value at the largest t.
  double raw_limit;
  /// Intercept of a least-squares polynomial fit of value against 1/log t.
  double extrapolated_limit;
  /// kappa making the limit equal the tropical length (limit scales as 1/kappa).
  double kappa_star;
};

/// Transversal period of the model differential 2pi dz across the collar of
/// length l_t = kappa / (l log t), rescaled by 1/log t.
AnnulusPeriodReport annulus_period_experiment(double tropical_length, double kappa,
                                              std::span<const double> t_values);

}  // namespace tropharm
