#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropharm/forms.hpp"

namespace tropharm {

using Complex = std::complex<double>;

/// A point of the Riemann sphere used as a puncture.
struct Puncture {
  Complex value{0.0, 0.0};
  bool at_infinity = false;

  static Puncture finite(Complex z) { return {z, false}; }
  static Puncture infinity() { return {{0.0, 0.0}, true}; }
};

/// The sphere minus n >= 3 distinct punctures, listed in leaf order.
class PuncturedSphere {
 public:
  /// Throws InvalidInput (fewer than 3, repeated, or several at infinity).
  explicit PuncturedSphere(std::vector<Puncture> punctures);

  std::size_t size() const { return punctures_.size(); }
  const std::vector<Puncture>& punctures() const { return punctures_; }
  const Puncture& operator[](std::size_t j) const { return punctures_[j]; }
  std::optional<std::size_t> infinity_index() const;
  /// Largest modulus of a finite puncture.
  double radius() const;

 private:
  std::vector<Puncture> punctures_;
};

/// The imaginary normalized differential with prescribed real residues on a
/// punctured sphere: sum over finite punctures of r_j dz / (z - p_j).
class GenusZeroDifferential {
 public:
  /// Throws ResiduesDontSumToZero or DimensionMismatch.
  GenusZeroDifferential(PuncturedSphere sphere, Eigen::VectorXd residues);

  const PuncturedSphere& sphere() const { return sphere_; }
  const Eigen::VectorXd& residues() const { return residues_; }

  /// Coefficient f(z) of omega = f(z) dz. Throws EvaluationAtPuncture.
  Complex evaluate(Complex z) const;
  /// Residue at puncture j read off the closed form (at infinity: minus the
  /// sum of the finite residues).
  double residue(std::size_t j) const;
  /// Counter-clockwise integral over |z - p_j| = radius, trapezoid rule.
  Complex circular_period(std::size_t j, double radius, std::size_t nodes = 4096) const;

 private:
  PuncturedSphere sphere_;
  Eigen::VectorXd residues_;
};

GenusZeroDifferential ind_genus0(const PuncturedSphere& sphere, const Eigen::VectorXd& residues);

/// Zero of lambda_1/(z-1) + lambda_{-1}/(z+1) on the sphere punctured at
/// (1, -1, inf).
struct FieldZero {
  Complex root;
  double residual;       // |lambda_1/(root-1) + lambda_{-1}/(root+1)|
  /// (lambda_1 - lambda_{-1}) / (lambda_1 + lambda_{-1}); equals -root.Re.
  double mirrored_formula;
};

/// Throws NonPositiveResidues.
FieldZero field_zero(double lambda_1, double lambda_minus_1);

/// (sum_j r_j^(k) log|z - p_j|)_k over finite punctures; the base point is
/// dropped. Throws EvaluationAtPuncture or DimensionMismatch.
Eigen::VectorXd amoeba_map(const PuncturedSphere& sphere, const ResidueMatrix& residues, Complex z);

/// Coordinate-wise |w|^{1/log t} w/|w|. Throws ZeroCoordinate or InvalidInput (t <= 1).
std::vector<Complex> rescale_H(double t, std::span<const Complex> w);

/// Points in R^m with a provenance tag per point.
struct PointCloud {
  Eigen::MatrixXd points;  // m x N
  std::vector<int> tags;   // one per column; see SamplingParams

  Eigen::Index dimension() const { return points.rows(); }
  Eigen::Index size() const { return points.cols(); }
};

/// Deterministic sampling of the source sphere.
///
/// Around every finite puncture a polar grid: radii exp(u) with u uniform on
/// [log_radius_min, log_radius_max] (radial_base * density + 1 values) and
/// angular_base * density angles. Plus a square grid of
/// (grid_base * density + 1)^2 points on the disk of radius
/// grid_radius_factor * max(1, max|p_j|). Doubling `density` yields a superset
/// of the samples. Tags: j for the polar grid around puncture j, -1 for the
/// global grid.
struct SamplingParams {
  std::size_t density = 1;
  double log_radius_min = -10.0;
  double log_radius_max = 10.0;
  std::size_t radial_base = 512;
  std::size_t angular_base = 256;
  std::size_t grid_base = 128;
  double grid_radius_factor = 2.0;
  /// 0 = use all hardware threads.
  std::size_t threads = 0;
};

/// Points that land within 1e-300 of a puncture are skipped.
/// Throws MinimumDensityViolation when density == 0.
PointCloud sample_amoeba(const PuncturedSphere& sphere, const ResidueMatrix& residues,
                         const SamplingParams& params);

/// Thread count from TROPHARM_THREADS (0 or unset = hardware concurrency).
std::size_t default_thread_count();

}  // namespace tropharm
