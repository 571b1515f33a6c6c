#include "tropharm/amoeba.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

#include "tropharm/error.hpp"

namespace tropharm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PuncturedSphere::PuncturedSphere(std::vector<Puncture> punctures) : punctures_(std::move(punctures)) {
  if (punctures_.size() < 3) fail(ErrorCode::InvalidInput, "a punctured sphere needs at least 3 punctures");
  std::size_t infinite = 0;
  for (std::size_t i = 0; i < punctures_.size(); ++i) {
    const auto& p = punctures_[i];
    if (p.at_infinity) {
      ++infinite;
      continue;
    }
    if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag())) {
      fail(ErrorCode::InvalidInput, "finite punctures must have finite coordinates");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!punctures_[j].at_infinity && punctures_[j].value == p.value) {
        fail(ErrorCode::InvalidInput, "punctures must be pairwise distinct");
      }
    }
  }
  if (infinite > 1) fail(ErrorCode::InvalidInput, "at most one puncture may sit at infinity");
}

std::optional<std::size_t> PuncturedSphere::infinity_index() const {
  for (std::size_t i = 0; i < punctures_.size(); ++i) {
    if (punctures_[i].at_infinity) return i;
  }
  return std::nullopt;
}

double PuncturedSphere::radius() const {
  double r = 0.0;
  for (const auto& p : punctures_) {
    if (!p.at_infinity) r = std::max(r, std::abs(p.value));
  }
  return r;
}

GenusZeroDifferential::GenusZeroDifferential(PuncturedSphere sphere, Eigen::VectorXd residues)
    : sphere_(std::move(sphere)), residues_(std::move(residues)) {
  if (residues_.size() != static_cast<Eigen::Index>(sphere_.size())) {
    fail(ErrorCode::DimensionMismatch, "need one residue per puncture");
  }
  check_residue_sum(residues_);
}

Complex GenusZeroDifferential::evaluate(Complex z) const {
  Complex f{0.0, 0.0};
  for (std::size_t j = 0; j < sphere_.size(); ++j) {
    const auto& p = sphere_[j];
    if (p.at_infinity) continue;
    if (z == p.value) fail(ErrorCode::EvaluationAtPuncture, "differential evaluated at a puncture");
    f += residues_(static_cast<Eigen::Index>(j)) / (z - p.value);
  }
  return f;
}

double GenusZeroDifferential::residue(std::size_t j) const {
  if (j >= sphere_.size()) fail(ErrorCode::InvalidInput, "puncture index out of range");
  if (!sphere_[j].at_infinity) return residues_(static_cast<Eigen::Index>(j));
  double sum = 0.0;
  for (std::size_t i = 0; i < sphere_.size(); ++i) {
    if (i != j) sum += residues_(static_cast<Eigen::Index>(i));
  }
  return -sum;
}

Complex GenusZeroDifferential::circular_period(std::size_t j, double radius, std::size_t nodes) const {
  if (j >= sphere_.size()) fail(ErrorCode::InvalidInput, "puncture index out of range");
  if (!(radius > 0.0)) fail(ErrorCode::InvalidInput, "circle radius must be positive");
  if (nodes == 0) fail(ErrorCode::InvalidInput, "quadrature needs at least one node");
  const auto& p = sphere_[j];
  Complex sum{0.0, 0.0};
  const double step = kTwoPi / static_cast<double>(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double theta = step * static_cast<double>(k);
    const Complex u = std::polar(1.0, theta);
    if (p.at_infinity) {
      // Counter-clockwise in the chart w = 1/z: z = 1/(radius u), dz/dtheta = -i z.
      const Complex z = 1.0 / (radius * u);
      const Complex dz = Complex{0.0, -1.0} * z;
      sum += evaluate(z) * dz;
    } else {
      const Complex offset = radius * u;
      sum += evaluate(p.value + offset) * Complex{0.0, 1.0} * offset;
    }
  }
  return sum * step;
}

GenusZeroDifferential ind_genus0(const PuncturedSphere& sphere, const Eigen::VectorXd& residues) {
  return GenusZeroDifferential(sphere, residues);
}

FieldZero field_zero(double lambda_1, double lambda_minus_1) {
  if (!(lambda_1 > 0.0) || !(lambda_minus_1 > 0.0) || !std::isfinite(lambda_1) ||
      !std::isfinite(lambda_minus_1)) {
    fail(ErrorCode::NonPositiveResidues, "pair-of-pants residues must be positive");
  }
  const double sum = lambda_1 + lambda_minus_1;
  const Complex root{(lambda_minus_1 - lambda_1) / sum, 0.0};
  const Complex f = lambda_1 / (root - 1.0) + lambda_minus_1 / (root + 1.0);
  return {root, std::abs(f), (lambda_1 - lambda_minus_1) / sum};
}

namespace {

void require_shape(const PuncturedSphere& sphere, const ResidueMatrix& residues) {
  if (residues.cols() != static_cast<Eigen::Index>(sphere.size())) {
    fail(ErrorCode::DimensionMismatch, "residue matrix needs one column per puncture");
  }
}

// Amoeba image of p_anchor + offset, with z - p_j formed as (p_anchor - p_j) + offset
// so points extremely close to the anchor keep their relative precision.
// Returns false when the point coincides with a puncture.
bool evaluate_offset(const PuncturedSphere& sphere, const Eigen::MatrixXd& r, Complex anchor, Complex offset,
                     Eigen::Ref<Eigen::VectorXd> out) {
  out.setZero();
  for (std::size_t j = 0; j < sphere.size(); ++j) {
    const auto& p = sphere[j];
    if (p.at_infinity) continue;
    const double d = std::abs((anchor - p.value) + offset);
    if (!(d > 0.0)) return false;
    const double log_d = std::log(d);
    out += r.col(static_cast<Eigen::Index>(j)) * log_d;
  }
  return true;
}

}  // namespace

Eigen::VectorXd amoeba_map(const PuncturedSphere& sphere, const ResidueMatrix& residues, Complex z) {
  require_shape(sphere, residues);
  Eigen::VectorXd out(residues.rows());
  if (!evaluate_offset(sphere, residues.entries(), z, {0.0, 0.0}, out)) {
    fail(ErrorCode::EvaluationAtPuncture, "amoeba map evaluated at a puncture");
  }
  return out;
}

std::vector<Complex> rescale_H(double t, std::span<const Complex> w) {
  if (!(t > 1.0) || !std::isfinite(t)) fail(ErrorCode::InvalidInput, "H_t needs t > 1");
  const double inv_log_t = 1.0 / std::log(t);
  std::vector<Complex> out;
  out.reserve(w.size());
  for (const auto& z : w) {
    const double modulus = std::abs(z);
    if (!(modulus > 0.0)) fail(ErrorCode::ZeroCoordinate, "H_t is undefined on a zero coordinate");
    out.push_back(std::polar(std::exp(std::log(modulus) * inv_log_t), std::arg(z)));
  }
  return out;
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("TROPHARM_THREADS")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct SamplePoint {
  Complex anchor;
  Complex offset;
  int tag;
};

std::vector<SamplePoint> sample_points(const PuncturedSphere& sphere, const SamplingParams& params) {
  std::vector<SamplePoint> pts;
  const std::size_t radial = params.radial_base * params.density;
  const std::size_t angular = params.angular_base * params.density;
  const std::size_t grid = params.grid_base * params.density;
  for (std::size_t j = 0; j < sphere.size(); ++j) {
    const auto& p = sphere[j];
    if (p.at_infinity) continue;
    for (std::size_t a = 0; a <= radial; ++a) {
      const double frac = radial == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(radial);
      const double rho = std::exp(params.log_radius_min + (params.log_radius_max - params.log_radius_min) * frac);
      for (std::size_t b = 0; b < angular; ++b) {
        const double phi = kTwoPi * (static_cast<double>(b) / static_cast<double>(angular));
        pts.push_back({p.value, std::polar(rho, phi), static_cast<int>(j)});
      }
    }
  }
  const double disk = params.grid_radius_factor * std::max(1.0, sphere.radius());
  for (std::size_t a = 0; a <= grid; ++a) {
    const double x = -disk + 2.0 * disk * (static_cast<double>(a) / static_cast<double>(grid));
    for (std::size_t b = 0; b <= grid; ++b) {
      const double y = -disk + 2.0 * disk * (static_cast<double>(b) / static_cast<double>(grid));
      if (x * x + y * y <= disk * disk) pts.push_back({{x, y}, {0.0, 0.0}, -1});
    }
  }
  return pts;
}

}  // namespace

PointCloud sample_amoeba(const PuncturedSphere& sphere, const ResidueMatrix& residues,
                         const SamplingParams& params) {
  require_shape(sphere, residues);
  if (params.density == 0) fail(ErrorCode::MinimumDensityViolation, "sampling density must be at least 1");
  if (params.radial_base == 0 || params.angular_base == 0 || params.grid_base == 0) {
    fail(ErrorCode::MinimumDensityViolation, "sampling grid sizes must be positive");
  }
  if (!(params.log_radius_min < params.log_radius_max)) {
    fail(ErrorCode::InvalidInput, "log radius range must be non-empty");
  }
  const auto pts = sample_points(sphere, params);
  const Eigen::Index m = residues.rows();
  const auto count = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd image(m, count);
  std::vector<char> valid(pts.size(), 0);
  const Eigen::MatrixXd& r = residues.entries();

  const std::size_t threads =
      std::max<std::size_t>(1, std::min(params.threads ? params.threads : default_thread_count(), pts.size()));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto col = static_cast<Eigen::Index>(i);
      valid[i] = evaluate_offset(sphere, r, pts[i].anchor, pts[i].offset, image.col(col)) &&
                 image.col(col).allFinite();
    }
  };
  if (threads == 1) {
    work(0, pts.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (pts.size() + threads - 1) / threads;
    for (std::size_t k = 0; k < threads; ++k) {
      const std::size_t begin = k * chunk;
      const std::size_t end = std::min(pts.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  PointCloud cloud;
  const auto kept = static_cast<Eigen::Index>(std::count(valid.begin(), valid.end(), 1));
  cloud.points.resize(m, kept);
  cloud.tags.reserve(static_cast<std::size_t>(kept));
  Eigen::Index c = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!valid[i]) continue;
    cloud.points.col(c++) = image.col(static_cast<Eigen::Index>(i));
    cloud.tags.push_back(pts[i].tag);
  }
  return cloud;
}

}  // namespace tropharm
