#include "tropharm/convergence.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tropharm/error.hpp"
#include "tropharm/realization.hpp"

namespace tropharm {

bool ConvergenceReport::monotone(double slack) const {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].global_hausdorff > (1.0 + slack) * rows[i - 1].global_hausdorff) return false;
  }
  return true;
}

std::string ConvergenceReport::csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "t,global_hausdorff,forward,backward\n";
  for (const auto& r : rows) out << r.t << ',' << r.global_hausdorff << ',' << r.forward << ',' << r.backward << '\n';
  return out.str();
}

Box default_window(const HarmonicMorphism& morphism) {
  const auto [lo, hi] = bounding_box(emit_embedding(morphism, 1.0));
  const Eigen::VectorXd centre = 0.5 * (lo + hi);
  const Eigen::VectorXd half = (0.75 * (hi - lo)).cwiseMax(0.5);
  return {centre - half, centre + half};
}

namespace {

bool is_integral(const Eigen::MatrixXd& r) { return ((r.array() - r.array().round()).abs() <= 1e-9).all(); }

}  // namespace

ConvergenceReport convergence_experiment(const MetricGraph& carrier, const ResidueMatrix& residues,
                                         std::span<const double> t_values, const ConvergenceOptions& options) {
  if (!carrier.is_tree()) fail(ErrorCode::NotATree, "convergence experiments run on genus-0 graphs");
  if (residues.cols() != static_cast<Eigen::Index>(carrier.leaf_count())) {
    fail(ErrorCode::DimensionMismatch, "residue matrix needs one column per leaf");
  }
  if (t_values.empty()) fail(ErrorCode::InvalidInput, "need at least one value of t");
  if (options.density == 0) fail(ErrorCode::MinimumDensityViolation, "sampling density must be at least 1");
  if (!(options.resolution > 0.0)) fail(ErrorCode::InvalidInput, "resolution must be positive");
  const DegenerationSchedule schedule(carrier, options.kappa, {t_values.begin(), t_values.end()});

  const HarmonicMorphism morphism = build_morphism(carrier, residues, options.base_vertex);
  const Eigen::Index m = morphism.ambient_dim();
  const Box window = options.window ? *options.window : default_window(morphism);
  if (window.dimension() != m) fail(ErrorCode::DimensionMismatch, "window dimension differs from the target");

  // Rays long enough to leave the window from any vertex.
  double reach = window.diagonal();
  for (std::size_t v = 0; v < carrier.vertex_count(); ++v) {
    reach = std::max(reach, (morphism.vertex_positions.col(static_cast<Eigen::Index>(v)) - window.lo).norm());
    reach = std::max(reach, (morphism.vertex_positions.col(static_cast<Eigen::Index>(v)) - window.hi).norm());
  }
  const Scene scene = emit_embedding(morphism, 2.0 * reach);
  const auto pieces = clip(scene_pieces(scene, true), window);
  if (pieces.empty()) fail(ErrorCode::EmptyAfterClipping, "target image misses the window");
  const double step = options.hausdorff_step > 0.0 ? options.hausdorff_step : 1e-3 * window.diagonal();

  const Eigen::MatrixXd& r = residues.entries();
  double r_min = std::numeric_limits<double>::infinity();
  double r_max = 0.0;
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    const double norm = r.col(j).norm();
    if (norm > 0.0) r_min = std::min(r_min, norm);
    r_max = std::max(r_max, norm);
  }
  if (!std::isfinite(r_min)) r_min = 1.0;
  if (r_max == 0.0) r_max = 1.0;
  const double extent = std::max(window.lo.cwiseAbs().maxCoeff(), window.hi.cwiseAbs().maxCoeff());

  ConvergenceReport report;
  report.kappa = options.kappa;
  report.window = window;
  for (double t : t_values) {
    const double log_t = std::log(t);
    const Placement placement = is_integral(r) && !options.punctures
                                    ? realize_genus0(carrier, residues, t).placement
                                    : place_punctures(carrier, t);
    const PuncturedSphere sphere = options.punctures ? PuncturedSphere(*options.punctures) : placement.sphere;

    double depth_span = 0.0;
    for (double s : placement.vertex_scales) depth_span = std::max(depth_span, std::log(s));
    const double half_range = 1.5 * (extent * log_t / r_min + depth_span + 1.0);

    SamplingParams sampling;
    sampling.density = options.density;
    sampling.log_radius_min = -half_range;
    sampling.log_radius_max = half_range + depth_span;
    sampling.radial_base = static_cast<std::size_t>(
        std::ceil((sampling.log_radius_max - sampling.log_radius_min) * r_max / (log_t * options.resolution)));
    sampling.angular_base = options.angular_base;
    sampling.grid_base = options.grid_base;
    sampling.threads = options.threads;
    PointCloud cloud = sample_amoeba(sphere, residues, sampling);

    const Complex anchor = options.punctures ? std::polar(1.0, std::numbers::pi / 3.0) : placement.vertex_points[options.base_vertex];
    const Eigen::VectorXd shift =
        morphism.vertex_positions.col(static_cast<Eigen::Index>(options.base_vertex)) -
        amoeba_map(sphere, residues, anchor) / log_t;
    cloud.points = (cloud.points / log_t).colwise() + shift;
    const PointCloud clipped = clip(cloud, window);
    if (clipped.size() == 0) fail(ErrorCode::EmptyAfterClipping, "rescaled amoeba misses the window");

    ConvergenceRow row;
    row.t = t;
    row.cloud_size = static_cast<std::size_t>(clipped.size());
    const auto global = hausdorff(clipped, pieces, window, step);
    row.global_hausdorff = global.value;
    row.forward = global.forward;
    row.backward = global.backward;

    // Per half-tripod: cloud points go to the owner of their nearest piece.
    std::vector<double> forward(carrier.vertex_count(), 0.0);
    for (Eigen::Index i = 0; i < clipped.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t owner = 0;
      for (const auto& piece : pieces) {
        const double d = point_segment_distance(clipped.points.col(i), piece.a, piece.b);
        if (d < best) {
          best = d;
          owner = piece.owner;
        }
      }
      forward[owner] = std::max(forward[owner], best);
    }
    for (std::size_t v = 0; v < carrier.vertex_count(); ++v) {
      std::vector<ScenePiece> own;
      for (const auto& piece : pieces) {
        if (piece.owner == v) own.push_back(piece);
      }
      if (own.empty()) continue;
      row.per_tripod[carrier.vertex_id(v)] = std::max(forward[v], directed_hausdorff(own, clipped, step));
    }
    row.collar_lengths = length_schedule(schedule, t);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace tropharm
