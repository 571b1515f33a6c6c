#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "tropharm/amoeba.hpp"
#include "tropharm/scene.hpp"

namespace tropharm {

/// Closed axis-aligned box.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  /// [lo, hi]^m. Throws InvalidInput unless lo < hi.
  static Box cube(Eigen::Index dimension, double lo, double hi);
  Eigen::Index dimension() const { return lo.size(); }
  bool contains(const Eigen::VectorXd& p, double slack = 0.0) const;
  double diagonal() const { return (hi - lo).norm(); }
  /// Same centre, sides scaled by `factor`.
  Box inflated(double factor) const;
};

/// Points of the cloud inside the box (tags kept).
PointCloud clip(const PointCloud& cloud, const Box& box);

/// Parts of the pieces inside the box (Liang-Barsky); pieces missing the box
/// are dropped.
std::vector<ScenePiece> clip(const std::vector<ScenePiece>& pieces, const Box& box);

/// Euclidean distance from p to the segment [a, b].
double point_segment_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Static kd-tree over the columns of a matrix.
class KdTree {
 public:
  explicit KdTree(Eigen::MatrixXd points);
  ~KdTree();
  KdTree(KdTree&&) noexcept;
  KdTree& operator=(KdTree&&) noexcept;

  /// Column index and distance of the nearest stored point. Requires a
  /// non-empty tree.
  std::pair<Eigen::Index, double> nearest(const Eigen::VectorXd& q) const;
  Eigen::Index size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// sup over a in `from` of the distance to `to`.
double directed_hausdorff(const PointCloud& from, const PointCloud& to);
/// Exact point-to-segment distances.
double directed_hausdorff(const PointCloud& from, const std::vector<ScenePiece>& to);
/// Pieces are walked with spacing at most `step`; the result underestimates the
/// true supremum by at most step/2.
double directed_hausdorff(const std::vector<ScenePiece>& from, const PointCloud& to, double step);

struct HausdorffResult {
  double value = 0.0;         // max of the two directions
  double forward = 0.0;       // cloud -> other
  double backward = 0.0;      // other -> cloud
};

/// Both inputs are clipped to the window first. Throws EmptyAfterClipping or
/// DimensionMismatch.
HausdorffResult hausdorff(const PointCloud& a, const PointCloud& b, const Box& window);

/// `step` <= 0 selects 1e-3 of the window diagonal.
HausdorffResult hausdorff(const PointCloud& a, const Scene& scene, const Box& window, double step = 0.0);
HausdorffResult hausdorff(const PointCloud& a, const std::vector<ScenePiece>& pieces, const Box& window,
                          double step = 0.0);

}  // namespace tropharm
