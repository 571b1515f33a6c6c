#include "tropharm/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tropharm/error.hpp"

namespace tropharm {

Box Box::cube(Eigen::Index dimension, double lo, double hi) {
  if (!(lo < hi)) fail(ErrorCode::InvalidInput, "window needs lo < hi");
  return {Eigen::VectorXd::Constant(dimension, lo), Eigen::VectorXd::Constant(dimension, hi)};
}

bool Box::contains(const Eigen::VectorXd& p, double slack) const {
  return ((p - lo).array() >= -slack).all() && ((hi - p).array() >= -slack).all();
}

Box Box::inflated(double factor) const {
  const Eigen::VectorXd centre = 0.5 * (lo + hi);
  const Eigen::VectorXd half = 0.5 * factor * (hi - lo);
  return {centre - half, centre + half};
}

PointCloud clip(const PointCloud& cloud, const Box& box) {
  if (cloud.dimension() != box.dimension()) fail(ErrorCode::DimensionMismatch, "window dimension mismatch");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    if (box.contains(cloud.points.col(i))) keep.push_back(i);
  }
  PointCloud out;
  out.points.resize(cloud.dimension(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.points.col(static_cast<Eigen::Index>(k)) = cloud.points.col(keep[k]);
    out.tags.push_back(cloud.tags.empty() ? 0 : cloud.tags[static_cast<std::size_t>(keep[k])]);
  }
  return out;
}

std::vector<ScenePiece> clip(const std::vector<ScenePiece>& pieces, const Box& box) {
  std::vector<ScenePiece> out;
  for (const auto& piece : pieces) {
    if (piece.a.size() != box.dimension()) fail(ErrorCode::DimensionMismatch, "window dimension mismatch");
    const Eigen::VectorXd d = piece.b - piece.a;
    double t0 = 0.0;
    double t1 = 1.0;
    bool inside = true;
    for (Eigen::Index k = 0; k < d.size() && inside; ++k) {
      const double p[2] = {-d(k), d(k)};
      const double q[2] = {piece.a(k) - box.lo(k), box.hi(k) - piece.a(k)};
      for (int s = 0; s < 2; ++s) {
        if (p[s] == 0.0) {
          if (q[s] < 0.0) inside = false;
        } else {
          const double r = q[s] / p[s];
          if (p[s] < 0.0) t0 = std::max(t0, r);
          else t1 = std::min(t1, r);
        }
      }
      if (t0 > t1) inside = false;
    }
    if (inside) out.push_back({piece.a + t0 * d, piece.a + t1 * d, piece.owner});
  }
  return out;
}

double point_segment_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double s = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + s * d)).norm();
}

struct KdTree::Impl {
  struct Node {
    Eigen::Index point;
    Eigen::Index axis;
    int left = -1;
    int right = -1;
  };
  Eigen::MatrixXd points;
  std::vector<Node> nodes;
  int root = -1;

  int build(std::vector<Eigen::Index>& idx, std::size_t begin, std::size_t end, Eigen::Index depth) {
    if (begin >= end) return -1;
    const Eigen::Index axis = depth % points.rows();
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(idx.begin() + static_cast<std::ptrdiff_t>(begin), idx.begin() + static_cast<std::ptrdiff_t>(mid),
                     idx.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](Eigen::Index x, Eigen::Index y) { return points(axis, x) < points(axis, y); });
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({idx[mid], axis});
    const int l = build(idx, begin, mid, depth + 1);
    const int r = build(idx, mid + 1, end, depth + 1);
    nodes[static_cast<std::size_t>(id)].left = l;
    nodes[static_cast<std::size_t>(id)].right = r;
    return id;
  }

  void search(int id, const Eigen::VectorXd& q, Eigen::Index& best, double& best_d2) const {
    if (id < 0) return;
    const Node& n = nodes[static_cast<std::size_t>(id)];
    const double d2 = (points.col(n.point) - q).squaredNorm();
    if (d2 < best_d2 || (d2 == best_d2 && n.point < best)) {
      best_d2 = d2;
      best = n.point;
    }
    const double diff = q(n.axis) - points(n.axis, n.point);
    const int near = diff < 0.0 ? n.left : n.right;
    const int far = diff < 0.0 ? n.right : n.left;
    search(near, q, best, best_d2);
    if (diff * diff <= best_d2) search(far, q, best, best_d2);
  }
};

KdTree::KdTree(Eigen::MatrixXd points) : impl_(std::make_unique<Impl>()) {
  impl_->points = std::move(points);
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(impl_->points.cols()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  impl_->nodes.reserve(idx.size());
  if (impl_->points.rows() > 0) impl_->root = impl_->build(idx, 0, idx.size(), 0);
}

KdTree::~KdTree() = default;
KdTree::KdTree(KdTree&&) noexcept = default;
KdTree& KdTree::operator=(KdTree&&) noexcept = default;

Eigen::Index KdTree::size() const { return impl_->points.cols(); }

std::pair<Eigen::Index, double> KdTree::nearest(const Eigen::VectorXd& q) const {
  if (impl_->root < 0) fail(ErrorCode::InvalidInput, "nearest-point query on an empty tree");
  Eigen::Index best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  impl_->search(impl_->root, q, best, best_d2);
  return {best, std::sqrt(best_d2)};
}

double directed_hausdorff(const PointCloud& from, const PointCloud& to) {
  if (from.size() == 0) return 0.0;
  if (to.size() == 0) return std::numeric_limits<double>::infinity();
  const KdTree tree(to.points);
  double sup = 0.0;
  for (Eigen::Index i = 0; i < from.size(); ++i) sup = std::max(sup, tree.nearest(from.points.col(i)).second);
  return sup;
}

double directed_hausdorff(const PointCloud& from, const std::vector<ScenePiece>& to) {
  if (from.size() == 0) return 0.0;
  if (to.empty()) return std::numeric_limits<double>::infinity();
  double sup = 0.0;
  for (Eigen::Index i = 0; i < from.size(); ++i) {
    double inf = std::numeric_limits<double>::infinity();
    for (const auto& piece : to) {
      inf = std::min(inf, point_segment_distance(from.points.col(i), piece.a, piece.b));
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

double directed_hausdorff(const std::vector<ScenePiece>& from, const PointCloud& to, double step) {
  if (!(step > 0.0)) fail(ErrorCode::InvalidInput, "discretisation step must be positive");
  if (from.empty()) return 0.0;
  if (to.size() == 0) return std::numeric_limits<double>::infinity();
  const KdTree tree(to.points);
  double sup = 0.0;
  for (const auto& piece : from) {
    const double len = (piece.b - piece.a).norm();
    const auto n = static_cast<long>(std::ceil(len / step));
    for (long k = 0; k <= n; ++k) {
      const double s = n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
      sup = std::max(sup, tree.nearest(piece.a + s * (piece.b - piece.a)).second);
    }
  }
  return sup;
}

HausdorffResult hausdorff(const PointCloud& a, const PointCloud& b, const Box& window) {
  if (a.dimension() != b.dimension()) fail(ErrorCode::DimensionMismatch, "clouds live in different dimensions");
  const PointCloud ca = clip(a, window);
  const PointCloud cb = clip(b, window);
  if (ca.size() == 0 || cb.size() == 0) fail(ErrorCode::EmptyAfterClipping, "nothing left inside the window");
  HausdorffResult r;
  r.forward = directed_hausdorff(ca, cb);
  r.backward = directed_hausdorff(cb, ca);
  r.value = std::max(r.forward, r.backward);
  return r;
}

HausdorffResult hausdorff(const PointCloud& a, const std::vector<ScenePiece>& pieces, const Box& window,
                          double step) {
  const PointCloud ca = clip(a, window);
  const auto cp = clip(pieces, window);
  if (ca.size() == 0 || cp.empty()) fail(ErrorCode::EmptyAfterClipping, "nothing left inside the window");
  if (!(step > 0.0)) step = 1e-3 * window.diagonal();
  HausdorffResult r;
  r.forward = directed_hausdorff(ca, cp);
  r.backward = directed_hausdorff(cp, ca, step);
  r.value = std::max(r.forward, r.backward);
  return r;
}

HausdorffResult hausdorff(const PointCloud& a, const Scene& scene, const Box& window, double step) {
  if (a.dimension() != scene.dimension) fail(ErrorCode::DimensionMismatch, "cloud and scene dimensions differ");
  return hausdorff(a, scene_pieces(scene), window, step);
}

}  // namespace tropharm
