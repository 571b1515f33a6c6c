#include "tropharm/scene.hpp"

#include <limits>

namespace tropharm {

Eigen::VectorXd Scene::Ray::offset() const {
  const double norm = direction.norm();
  if (norm == 0.0) return Eigen::VectorXd::Zero(direction.size());
  return direction * (length / norm);
}

std::vector<ScenePiece> scene_pieces(const Scene& scene, bool split_edges) {
  std::vector<ScenePiece> pieces;
  for (std::size_t v = 0; v < scene.vertices.size(); ++v) {
    pieces.push_back({scene.vertices[v].position, scene.vertices[v].position, v});
  }
  for (const auto& s : scene.segments) {
    const auto& a = scene.vertices[s.from].position;
    const auto& b = scene.vertices[s.to].position;
    if (split_edges) {
      const Eigen::VectorXd mid = 0.5 * (a + b);
      pieces.push_back({a, mid, s.from});
      pieces.push_back({mid, b, s.to});
    } else {
      pieces.push_back({a, b, s.from});
    }
  }
  for (const auto& r : scene.rays) {
    const auto& o = scene.origin(r);
    pieces.push_back({o, o + r.offset(), r.vertex});
  }
  return pieces;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> bounding_box(const Scene& scene) {
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(scene.dimension, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  for (const auto& p : scene_pieces(scene)) {
    lo = lo.cwiseMin(p.a).cwiseMin(p.b);
    hi = hi.cwiseMax(p.a).cwiseMax(p.b);
  }
  return {lo, hi};
}

}  // namespace tropharm
