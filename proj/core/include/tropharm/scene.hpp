#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace tropharm {

/// Piecewise-linear image of a harmonic morphism: vertex points, edge
/// segments and leaf rays truncated at a finite length.
struct Scene {
  struct Vertex {
    std::string id;
    Eigen::VectorXd position;
  };
  struct Segment {
    std::string id;
    std::size_t from = 0;  // index into vertices
    std::size_t to = 0;
    /// Number of edges of the source with exactly this image.
    int multiplicity = 1;
  };
  struct Ray {
    std::string leaf;
    std::size_t vertex = 0;
    Eigen::VectorXd direction;  // outward slope, not normalized
    double length = 0.0;        // Euclidean length of the drawn ray
    /// Vector from the origin vertex to the drawn tip.
    Eigen::VectorXd offset() const;
  };

  Eigen::Index dimension = 0;
  std::vector<Vertex> vertices;
  std::vector<Segment> segments;
  std::vector<Ray> rays;

  const Eigen::VectorXd& origin(const Ray& ray) const { return vertices[ray.vertex].position; }
};

/// One straight piece of a scene, attributed to a vertex. With `split_edges`
/// each segment is cut at its midpoint and each half belongs to the nearer
/// endpoint, which partitions the scene into half-tripods.
struct ScenePiece {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  std::size_t owner = 0;
};

std::vector<ScenePiece> scene_pieces(const Scene& scene, bool split_edges = false);

/// Axis-aligned bounding box of all pieces (rays at their drawn length).
std::pair<Eigen::VectorXd, Eigen::VectorXd> bounding_box(const Scene& scene);

}  // namespace tropharm
