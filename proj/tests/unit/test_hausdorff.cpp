#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tropharm/hausdorff.hpp"

using namespace tropharm;

namespace {

Eigen::VectorXd pt(double x, double y) { return Eigen::Vector2d(x, y); }

PointCloud cloud(const Eigen::MatrixXd& points) {
  return PointCloud{points, std::vector<int>(static_cast<std::size_t>(points.cols()), 0)};
}

PointCloud grid(double lo, double hi, int cells) {
  Eigen::MatrixXd p(2, (cells + 1) * (cells + 1));
  Eigen::Index c = 0;
  for (int i = 0; i <= cells; ++i) {
    for (int j = 0; j <= cells; ++j) {
      p.col(c++) = pt(lo + (hi - lo) * i / cells, lo + (hi - lo) * j / cells);
    }
  }
  return cloud(p);
}

double brute_directed(const PointCloud& a, const PointCloud& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double best = 1e300;
    for (Eigen::Index j = 0; j < b.size(); ++j) best = std::min(best, (a.points.col(i) - b.points.col(j)).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_SUITE("hausdorff") {

TEST_CASE("boxes") {
  const Box b = Box::cube(2, -1.0, 1.0);
  CHECK(b.contains(pt(1.0, -1.0)));
  CHECK_FALSE(b.contains(pt(1.1, 0.0)));
  CHECK(b.contains(pt(1.1, 0.0), 0.2));
  CHECK(b.diagonal() == doctest::Approx(std::sqrt(8.0)));
  const Box big = b.inflated(2.0);
  CHECK(big.hi(0) == doctest::Approx(2.0));
  CHECK_ERROR_CODE(Box::cube(2, 1.0, 1.0), ErrorCode::InvalidInput);
}

TEST_CASE("point to segment") {
  CHECK(point_segment_distance(pt(0.5, 1.0), pt(0, 0), pt(1, 0)) == doctest::Approx(1.0));
  CHECK(point_segment_distance(pt(-3.0, 4.0), pt(0, 0), pt(1, 0)) == doctest::Approx(5.0));
  CHECK(point_segment_distance(pt(2.0, 0.0), pt(1, 1), pt(1, 1)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("single point against a segment") {
  const PointCloud origin = cloud(pt(0, 0));
  const std::vector<ScenePiece> seg{{pt(0, 0), pt(1, 0), 0}};
  const auto r = hausdorff(origin, seg, Box::cube(2, -2.0, 2.0), 1e-4);
  CHECK(r.forward == 0.0);
  CHECK(r.backward == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.value == r.backward);
}

TEST_CASE("identical clouds") {
  const PointCloud g = grid(0.0, 1.0, 7);
  const auto r = hausdorff(g, g, Box::cube(2, -1.0, 2.0));
  CHECK(r.value == 0.0);
}

TEST_CASE("grid against its filled square") {
  for (int cells : {4, 10, 25}) {
    const double h = 1.0 / cells;
    const PointCloud coarse = grid(0.0, 1.0, cells);
    const PointCloud fill = grid(0.0, 1.0, cells * 8 + 3);
    const auto r = hausdorff(coarse, fill, Box::cube(2, -0.5, 1.5));
    CHECK(r.value <= h / std::sqrt(2.0) + 1e-12);
    CHECK(r.forward <= 1.0 / (cells * 8 + 3));

    std::vector<ScenePiece> rows;
    for (int i = 0; i <= cells; ++i) rows.push_back({pt(0.0, i * h), pt(1.0, i * h), 0});
    const auto rr = hausdorff(coarse, rows, Box::cube(2, -0.5, 1.5), h / 50.0);
    CHECK(rr.forward <= 1e-12);
    CHECK(rr.backward <= h / 2.0 + 1e-12);
    CHECK(rr.backward >= h / 2.0 - h / 100.0);
  }
}

TEST_CASE("clipping") {
  const PointCloud g = grid(0.0, 4.0, 4);
  CHECK(clip(g, Box::cube(2, 0.5, 2.5)).size() == 4);
  const std::vector<ScenePiece> long_seg{{pt(-10, 1), pt(10, 1), 3}};
  const auto clipped = clip(long_seg, Box::cube(2, 0.0, 2.0));
  REQUIRE(clipped.size() == 1);
  CHECK(clipped[0].a(0) == doctest::Approx(0.0));
  CHECK(clipped[0].b(0) == doctest::Approx(2.0));
  CHECK(clipped[0].owner == 3);
  CHECK(clip(long_seg, Box::cube(2, 5.0, 6.0)).empty());
  CHECK_ERROR_CODE(hausdorff(g, long_seg, Box::cube(2, 5.0, 6.0)), ErrorCode::EmptyAfterClipping);
  CHECK_ERROR_CODE(hausdorff(g, cloud(Eigen::Vector3d(0, 0, 0)), Box::cube(2, -1.0, 5.0)),
                   ErrorCode::DimensionMismatch);
}

TEST_CASE("kd-tree agrees with brute force") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (Eigen::Index dim : {1, 2, 3, 5}) {
    Eigen::MatrixXd a(dim, 300);
    Eigen::MatrixXd b(dim, 200);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = n(rng);
    for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = n(rng);
    CHECK(directed_hausdorff(cloud(a), cloud(b)) == doctest::Approx(brute_directed(cloud(a), cloud(b))).epsilon(1e-14));
    const KdTree tree(b);
    CHECK(tree.size() == 200);
    for (Eigen::Index i = 0; i < 20; ++i) {
      const auto [index, dist] = tree.nearest(a.col(i));
      CHECK(dist == doctest::Approx((b.col(index) - a.col(i)).norm()));
    }
  }
}

}  // TEST_SUITE
