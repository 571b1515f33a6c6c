#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tropharm::testing {

namespace {

bool connected(std::size_t nv, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edges) parent[find(a)] = find(b);
  for (std::size_t v = 1; v < nv; ++v) {
    if (find(v) != find(0)) return false;
  }
  return true;
}

}  // namespace

RandomGraph random_cubic_graph(std::mt19937_64& rng, std::size_t genus, std::size_t leaves, bool integer_lengths) {
  const long long nv_signed = 2 * static_cast<long long>(genus) - 2 + static_cast<long long>(leaves);
  if (nv_signed < 1) throw std::invalid_argument("need 2g - 2 + n >= 1");
  const auto nv = static_cast<std::size_t>(nv_signed);
  std::vector<std::size_t> halves;
  for (std::size_t v = 0; v < nv; ++v) halves.insert(halves.end(), 3, v);

  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::shuffle(halves.begin(), halves.end(), rng);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    bool loop = false;
    for (std::size_t i = leaves; i + 1 < halves.size(); i += 2) {
      if (halves[i] == halves[i + 1]) loop = true;
      edges.emplace_back(halves[i], halves[i + 1]);
    }
    if (loop || !connected(nv, edges)) continue;

    RandomGraph out;
    for (std::size_t v = 0; v < nv; ++v) out.graph.vertices.push_back("v" + std::to_string(v));
    std::uniform_real_distribution<double> real(0.5, 3.0);
    std::uniform_int_distribution<int> whole(1, 3);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::string id = "e" + std::to_string(e);
      out.graph.edges.push_back({id, {out.graph.vertices[edges[e].first], out.graph.vertices[edges[e].second]}});
      out.lengths[id] = integer_lengths ? whole(rng) : real(rng);
    }
    for (std::size_t l = 0; l < leaves; ++l) {
      out.graph.leaves.push_back({"l" + std::to_string(l), out.graph.vertices[halves[l]]});
    }
    return out;
  }
  throw std::runtime_error("no valid pairing found");
}

Eigen::MatrixXd random_residues(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index leaves, bool integer,
                                int range) {
  Eigen::MatrixXd r(rows, leaves);
  std::uniform_int_distribution<int> whole(-range, range);
  std::uniform_real_distribution<double> real(-static_cast<double>(range), static_cast<double>(range));
  for (Eigen::Index k = 0; k < rows; ++k) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j + 1 < leaves; ++j) {
      r(k, j) = integer ? whole(rng) : real(rng);
      sum += r(k, j);
    }
    r(k, leaves - 1) = -sum;
  }
  return r;
}

Eigen::VectorXd energy_minimiser(const MetricGraph& graph, const Eigen::VectorXd& residues) {
  const auto ne = static_cast<Eigen::Index>(graph.edge_count());
  const auto nv = static_cast<Eigen::Index>(graph.vertex_count());
  // Balance: sum of outgoing edge values = sum of residues of the leaves at v.
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(nv, ne);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nv);
  for (Eigen::Index e = 0; e < ne; ++e) {
    const auto& edge = graph.edge(static_cast<std::size_t>(e));
    b(static_cast<Eigen::Index>(edge.ends[0]), e) += 1.0;
    b(static_cast<Eigen::Index>(edge.ends[1]), e) -= 1.0;
  }
  for (std::size_t l = 0; l < graph.leaf_count(); ++l) {
    rhs(static_cast<Eigen::Index>(graph.leaf(l).vertex)) += residues(static_cast<Eigen::Index>(l));
  }
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(ne + nv, ne + nv);
  for (Eigen::Index e = 0; e < ne; ++e) kkt(e, e) = 2.0 * graph.length(static_cast<std::size_t>(e));
  kkt.topRightCorner(ne, nv) = b.transpose();
  kkt.bottomLeftCorner(nv, ne) = b;
  Eigen::VectorXd full_rhs = Eigen::VectorXd::Zero(ne + nv);
  full_rhs.tail(nv) = rhs;
  const Eigen::VectorXd solution = kkt.completeOrthogonalDecomposition().solve(full_rhs);
  return solution.head(ne);
}

std::optional<int> integral_scale(const MetricGraph& graph, const Eigen::MatrixXd& residues, int max_scale) {
  const ResidueMatrix r(residues);
  const auto morphism = build_morphism(graph, r, std::size_t{0});
  for (int k = 1; k <= max_scale; ++k) {
    const Eigen::MatrixXd s = static_cast<double>(k) * morphism.edge_slopes;
    if (((s.array() - s.array().round()).abs() <= 1e-7).all()) return k;
  }
  return std::nullopt;
}

MetricGraph tripod() {
  CubicGraph g;
  g.vertices = {"v"};
  g.leaves = {{"a", "v"}, {"b", "v"}, {"c", "v"}};
  return validate(g, {});
}

MetricGraph dumbbell(double l1, double l2) {
  CubicGraph g;
  g.vertices = {"u", "v"};
  g.edges = {{"e1", {"u", "v"}}, {"e2", {"u", "v"}}};
  g.leaves = {{"a", "u"}, {"b", "v"}};
  return validate(g, {{"e1", l1}, {"e2", l2}});
}

MetricGraph caterpillar(double length) {
  CubicGraph g;
  g.vertices = {"u", "v"};
  g.edges = {{"e", {"u", "v"}}};
  g.leaves = {{"l0", "u"}, {"l1", "u"}, {"l2", "v"}, {"l3", "v"}};
  return validate(g, {{"e", length}});
}

MetricGraph double_dumbbell(double a1, double a2, double bridge, double b1, double b2) {
  CubicGraph g;
  g.vertices = {"a", "b", "c", "d"};
  g.edges = {{"e1", {"a", "b"}}, {"e2", {"a", "b"}}, {"e3", {"b", "c"}}, {"e4", {"c", "d"}}, {"e5", {"c", "d"}}};
  g.leaves = {{"x", "a"}, {"y", "d"}};
  return validate(g, {{"e1", a1}, {"e2", a2}, {"e3", bridge}, {"e4", b1}, {"e5", b2}});
}

}  // namespace tropharm::testing
