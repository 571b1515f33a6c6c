#include "tropharm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

#include "tropharm/error.hpp"

namespace tropharm {

struct MetricGraph::Data {
  std::vector<std::string> vertex_ids;
  std::vector<Edge> edges;
  std::vector<Leaf> leaves;
  std::vector<std::array<OrientedEdgeRef, 3>> outgoing;
  std::unordered_map<std::string, std::size_t> vertex_lookup;
  std::unordered_map<std::string, std::size_t> edge_lookup;
  std::unordered_map<std::string, std::size_t> leaf_lookup;
  std::vector<std::size_t> edges_by_id;
  std::size_t smallest_vertex = 0;
  std::size_t genus = 0;
};

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::unordered_map<std::string, std::size_t> index_vertices(const CubicGraph& graph) {
  std::unordered_map<std::string, std::size_t> lookup;
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    if (!lookup.emplace(graph.vertices[i], i).second) {
      fail(ErrorCode::DuplicateId, "duplicate vertex id '" + graph.vertices[i] + "'");
    }
  }
  return lookup;
}

std::size_t resolve_vertex(const std::unordered_map<std::string, std::size_t>& lookup,
                           const std::string& id) {
  auto it = lookup.find(id);
  if (it == lookup.end()) fail(ErrorCode::UnknownVertex, "unknown vertex '" + id + "'");
  return it->second;
}

bool connected(std::size_t vertex_count, const std::vector<std::array<std::size_t, 2>>& ends) {
  if (vertex_count == 0) return true;
  UnionFind uf(vertex_count);
  std::size_t components = vertex_count;
  for (const auto& e : ends) {
    if (uf.unite(e[0], e[1])) --components;
  }
  return components == 1;
}

}  // namespace

std::size_t genus(const CubicGraph& graph) {
  const auto lookup = index_vertices(graph);
  std::vector<std::array<std::size_t, 2>> ends;
  ends.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    ends.push_back({resolve_vertex(lookup, e.ends[0]), resolve_vertex(lookup, e.ends[1])});
  }
  if (!connected(graph.vertices.size(), ends)) fail(ErrorCode::Disconnected, "graph is not connected");
  return graph.edges.size() + 1 - graph.vertices.size();
}

MetricGraph validate(const CubicGraph& graph, const std::map<std::string, double>& length) {
  auto data = std::make_shared<MetricGraph::Data>();
  if (graph.vertices.empty()) fail(ErrorCode::InvalidInput, "graph has no vertices");

  data->vertex_ids = graph.vertices;
  data->vertex_lookup = index_vertices(graph);

  std::unordered_map<std::string, std::size_t> element_names;
  auto claim = [&](const std::string& id) {
    if (id.empty()) fail(ErrorCode::InvalidInput, "empty edge/leaf id");
    if (!element_names.emplace(id, 0).second) {
      fail(ErrorCode::DuplicateId, "duplicate edge/leaf id '" + id + "'");
    }
  };

  std::vector<std::vector<OrientedEdgeRef>> incident(graph.vertices.size());
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const auto& e = graph.edges[i];
    claim(e.id);
    const std::size_t a = resolve_vertex(data->vertex_lookup, e.ends[0]);
    const std::size_t b = resolve_vertex(data->vertex_lookup, e.ends[1]);
    if (a == b) fail(ErrorCode::SelfLoopEdge, "edge '" + e.id + "' joins a vertex to itself");
    data->edges.push_back({e.id, {a, b}, 0.0});
    data->edge_lookup.emplace(e.id, i);
    incident[a].push_back(OrientedEdgeRef::edge(i, true));
    incident[b].push_back(OrientedEdgeRef::edge(i, false));
  }
  for (std::size_t i = 0; i < graph.leaves.size(); ++i) {
    const auto& l = graph.leaves[i];
    claim(l.id);
    const std::size_t v = resolve_vertex(data->vertex_lookup, l.vertex);
    data->leaves.push_back({l.id, v});
    data->leaf_lookup.emplace(l.id, i);
    incident[v].push_back(OrientedEdgeRef::leaf_outward(i));
  }

  for (std::size_t v = 0; v < incident.size(); ++v) {
    if (incident[v].size() != 3) {
      fail(ErrorCode::NotCubic, "vertex '" + graph.vertices[v] + "' has valence " +
                                    std::to_string(incident[v].size()) + ", expected 3");
    }
  }

  std::vector<std::array<std::size_t, 2>> ends;
  for (const auto& e : data->edges) ends.push_back(e.ends);
  if (!connected(graph.vertices.size(), ends)) fail(ErrorCode::Disconnected, "graph is not connected");

  for (const auto& [id, value] : length) {
    if (!data->edge_lookup.contains(id)) {
      fail(ErrorCode::InvalidInput, "length given for '" + id + "', which is not a non-leaf edge");
    }
  }
  for (auto& e : data->edges) {
    auto it = length.find(e.id);
    if (it == length.end()) fail(ErrorCode::InvalidInput, "missing length for edge '" + e.id + "'");
    if (!(it->second > 0.0) || !std::isfinite(it->second)) {
      fail(ErrorCode::NonPositiveLength, "edge '" + e.id + "' has non-positive length");
    }
    e.length = it->second;
  }

  // Ribbon: a cyclic order of exactly the three incident elements.
  auto element_id = [&](const OrientedEdgeRef& r) -> const std::string& {
    return r.is_leaf() ? data->leaves[r.index].id : data->edges[r.index].id;
  };
  for (const auto& [vid, order] : graph.ribbon) {
    if (!data->vertex_lookup.contains(vid)) fail(ErrorCode::BadRibbon, "ribbon names unknown vertex '" + vid + "'");
  }
  data->outgoing.resize(graph.vertices.size());
  for (std::size_t v = 0; v < incident.size(); ++v) {
    std::vector<OrientedEdgeRef> refs = incident[v];
    std::sort(refs.begin(), refs.end(),
              [&](const auto& x, const auto& y) { return element_id(x) < element_id(y); });
    auto it = graph.ribbon.find(graph.vertices[v]);
    if (it != graph.ribbon.end()) {
      const auto& order = it->second;
      if (order.size() != 3) fail(ErrorCode::BadRibbon, "ribbon at '" + graph.vertices[v] + "' must list 3 ids");
      std::vector<OrientedEdgeRef> arranged;
      for (const auto& name : order) {
        auto found = std::find_if(refs.begin(), refs.end(),
                                  [&](const auto& r) { return element_id(r) == name; });
        if (found == refs.end()) {
          fail(ErrorCode::BadRibbon, "ribbon at '" + graph.vertices[v] + "' lists non-incident '" + name + "'");
        }
        if (std::find(arranged.begin(), arranged.end(), *found) != arranged.end()) {
          fail(ErrorCode::BadRibbon, "ribbon at '" + graph.vertices[v] + "' repeats '" + name + "'");
        }
        arranged.push_back(*found);
      }
      refs = std::move(arranged);
    }
    data->outgoing[v] = {refs[0], refs[1], refs[2]};
  }

  data->edges_by_id.resize(data->edges.size());
  std::iota(data->edges_by_id.begin(), data->edges_by_id.end(), 0);
  std::sort(data->edges_by_id.begin(), data->edges_by_id.end(),
            [&](std::size_t a, std::size_t b) { return data->edges[a].id < data->edges[b].id; });
  data->smallest_vertex = static_cast<std::size_t>(
      std::min_element(data->vertex_ids.begin(), data->vertex_ids.end()) - data->vertex_ids.begin());

  const std::size_t nv = data->vertex_ids.size();
  const std::size_t ne = data->edges.size();
  const std::size_t nl = data->leaves.size();
  data->genus = ne + 1 - nv;
  const long long g = static_cast<long long>(data->genus);
  const long long n = static_cast<long long>(nl);
  if (static_cast<long long>(ne) != 3 * g - 3 + n || static_cast<long long>(nv) != 2 * g - 2 + n ||
      2 * g - 2 + n <= 0) {
    fail(ErrorCode::InternalError, "Euler counts violated for a connected trivalent graph");
  }
  return MetricGraph(std::move(data));
}

std::size_t MetricGraph::vertex_count() const { return data_->vertex_ids.size(); }
std::size_t MetricGraph::edge_count() const { return data_->edges.size(); }
std::size_t MetricGraph::leaf_count() const { return data_->leaves.size(); }
std::size_t MetricGraph::genus() const { return data_->genus; }
const std::string& MetricGraph::vertex_id(std::size_t v) const { return data_->vertex_ids.at(v); }
const MetricGraph::Edge& MetricGraph::edge(std::size_t e) const { return data_->edges.at(e); }
const MetricGraph::Leaf& MetricGraph::leaf(std::size_t l) const { return data_->leaves.at(l); }
std::span<const MetricGraph::Edge> MetricGraph::edges() const { return data_->edges; }
std::span<const MetricGraph::Leaf> MetricGraph::leaves() const { return data_->leaves; }
const std::array<OrientedEdgeRef, 3>& MetricGraph::outgoing(std::size_t v) const {
  return data_->outgoing.at(v);
}
std::span<const std::size_t> MetricGraph::edges_by_id() const { return data_->edges_by_id; }
std::size_t MetricGraph::smallest_vertex() const { return data_->smallest_vertex; }

std::optional<std::size_t> MetricGraph::tail(const OrientedEdgeRef& ref) const {
  if (ref.is_leaf()) {
    if (ref.forward) return std::nullopt;
    return leaf(ref.index).vertex;
  }
  const auto& e = edge(ref.index);
  return ref.forward ? e.ends[0] : e.ends[1];
}

std::optional<std::size_t> MetricGraph::head(const OrientedEdgeRef& ref) const {
  return tail(ref.reversed());
}

const std::string& MetricGraph::id(const OrientedEdgeRef& ref) const {
  return ref.is_leaf() ? leaf(ref.index).id : edge(ref.index).id;
}

namespace {
std::optional<std::size_t> lookup(const std::unordered_map<std::string, std::size_t>& map,
                                  std::string_view id) {
  auto it = map.find(std::string(id));
  if (it == map.end()) return std::nullopt;
  return it->second;
}
}  // namespace

std::optional<std::size_t> MetricGraph::find_vertex(std::string_view id) const {
  return lookup(data_->vertex_lookup, id);
}
std::optional<std::size_t> MetricGraph::find_edge(std::string_view id) const {
  return lookup(data_->edge_lookup, id);
}
std::optional<std::size_t> MetricGraph::find_leaf(std::string_view id) const {
  return lookup(data_->leaf_lookup, id);
}

double MetricGraph::total_length() const {
  double total = 0.0;
  for (const auto& e : data_->edges) total += e.length;
  return total;
}

CubicGraph MetricGraph::description() const {
  CubicGraph out;
  out.vertices = data_->vertex_ids;
  for (const auto& e : data_->edges) {
    out.edges.push_back({e.id, {data_->vertex_ids[e.ends[0]], data_->vertex_ids[e.ends[1]]}});
  }
  for (const auto& l : data_->leaves) out.leaves.push_back({l.id, data_->vertex_ids[l.vertex]});
  for (std::size_t v = 0; v < vertex_count(); ++v) {
    auto& order = out.ribbon[data_->vertex_ids[v]];
    for (const auto& r : data_->outgoing[v]) order.push_back(id(r));
  }
  return out;
}

std::map<std::string, double> MetricGraph::length_map() const {
  std::map<std::string, double> out;
  for (const auto& e : data_->edges) out.emplace(e.id, e.length);
  return out;
}

bool GraphPath::is_leaf_to_leaf() const {
  return !loop && steps.size() >= 2 && steps.front().is_leaf() && steps.front().forward &&
         steps.back().is_leaf() && !steps.back().forward;
}

namespace {

void check_chain(const MetricGraph& graph, const std::vector<OrientedEdgeRef>& steps, bool loop) {
  if (steps.empty()) fail(ErrorCode::NotPathOrLoop, "empty path");
  std::set<std::pair<int, std::size_t>> seen;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    const std::size_t bound = s.is_leaf() ? graph.leaf_count() : graph.edge_count();
    if (s.index >= bound) fail(ErrorCode::NotPathOrLoop, "path references a missing element");
    if (!seen.emplace(static_cast<int>(s.kind), s.index).second) {
      fail(ErrorCode::NotPathOrLoop, "path repeats '" + graph.id(s) + "'");
    }
    if (loop && s.is_leaf()) fail(ErrorCode::NotPathOrLoop, "loops cannot contain leaves");
    if (!graph.tail(s) && i != 0) fail(ErrorCode::NotPathOrLoop, "inward leaf inside a path");
    if (!graph.head(s) && i + 1 != steps.size()) fail(ErrorCode::NotPathOrLoop, "outward leaf inside a path");
    if (i + 1 < steps.size() && graph.head(s) != graph.tail(steps[i + 1])) {
      fail(ErrorCode::NotPathOrLoop, "path is not head-to-tail at '" + graph.id(s) + "'");
    }
  }
  if (loop && graph.head(steps.back()) != graph.tail(steps.front())) {
    fail(ErrorCode::NotPathOrLoop, "loop does not close");
  }
}

}  // namespace

GraphPath make_path(const MetricGraph& graph, std::vector<OrientedEdgeRef> steps) {
  check_chain(graph, steps, false);
  return GraphPath{std::move(steps), false};
}

GraphPath make_loop(const MetricGraph& graph, std::vector<OrientedEdgeRef> steps) {
  check_chain(graph, steps, true);
  return GraphPath{std::move(steps), true};
}

std::vector<int> edge_incidence(const MetricGraph& graph, const GraphPath& path) {
  std::vector<int> out(graph.edge_count(), 0);
  for (const auto& s : path.steps) {
    if (!s.is_leaf()) out[s.index] += s.forward ? 1 : -1;
  }
  return out;
}

SpanningTree spanning_tree(const MetricGraph& graph) {
  SpanningTree tree;
  tree.in_tree.assign(graph.edge_count(), false);
  UnionFind uf(graph.vertex_count());
  for (std::size_t e : graph.edges_by_id()) {
    const auto& ends = graph.edge(e).ends;
    if (uf.unite(ends[0], ends[1])) {
      tree.in_tree[e] = true;
    } else {
      tree.cotree_edges.push_back(e);
    }
  }
  return tree;
}

std::vector<OrientedEdgeRef> tree_path(const MetricGraph& graph, const SpanningTree& tree,
                                       std::size_t from, std::size_t to) {
  // BFS rooted at `from`; unique path in a tree.
  const std::size_t nv = graph.vertex_count();
  std::vector<std::optional<OrientedEdgeRef>> via(nv);
  std::vector<bool> visited(nv, false);
  std::queue<std::size_t> frontier;
  frontier.push(from);
  visited[from] = true;
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    if (v == to) break;
    for (const auto& r : graph.outgoing(v)) {
      if (r.is_leaf() || !tree.in_tree[r.index]) continue;
      const std::size_t w = *graph.head(r);
      if (visited[w]) continue;
      visited[w] = true;
      via[w] = r;
      frontier.push(w);
    }
  }
  if (!visited[to]) fail(ErrorCode::InternalError, "spanning tree does not reach every vertex");
  std::vector<OrientedEdgeRef> steps;
  for (std::size_t v = to; v != from;) {
    const auto& r = *via[v];
    steps.push_back(r);
    v = *graph.tail(r);
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

std::vector<GraphPath> cycle_basis(const MetricGraph& graph, const SpanningTree& tree) {
  std::vector<GraphPath> loops;
  loops.reserve(tree.cotree_edges.size());
  for (std::size_t e : tree.cotree_edges) {
    const auto& ends = graph.edge(e).ends;
    auto steps = tree_path(graph, tree, ends[0], ends[1]);
    steps.push_back(OrientedEdgeRef::edge(e, false));
    loops.push_back(make_loop(graph, std::move(steps)));
  }
  return loops;
}

std::vector<GraphPath> cycle_basis(const MetricGraph& graph) {
  return cycle_basis(graph, spanning_tree(graph));
}

std::vector<GraphPath> leaf_paths(const MetricGraph& graph, std::string_view base_leaf) {
  const auto base = graph.find_leaf(base_leaf);
  if (!base) fail(ErrorCode::UnknownLeaf, "unknown leaf '" + std::string(base_leaf) + "'");
  const auto tree = spanning_tree(graph);
  std::vector<GraphPath> paths;
  for (std::size_t l = 0; l < graph.leaf_count(); ++l) {
    if (l == *base) continue;
    std::vector<OrientedEdgeRef> steps{OrientedEdgeRef::leaf_inward(*base)};
    auto middle = tree_path(graph, tree, graph.leaf(*base).vertex, graph.leaf(l).vertex);
    steps.insert(steps.end(), middle.begin(), middle.end());
    steps.push_back(OrientedEdgeRef::leaf_outward(l));
    paths.push_back(make_path(graph, std::move(steps)));
  }
  return paths;
}

}  // namespace tropharm
