#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tropharm {

enum class ElementKind : std::uint8_t { Edge, Leaf };

/// A non-leaf edge or a leaf together with an orientation.
///
/// For edges `forward` means ends[0] -> ends[1]. For leaves `forward` means
/// inward, from the open end towards the attaching vertex. This is the
/// canonical orientation in which one-forms store their values.
struct OrientedEdgeRef {
  ElementKind kind = ElementKind::Edge;
  std::size_t index = 0;
  bool forward = true;

  static OrientedEdgeRef edge(std::size_t i, bool forward = true) {
    return {ElementKind::Edge, i, forward};
  }
  static OrientedEdgeRef leaf_inward(std::size_t i) { return {ElementKind::Leaf, i, true}; }
  static OrientedEdgeRef leaf_outward(std::size_t i) { return {ElementKind::Leaf, i, false}; }

  OrientedEdgeRef reversed() const { return {kind, index, !forward}; }
  bool is_leaf() const { return kind == ElementKind::Leaf; }
  /// +1 for the canonical orientation, -1 otherwise.
  double sign() const { return forward ? 1.0 : -1.0; }

  friend bool operator==(const OrientedEdgeRef&, const OrientedEdgeRef&) = default;
};

/// Unvalidated description of a cubic graph with marked leaves, keyed by ids.
struct CubicGraph {
  struct Edge {
    std::string id;
    std::array<std::string, 2> ends;
  };
  struct Leaf {
    std::string id;
    std::string vertex;
  };

  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  /// Order is the global leaf order.
  std::vector<Leaf> leaves;
  /// Cyclic order of incident edge/leaf ids per vertex. Vertices missing from
  /// the map get the sorted order of their incident ids.
  std::map<std::string, std::vector<std::string>> ribbon;
};

/// |edges| - |vertices| + 1. Throws Disconnected when the graph is not connected.
std::size_t genus(const CubicGraph& graph);

/// A validated simple tropical curve: cubic graph, ribbon structure and
/// positive edge lengths. Immutable; copies share the underlying data.
class MetricGraph {
 public:
  struct Edge {
    std::string id;
    std::array<std::size_t, 2> ends;
    double length;
  };
  struct Leaf {
    std::string id;
    std::size_t vertex;
  };

  std::size_t vertex_count() const;
  std::size_t edge_count() const;
  std::size_t leaf_count() const;
  std::size_t genus() const;

  const std::string& vertex_id(std::size_t v) const;
  const Edge& edge(std::size_t e) const;
  const Leaf& leaf(std::size_t l) const;
  std::span<const Edge> edges() const;
  std::span<const Leaf> leaves() const;
  double length(std::size_t e) const { return edge(e).length; }

  /// The three outgoing oriented leaf-edges at `v`, in ribbon order.
  const std::array<OrientedEdgeRef, 3>& outgoing(std::size_t v) const;

  /// Tail/head vertex of an oriented element; the open end of a leaf has none.
  std::optional<std::size_t> tail(const OrientedEdgeRef& ref) const;
  std::optional<std::size_t> head(const OrientedEdgeRef& ref) const;
  const std::string& id(const OrientedEdgeRef& ref) const;

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;
  std::optional<std::size_t> find_leaf(std::string_view id) const;

  /// Edge indices sorted lexicographically by id.
  std::span<const std::size_t> edges_by_id() const;
  /// Vertex with the lexicographically smallest id.
  std::size_t smallest_vertex() const;

  double total_length() const;
  bool is_tree() const { return genus() == 0; }

  /// Round-trips to the raw description (ribbon included).
  CubicGraph description() const;
  std::map<std::string, double> length_map() const;

 private:
  struct Data;
  explicit MetricGraph(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;

  friend MetricGraph validate(const CubicGraph&, const std::map<std::string, double>&);
};

/// Checks every structural invariant and returns the metric graph.
/// Errors: DuplicateId, UnknownVertex, SelfLoopEdge, NotCubic, Disconnected,
/// NonPositiveLength, BadRibbon, InvalidInput.
MetricGraph validate(const CubicGraph& graph, const std::map<std::string, double>& length);

/// Injective chain of oriented leaf-edges, head to tail. A loop is closed and
/// contains only non-leaf edges; an open path may start with an inward leaf
/// and end with an outward leaf.
struct GraphPath {
  std::vector<OrientedEdgeRef> steps;
  bool loop = false;

  bool empty() const { return steps.empty(); }
  bool is_leaf_to_leaf() const;
};

/// Validates `steps` as an open path. Throws NotPathOrLoop.
GraphPath make_path(const MetricGraph& graph, std::vector<OrientedEdgeRef> steps);
/// Validates `steps` as a loop. Throws NotPathOrLoop.
GraphPath make_loop(const MetricGraph& graph, std::vector<OrientedEdgeRef> steps);

/// Signed number of traversals of every non-leaf edge (canonical orientation).
std::vector<int> edge_incidence(const MetricGraph& graph, const GraphPath& path);

struct SpanningTree {
  std::vector<bool> in_tree;               // per edge index
  std::vector<std::size_t> cotree_edges;   // sorted by edge id
};

/// Kruskal over edges in id order.
SpanningTree spanning_tree(const MetricGraph& graph);

/// Oriented edges of the unique tree path from vertex `from` to vertex `to`.
std::vector<OrientedEdgeRef> tree_path(const MetricGraph& graph, const SpanningTree& tree,
                                       std::size_t from, std::size_t to);

/// Fundamental loops of the co-tree edges (in id order). Each loop runs along
/// the tree from ends[0] to ends[1] of its co-tree edge and returns through
/// that edge backwards.
std::vector<GraphPath> cycle_basis(const MetricGraph& graph);
std::vector<GraphPath> cycle_basis(const MetricGraph& graph, const SpanningTree& tree);

/// Paths from `base_leaf` to every other leaf, in leaf order. Throws UnknownLeaf.
std::vector<GraphPath> leaf_paths(const MetricGraph& graph, std::string_view base_leaf);

}  // namespace tropharm
