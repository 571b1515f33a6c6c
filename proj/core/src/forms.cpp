#include "tropharm/forms.hpp"

#include <cmath>

#include "tropharm/error.hpp"
#include "tropharm/linalg.hpp"

namespace tropharm {

double balance_defect(const MetricGraph& graph, const Eigen::VectorXd& edge_values,
                      const Eigen::VectorXd& leaf_values) {
  double worst = 0.0;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    double sum = 0.0;
    for (const auto& r : graph.outgoing(v)) {
      const double stored = r.is_leaf() ? leaf_values(static_cast<Eigen::Index>(r.index))
                                        : edge_values(static_cast<Eigen::Index>(r.index));
      sum += r.sign() * stored;
    }
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

OneForm::OneForm(MetricGraph carrier, Eigen::VectorXd edge_values, Eigen::VectorXd leaf_values,
                 double balance_tolerance)
    : carrier_(std::move(carrier)),
      edge_values_(std::move(edge_values)),
      leaf_values_(std::move(leaf_values)) {
  if (edge_values_.size() != static_cast<Eigen::Index>(carrier_.edge_count()) ||
      leaf_values_.size() != static_cast<Eigen::Index>(carrier_.leaf_count())) {
    fail(ErrorCode::DimensionMismatch, "one-form value count does not match the graph");
  }
  const double defect = tropharm::balance_defect(carrier_, edge_values_, leaf_values_);
  if (!(defect <= balance_tolerance * std::max(1.0, max_abs()))) {
    fail(ErrorCode::Unbalanced, "one-form is not balanced (defect " + std::to_string(defect) + ")");
  }
}

OneForm OneForm::zero(const MetricGraph& carrier) {
  return OneForm(carrier, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(carrier.edge_count())),
                 Eigen::VectorXd::Zero(static_cast<Eigen::Index>(carrier.leaf_count())));
}

double OneForm::value(const OrientedEdgeRef& ref) const {
  const auto i = static_cast<Eigen::Index>(ref.index);
  return ref.sign() * (ref.is_leaf() ? leaf_values_(i) : edge_values_(i));
}

double OneForm::max_abs() const {
  double m = 0.0;
  if (edge_values_.size() > 0) m = std::max(m, edge_values_.cwiseAbs().maxCoeff());
  if (leaf_values_.size() > 0) m = std::max(m, leaf_values_.cwiseAbs().maxCoeff());
  return m;
}

double OneForm::balance_defect() const {
  return tropharm::balance_defect(carrier_, edge_values_, leaf_values_);
}

namespace {
void require_same_carrier(const OneForm& a, const OneForm& b) {
  if (a.edge_values().size() != b.edge_values().size() ||
      a.leaf_values().size() != b.leaf_values().size()) {
    fail(ErrorCode::DimensionMismatch, "one-forms live on different graphs");
  }
}
}  // namespace

OneForm OneForm::operator+(const OneForm& other) const {
  require_same_carrier(*this, other);
  return OneForm(carrier_, edge_values_ + other.edge_values_, leaf_values_ + other.leaf_values_);
}

OneForm OneForm::operator-(const OneForm& other) const {
  require_same_carrier(*this, other);
  return OneForm(carrier_, edge_values_ - other.edge_values_, leaf_values_ - other.leaf_values_);
}

OneForm OneForm::operator*(double scale) const {
  return OneForm(carrier_, edge_values_ * scale, leaf_values_ * scale);
}

void check_residue_sum(const Eigen::VectorXd& residues, double tolerance) {
  const double scale = residues.size() > 0 ? residues.cwiseAbs().maxCoeff() : 0.0;
  const double sum = residues.sum();
  if (!(std::abs(sum) <= tolerance * scale) || !residues.allFinite()) {
    fail(ErrorCode::ResiduesDontSumToZero,
         "residues sum to " + std::to_string(sum) + " instead of 0");
  }
}

ResidueMatrix::ResidueMatrix(Eigen::MatrixXd entries, double tolerance) : entries_(std::move(entries)) {
  for (Eigen::Index k = 0; k < entries_.rows(); ++k) check_residue_sum(row(k), tolerance);
}

Eigen::VectorXd residues(const OneForm& form) { return form.leaf_values(); }

double integrate(const OneForm& form, const GraphPath& path) {
  const auto& graph = form.carrier();
  double total = 0.0;
  for (const auto& s : path.steps) {
    const double v = form.value(s);
    if (s.is_leaf()) {
      if (v != 0.0) {
        fail(ErrorCode::InfiniteIntegral,
             "leaf '" + graph.id(s) + "' has infinite length and nonzero value");
      }
      continue;
    }
    total += graph.length(s.index) * v;
  }
  return total;
}

OneForm dual_form(const MetricGraph& graph, const GraphPath& path) {
  if (path.empty() || !(path.loop || path.is_leaf_to_leaf())) {
    fail(ErrorCode::NotPathOrLoop, "dual forms need a loop or a leaf-to-leaf path");
  }
  Eigen::VectorXd edges = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.edge_count()));
  Eigen::VectorXd leaves = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.leaf_count()));
  for (const auto& s : path.steps) {
    auto& slot = s.is_leaf() ? leaves(static_cast<Eigen::Index>(s.index))
                             : edges(static_cast<Eigen::Index>(s.index));
    slot = s.sign();
  }
  return OneForm(graph, std::move(edges), std::move(leaves), 0.0);
}

struct KirchhoffSolver::Factorization {
  // Unknowns are the potentials of every vertex except the ground.
  std::vector<Eigen::Index> reduced_index;  // -1 for the ground vertex
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  Eigen::Index size = 0;
};

KirchhoffSolver::KirchhoffSolver(MetricGraph graph, FormTolerances tolerances)
    : graph_(std::move(graph)), tolerances_(tolerances), factorization_(std::make_unique<Factorization>()) {
  auto& f = *factorization_;
  const std::size_t ground = graph_.smallest_vertex();
  f.reduced_index.assign(graph_.vertex_count(), -1);
  for (std::size_t v = 0; v < graph_.vertex_count(); ++v) {
    if (v != ground) f.reduced_index[v] = f.size++;
  }
  if (f.size == 0) return;

  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& e : graph_.edges()) {
    const double c = 1.0 / e.length;
    const Eigen::Index a = f.reduced_index[e.ends[0]];
    const Eigen::Index b = f.reduced_index[e.ends[1]];
    if (a >= 0) triplets.emplace_back(a, a, c);
    if (b >= 0) triplets.emplace_back(b, b, c);
    if (a >= 0 && b >= 0) {
      triplets.emplace_back(a, b, -c);
      triplets.emplace_back(b, a, -c);
    }
  }
  Eigen::SparseMatrix<double> laplacian(f.size, f.size);
  laplacian.setFromTriplets(triplets.begin(), triplets.end());
  f.ldlt.compute(laplacian);
  if (f.ldlt.info() != Eigen::Success) {
    fail(ErrorCode::SingularSystem, "grounded Laplacian is singular");
  }
}

KirchhoffSolver::~KirchhoffSolver() = default;
KirchhoffSolver::KirchhoffSolver(KirchhoffSolver&&) noexcept = default;
KirchhoffSolver& KirchhoffSolver::operator=(KirchhoffSolver&&) noexcept = default;

Eigen::VectorXd KirchhoffSolver::potentials(const Eigen::VectorXd& residue_row) const {
  if (residue_row.size() != static_cast<Eigen::Index>(graph_.leaf_count())) {
    fail(ErrorCode::DimensionMismatch, "residue row length does not match the leaf count");
  }
  check_residue_sum(residue_row, tolerances_.residue);
  const auto& f = *factorization_;
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph_.vertex_count()));
  if (f.size == 0) return phi;

  // Current injected at a vertex = sum of the inward residues of its leaves.
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(f.size);
  for (std::size_t l = 0; l < graph_.leaf_count(); ++l) {
    const Eigen::Index i = f.reduced_index[graph_.leaf(l).vertex];
    if (i >= 0) rhs(i) += residue_row(static_cast<Eigen::Index>(l));
  }
  const Eigen::VectorXd reduced = f.ldlt.solve(rhs);
  if (f.ldlt.info() != Eigen::Success) fail(ErrorCode::SingularSystem, "Laplacian solve failed");
  for (std::size_t v = 0; v < graph_.vertex_count(); ++v) {
    if (f.reduced_index[v] >= 0) phi(static_cast<Eigen::Index>(v)) = reduced(f.reduced_index[v]);
  }
  return phi;
}

OneForm KirchhoffSolver::solve(const Eigen::VectorXd& residue_row) const {
  const Eigen::VectorXd phi = potentials(residue_row);
  Eigen::VectorXd edges(static_cast<Eigen::Index>(graph_.edge_count()));
  for (std::size_t i = 0; i < graph_.edge_count(); ++i) {
    const auto& e = graph_.edge(i);
    edges(static_cast<Eigen::Index>(i)) =
        (phi(static_cast<Eigen::Index>(e.ends[0])) - phi(static_cast<Eigen::Index>(e.ends[1]))) / e.length;
  }
  return OneForm(graph_, std::move(edges), residue_row, tolerances_.balance);
}

OneForm solve_exact_form(const MetricGraph& graph, const Eigen::VectorXd& residue_row,
                         const FormTolerances& tolerances) {
  return KirchhoffSolver(graph, tolerances).solve(residue_row);
}

FormDecomposition decompose(const OneForm& form) {
  OneForm exact = solve_exact_form(form.carrier(), residues(form));
  // Residues of the difference vanish exactly; edge values carry the holomorphic part.
  OneForm holomorphic(form.carrier(), form.edge_values() - exact.edge_values(),
                      Eigen::VectorXd::Zero(form.leaf_values().size()));
  return {std::move(exact), std::move(holomorphic)};
}

FormSpaceRanks form_space_ranks(const MetricGraph& graph) {
  const auto nv = static_cast<Eigen::Index>(graph.vertex_count());
  const auto ne = static_cast<Eigen::Index>(graph.edge_count());
  const auto nl = static_cast<Eigen::Index>(graph.leaf_count());
  const auto loops = cycle_basis(graph);
  const auto ng = static_cast<Eigen::Index>(loops.size());

  // Columns: edge values then leaf values, canonical orientation.
  Eigen::MatrixXd balance = Eigen::MatrixXd::Zero(nv, ne + nl);
  for (Eigen::Index v = 0; v < nv; ++v) {
    for (const auto& r : graph.outgoing(static_cast<std::size_t>(v))) {
      const Eigen::Index col = r.is_leaf() ? ne + static_cast<Eigen::Index>(r.index)
                                           : static_cast<Eigen::Index>(r.index);
      balance(v, col) += r.sign();
    }
  }
  Eigen::MatrixXd exactness(nv + ng, ne + nl);
  exactness.topRows(nv) = balance;
  exactness.bottomRows(ng).setZero();
  for (Eigen::Index k = 0; k < ng; ++k) {
    for (const auto& s : loops[static_cast<std::size_t>(k)].steps) {
      exactness(nv + k, static_cast<Eigen::Index>(s.index)) += s.sign() * graph.length(s.index);
    }
  }

  FormSpaceRanks r;
  r.all = static_cast<std::size_t>(ne + nl - numerical_rank(balance).rank);
  r.holomorphic = static_cast<std::size_t>(ne - numerical_rank(balance.leftCols(ne)).rank);
  r.exact = static_cast<std::size_t>(ne + nl - numerical_rank(exactness).rank);
  return r;
}

FormSpaceDims form_space_dims(const MetricGraph& graph) {
  if (graph.leaf_count() < 2) fail(ErrorCode::TooFewLeaves, "needs at least two leaves");
  const FormSpaceDims expected{graph.leaf_count() - 1, graph.genus()};
  const auto ranks = form_space_ranks(graph);
  if (ranks.exact != expected.exact || ranks.holomorphic != expected.holomorphic ||
      ranks.all != expected.exact + expected.holomorphic) {
    fail(ErrorCode::InternalError, "form space ranks disagree with (n-1, g)");
  }
  return expected;
}

bool is_integer_form(const OneForm& form, double tolerance) {
  auto near_integer = [tolerance](double x) { return std::abs(x - std::round(x)) <= tolerance; };
  for (Eigen::Index i = 0; i < form.edge_values().size(); ++i) {
    if (!near_integer(form.edge_values()(i))) return false;
  }
  for (Eigen::Index i = 0; i < form.leaf_values().size(); ++i) {
    if (!near_integer(form.leaf_values()(i))) return false;
  }
  return true;
}

}  // namespace tropharm
