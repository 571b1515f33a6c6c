#include "tropharm/phase.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "tropharm/error.hpp"
#include "tropharm/linalg.hpp"

namespace tropharm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double distance_to_2pi_lattice(double x) {
  return std::abs(x - kTwoPi * std::round(x / kTwoPi));
}

TwistAssignment::TwistAssignment(MetricGraph carrier, Eigen::VectorXd angles)
    : carrier_(std::move(carrier)), angles_(std::move(angles)) {
  if (angles_.size() != static_cast<Eigen::Index>(carrier_.edge_count())) {
    fail(ErrorCode::DimensionMismatch, "twist assignment needs one angle per non-leaf edge");
  }
  if (!angles_.allFinite()) fail(ErrorCode::InvalidInput, "twist angles must be finite");
  for (Eigen::Index i = 0; i < angles_.size(); ++i) angles_(i) = reduce_angle(angles_(i));
}

TwistAssignment TwistAssignment::from_map(const MetricGraph& carrier,
                                          const std::map<std::string, double>& angles) {
  Eigen::VectorXd values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(carrier.edge_count()));
  for (const auto& [id, theta] : angles) {
    const auto e = carrier.find_edge(id);
    if (!e) fail(ErrorCode::UnknownEdge, "twist given for unknown edge '" + id + "'");
    values(static_cast<Eigen::Index>(*e)) = theta;
  }
  return TwistAssignment(carrier, std::move(values));
}

TwistAssignment TwistAssignment::zero(const MetricGraph& carrier) {
  return TwistAssignment(carrier, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(carrier.edge_count())));
}

namespace {
void require_loop(const GraphPath& loop) {
  if (!loop.loop || loop.empty()) fail(ErrorCode::NotALoop, "twist sums are taken over loops");
}
}  // namespace

double loop_twist_sum(const TwistAssignment& twists, const OneForm& form, const GraphPath& loop) {
  require_loop(loop);
  double sum = 0.0;
  for (const auto& step : loop.steps) sum += twists.angle(step.index) * form.value(step);
  return sum;
}

Eigen::VectorXd loop_twist_sums(const TwistAssignment& twists, const HarmonicMorphism& morphism,
                                const GraphPath& loop) {
  require_loop(loop);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(morphism.ambient_dim());
  for (const auto& step : loop.steps) sum += twists.angle(step.index) * morphism.slope(step);
  return sum;
}

IntegralityCheck check_integrality(const TwistAssignment& twists, const HarmonicMorphism& morphism,
                                   double tol) {
  if (!is_tropical(morphism)) fail(ErrorCode::NotTropical, "morphism slopes are not integral");
  const auto loops = cycle_basis(morphism.carrier);
  const Eigen::Index m = morphism.ambient_dim();
  IntegralityCheck check;
  check.residuals = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(loops.size()), m);
  check.passed.setConstant(static_cast<Eigen::Index>(loops.size()), m, true);
  for (std::size_t r = 0; r < loops.size(); ++r) {
    const Eigen::VectorXd sums = loop_twist_sums(twists, morphism, loops[r]);
    for (Eigen::Index k = 0; k < m; ++k) {
      const double residual = distance_to_2pi_lattice(sums(k));
      const auto row = static_cast<Eigen::Index>(r);
      check.residuals(row, k) = residual;
      check.passed(row, k) = residual <= tol;
      check.max_residual = std::max(check.max_residual, residual);
      check.all_passed = check.all_passed && residual <= tol;
    }
  }
  return check;
}

TwistAssignment TwistSolution::point(const Eigen::VectorXd& coefficients) const {
  const MetricGraph& carrier = representative.carrier();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(carrier.edge_count()));
  if (kernel.cols() > 0) theta = kTwoPi * (kernel * coefficients);
  return TwistAssignment(carrier, std::move(theta));
}

TwistSolution solve_twists(const MetricGraph& carrier, const HarmonicMorphism& morphism) {
  if (!is_tropical(morphism)) fail(ErrorCode::NotTropical, "morphism slopes are not integral");
  const auto regularity = regularity_rank(carrier, morphism);
  const Eigen::MatrixXd rounded = regularity.constraints.array().round().matrix();
  const auto ne = static_cast<Eigen::Index>(carrier.edge_count());
  TwistSolution solution{
      rounded.cast<int>(),
      0,
      0,
      Eigen::MatrixXd::Identity(ne, ne),
      TwistAssignment::zero(carrier),
  };
  if (rounded.rows() > 0) {
    solution.rank = static_cast<std::size_t>(numerical_rank(rounded).rank);
    solution.kernel = null_space(rounded);
  }
  solution.dimension = carrier.edge_count() - solution.rank;
  return solution;
}

PeriodBasis default_period_basis(const MetricGraph& carrier) {
  PeriodBasis basis;
  for (std::size_t l = 0; l + 1 < carrier.leaf_count(); ++l) basis.puncture_leaves.push_back(l);
  const auto tree = spanning_tree(carrier);
  basis.a_edges = tree.cotree_edges;
  basis.b_loops = cycle_basis(carrier, tree);
  return basis;
}

namespace {

void check_basis(const MetricGraph& carrier, const PeriodBasis& basis) {
  const std::size_t n = carrier.leaf_count();
  const std::size_t g = carrier.genus();
  const std::size_t expected_punctures = n > 0 ? n - 1 : 0;
  if (basis.puncture_leaves.size() != expected_punctures) {
    fail(ErrorCode::BadBasis, "need " + std::to_string(expected_punctures) + " puncture rows");
  }
  if (std::set<std::size_t>(basis.puncture_leaves.begin(), basis.puncture_leaves.end()).size() !=
      basis.puncture_leaves.size()) {
    fail(ErrorCode::BadBasis, "puncture rows repeat a leaf");
  }
  for (std::size_t l : basis.puncture_leaves) {
    if (l >= n) fail(ErrorCode::BadBasis, "puncture row references a missing leaf");
  }
  if (basis.a_edges.size() != g || basis.b_loops.size() != g) {
    fail(ErrorCode::BadBasis, "need " + std::to_string(g) + " A-cycles and B-cycles");
  }
  for (std::size_t e : basis.a_edges) {
    if (e >= carrier.edge_count()) fail(ErrorCode::BadBasis, "A-cycle references a missing edge");
  }
  if (g == 0) return;
  // Intersection pairing between B-loops and the A-cycles around the chosen
  // edges must be unimodular up to numerical rank.
  Eigen::MatrixXd pairing(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g));
  for (std::size_t b = 0; b < g; ++b) {
    if (!basis.b_loops[b].loop) fail(ErrorCode::BadBasis, "B-cycles must be loops");
    const auto incidence = edge_incidence(carrier, basis.b_loops[b]);
    for (std::size_t a = 0; a < g; ++a) {
      pairing(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = incidence[basis.a_edges[a]];
    }
  }
  if (numerical_rank(pairing).rank != static_cast<Eigen::Index>(g)) {
    fail(ErrorCode::BadBasis, "A/B rows are rationally dependent");
  }
}

}  // namespace

LimitPeriodMatrix limit_period_matrix(const MetricGraph& carrier, const TwistAssignment& twists,
                                      const ResidueMatrix& residues, const PeriodBasis& basis) {
  if (residues.cols() != static_cast<Eigen::Index>(carrier.leaf_count())) {
    fail(ErrorCode::DimensionMismatch, "residue matrix needs one column per leaf");
  }
  check_basis(carrier, basis);
  const Eigen::Index m = residues.rows();
  const KirchhoffSolver solver(carrier);
  std::vector<OneForm> forms;
  for (Eigen::Index k = 0; k < m; ++k) forms.push_back(solver.solve(residues.row(k)));

  const std::size_t rows = basis.puncture_leaves.size() + basis.a_edges.size() + basis.b_loops.size();
  LimitPeriodMatrix out;
  out.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), m);
  Eigen::Index row = 0;
  for (std::size_t l : basis.puncture_leaves) {
    out.kinds.push_back(PeriodRowKind::Puncture);
    out.labels.push_back("puncture:" + carrier.leaf(l).id);
    for (Eigen::Index k = 0; k < m; ++k) out.entries(row, k) = residues.entries()(k, static_cast<Eigen::Index>(l));
    ++row;
  }
  for (std::size_t e : basis.a_edges) {
    out.kinds.push_back(PeriodRowKind::ACycle);
    out.labels.push_back("A:" + carrier.edge(e).id);
    for (Eigen::Index k = 0; k < m; ++k) {
      out.entries(row, k) = forms[static_cast<std::size_t>(k)].edge_values()(static_cast<Eigen::Index>(e));
    }
    ++row;
  }
  for (std::size_t b = 0; b < basis.b_loops.size(); ++b) {
    out.kinds.push_back(PeriodRowKind::BCycle);
    out.labels.push_back("B:" + std::to_string(b));
    for (Eigen::Index k = 0; k < m; ++k) {
      out.entries(row, k) = loop_twist_sum(twists, forms[static_cast<std::size_t>(k)], basis.b_loops[b]) / kTwoPi;
    }
    ++row;
  }
  return out;
}

LimitPeriodMatrix limit_period_matrix(const MetricGraph& carrier, const TwistAssignment& twists,
                                      const ResidueMatrix& residues) {
  return limit_period_matrix(carrier, twists, residues, default_period_basis(carrier));
}

bool is_integer_period_matrix(const LimitPeriodMatrix& matrix, double tol) {
  for (Eigen::Index i = 0; i < matrix.entries.rows(); ++i) {
    for (Eigen::Index k = 0; k < matrix.entries.cols(); ++k) {
      const auto z = matrix.entries(i, k);
      if (std::abs(z.real() - std::round(z.real())) > tol || std::abs(z.imag()) > tol) return false;
    }
  }
  return true;
}

}  // namespace tropharm
