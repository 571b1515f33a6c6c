// Acceptance runner: one PASS/FAIL line per criterion.
//   tropharm_acceptance                 run everything
//   tropharm_acceptance --criterion 6b  run one entry
// Exit status is 0 iff every selected criterion passed.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tropharm/amoeba.hpp"
#include "tropharm/collar.hpp"
#include "tropharm/convergence.hpp"
#include "tropharm/forms.hpp"
#include "tropharm/morphism.hpp"
#include "tropharm/phase.hpp"
#include "tropharm/realization.hpp"

namespace {

using namespace tropharm;
using tropharm::testing::random_cubic_graph;
using tropharm::testing::random_residues;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Valid (genus, leaves) pairs: trees need 3 leaves, genus one needs 2.
std::size_t min_leaves(std::size_t g) { return g == 0 ? 3 : g == 1 ? 2 : 1; }

void form_space_dimensions(Verdict& v) {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  int checked = 0;
  for (int i = 0; i < 25; ++i) {
    const std::size_t g = static_cast<std::size_t>(i % 5);
    const std::size_t n = std::max<std::size_t>(std::max<std::size_t>(min_leaves(g), 2), 2 + static_cast<std::size_t>(i % 5));
    const MetricGraph c = random_cubic_graph(rng, g, n).metric();
    const auto ranks = form_space_ranks(c);
    v.require(ranks.exact == n - 1, "dim exact = n-1 at g=" + std::to_string(g) + " n=" + std::to_string(n));
    v.require(ranks.holomorphic == g, "dim holomorphic = g at g=" + std::to_string(g) + " n=" + std::to_string(n));
    ++checked;
  }
  const double secs = seconds_since(start);
  v.require(secs < 5.0, "runtime < 5 s");
  v.detail << checked << " graphs (g <= 4, n <= 6), " << secs << " s";
}

struct Instance {
  MetricGraph graph;
  Eigen::VectorXd residues;
};

std::vector<Instance> random_instances(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    const std::size_t g = static_cast<std::size_t>(i % 8);
    const std::size_t n = std::max<std::size_t>(min_leaves(g), 2) + static_cast<std::size_t>(i % 5);
    MetricGraph c = random_cubic_graph(rng, g, n).metric();
    const Eigen::VectorXd r = random_residues(rng, 1, static_cast<Eigen::Index>(n), false).row(0).transpose();
    out.push_back({std::move(c), r});
  }
  return out;
}

void kirchhoff_oracle(Verdict& v) {
  const auto start = Clock::now();
  double worst = 0.0;
  std::size_t max_edges = 0;
  for (const auto& inst : random_instances(202, 50)) {
    max_edges = std::max(max_edges, inst.graph.edge_count());
    const OneForm w = solve_exact_form(inst.graph, inst.residues);
    if (inst.graph.edge_count() == 0) continue;
    const Eigen::VectorXd oracle = tropharm::testing::energy_minimiser(inst.graph, inst.residues);
    worst = std::max(worst, (w.edge_values() - oracle).cwiseAbs().maxCoeff());
  }
  const double secs = seconds_since(start);
  v.require(max_edges <= 30, "instances have <= 30 edges");
  v.require(worst <= 1e-9, "max deviation <= 1e-9");
  v.require(secs < 10.0, "runtime < 10 s");
  v.detail << "50 instances, max edges " << max_edges << ", max deviation " << worst << ", " << secs << " s";
}

void balancing_exactness(Verdict& v) {
  double worst_balance = 0.0;
  double worst_loop_ratio = 0.0;
  std::size_t forms = 0;
  for (const auto& inst : random_instances(303, 100)) {
    const OneForm w = solve_exact_form(inst.graph, inst.residues);
    worst_balance = std::max(worst_balance, w.balance_defect());
    for (const auto& loop : cycle_basis(inst.graph)) {
      worst_loop_ratio = std::max(worst_loop_ratio, std::abs(integrate(w, loop)) / inst.graph.total_length());
    }
    ++forms;
  }
  v.require(worst_balance <= 1e-9, "balancing <= 1e-9");
  v.require(worst_loop_ratio <= 1e-9, "loop integrals <= 1e-9 * total length");
  v.detail << forms << " forms, max balance defect " << worst_balance << ", max |loop integral|/sum l "
           << worst_loop_ratio;
}

void collar_criterion(Verdict& v) {
  const auto start = Clock::now();
  // Closed form check against an independent evaluation at a few lengths.
  double worst = 0.0;
  for (double l : {1e-6, 1e-3, 0.1, 1.0, 5.0}) {
    const double w = std::asinh(1.0 / std::sinh(l / 2.0));
    const double expected = (2.0 / l) * std::acos(1.0 / std::cosh(w));
    worst = std::max(worst, std::abs(collar_modulus(l) - expected) / expected);
  }
  const auto report = collar_limit_report(1, 8);
  const double secs = seconds_since(start);
  v.require(worst <= 1e-9, "closed form agrees");
  v.require(report.monotone, "l*m(l) increasing as l decreases");
  v.require(report.pi_gap <= 1e-6, "limit within 1e-6 of pi");
  v.require(report.contradicts_quoted_constant, "deviation from the constant 2 flagged");
  v.require(secs < 1.0, "runtime < 1 s");
  v.detail << "l*m(l) at l=1e-8: " << report.limit_estimate << ", |limit - pi| = " << report.pi_gap
           << ", quoted constant " << report.quoted_constant << " contradicted, " << secs << " s";
}

void degeneration_constant(Verdict& v) {
  const auto start = Clock::now();
  const std::array<double, 6> ts{1e8, 1e16, 1e32, 1e64, 1e128, 1e256};
  const auto report = annulus_period_experiment(1.0, kDefaultKappa, ts);
  const double target = 2.0 * kPi * kPi;
  const double rel = std::abs(report.kappa_star - target) / target;
  const double secs = seconds_since(start);
  v.require(rel <= 0.01, "kappa* within 1% of 2 pi^2");
  v.require(secs < 1.0, "runtime < 1 s");
  v.detail << "kappa = 4pi: limit " << report.extrapolated_limit << " (pi/2 = " << kPi / 2.0 << "), kappa* "
           << report.kappa_star << " vs 2pi^2 = " << target << " (rel. error " << rel << "), " << secs << " s";
}

ResidueMatrix line_residues() {
  Eigen::MatrixXd r(2, 3);
  r << 1, 0, -1, 0, 1, -1;
  return ResidueMatrix(r);
}

ConvergenceReport line_report() {
  static const ConvergenceReport report = [] {
    const std::array<double, 4> ts{1e3, 1e4, 1e5, 1e6};
    ConvergenceOptions opt;
    opt.window = Box::cube(2, -3.0, 3.0);
    opt.punctures = std::vector<Puncture>{Puncture::finite(0.0), Puncture::finite(1.0), Puncture::infinity()};
    return convergence_experiment(tropharm::testing::tripod(), line_residues(), ts, opt);
  }();
  return report;
}

void line_convergence(Verdict& v) {
  const auto start = Clock::now();
  const auto report = line_report();
  const double secs = seconds_since(start);
  bool non_increasing = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    non_increasing = non_increasing && report.rows[i].global_hausdorff <= report.rows[i - 1].global_hausdorff;
  }
  v.require(report.rows.size() == 4, "four values of t");
  v.require(non_increasing, "distances non-increasing in t");
  v.require(secs < 30.0, "runtime < 30 s");
  for (const auto& row : report.rows) v.detail << "t=" << row.t << ": " << row.global_hausdorff << "; ";
  v.detail << secs << " s";
}

void line_threshold(Verdict& v) {
  const auto report = line_report();
  const double last = report.rows.back().global_hausdorff;
  v.require(last <= 0.05, "distance <= 0.05 at t = 1e6");
  v.detail << "distance at t=1e6: " << last << ", log 2 / log 1e6 = " << std::log(2.0) / std::log(1e6);
}

void caterpillar_realization(Verdict& v) {
  const auto start = Clock::now();
  Eigen::MatrixXd r(2, 4);
  r << 1, 0, -1, 0, 0, 1, 0, -1;
  const MetricGraph c = tropharm::testing::caterpillar(1.0);
  const Realization real = realize_genus0(c, ResidueMatrix(r), 1e6);
  const std::array<double, 1> ts{1e6};
  const auto report = convergence_experiment(c, ResidueMatrix(r), ts);
  const double secs = seconds_since(start);
  const auto& row = report.rows.back();
  v.require(std::abs(real.placement.sphere[2].value - Complex(1e6, 0.0)) <= 1e-6, "third puncture at t^l");
  v.require(row.global_hausdorff <= 0.08, "distance <= 0.08 at t = 1e6");
  v.require(row.per_tripod.size() == 2, "per-tripod distances reported");
  v.require(secs < 60.0, "runtime < 60 s");
  v.detail << "global " << row.global_hausdorff << ", per tripod:";
  for (const auto& [id, d] : row.per_tripod) v.detail << " " << id << "=" << d;
  v.detail << ", " << secs << " s";
}

void twist_integrality(Verdict& v) {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  int morphisms = 0;
  int rep_pass = 0;
  int random_fail = 0;
  int random_total = 0;
  int disagreements = 0;
  int unconstrained = 0;
  double worst_rep = 0.0;
  for (int attempt = 0; attempt < 400 && morphisms < 20; ++attempt) {
    MetricGraph c = (attempt % 2 == 0)
                        ? tropharm::testing::dumbbell(1.0 + static_cast<double>(rng() % 3), 1.0 + static_cast<double>(rng() % 3))
                        : random_cubic_graph(rng, 2, 2 + static_cast<std::size_t>(rng() % 2), true).metric();
    const Eigen::MatrixXd base = random_residues(rng, 1 + static_cast<Eigen::Index>(rng() % 2),
                                                 static_cast<Eigen::Index>(c.leaf_count()), true);
    if (base.isZero()) continue;
    const auto k = tropharm::testing::integral_scale(c, base, 200);
    if (!k) continue;
    const ResidueMatrix r(static_cast<double>(*k) * base);
    const HarmonicMorphism m = build_morphism(c, r, 0);
    if (!is_tropical(m)) continue;
    const TwistSolution s = solve_twists(c, m);
    // With no nonzero congruence every twist is a solution.
    if (s.rank == 0) {
      ++unconstrained;
      continue;
    }
    ++morphisms;

    std::vector<TwistAssignment> solutions{s.representative};
    solutions.push_back(s.sample(rng));
    for (const auto& theta : solutions) {
      const auto check = check_integrality(theta, m, 1e-9);
      worst_rep = std::max(worst_rep, check.max_residual);
      if (check.all_passed) ++rep_pass;
      if (check.all_passed != is_integer_period_matrix(limit_period_matrix(c, theta, r))) ++disagreements;
    }

    Eigen::VectorXd angles(static_cast<Eigen::Index>(c.edge_count()));
    for (Eigen::Index e = 0; e < angles.size(); ++e) angles(e) = angle(rng);
    const TwistAssignment random_theta(c, angles);
    const auto check = check_integrality(random_theta, m, 1e-9);
    ++random_total;
    if (!check.all_passed) ++random_fail;
    if (check.all_passed != is_integer_period_matrix(limit_period_matrix(c, random_theta, r))) ++disagreements;
  }
  v.require(morphisms == 20, "20 random tropical morphisms");
  v.require(rep_pass == 2 * morphisms, "solution twists pass");
  v.require(worst_rep <= 1e-9, "residual <= 1e-9");
  v.require(random_fail == random_total, "random twists fail");
  v.require(disagreements == 0, "period-matrix verdict agrees");
  v.detail << morphisms << " morphisms; solution twists passing " << rep_pass << "/" << 2 * morphisms
           << " (max residual " << worst_rep << "); random twists failing " << random_fail << "/" << random_total
           << "; verdict disagreements " << disagreements << "; skipped " << unconstrained
           << " morphisms without constraints";
}

bool is_immersion(const HarmonicMorphism& m) {
  const auto& c = m.carrier;
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    const auto& out = c.outgoing(v);
    std::array<Eigen::VectorXd, 3> s{m.slope(out[0]), m.slope(out[1]), m.slope(out[2])};
    for (const auto& x : s) {
      if (x.norm() < 1e-9) return false;
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const double cross = s[a](0) * s[b](1) - s[a](1) * s[b](0);
        if (std::abs(cross) < 1e-9 && s[a].dot(s[b]) > 0.0) return false;
      }
    }
  }
  return true;
}

void regularity_criterion(Verdict& v) {
  std::mt19937_64 rng(909);
  int trees = 0;
  for (int i = 0; i < 10; ++i) {
    const MetricGraph c = random_cubic_graph(rng, 0, 3 + static_cast<std::size_t>(i % 4)).metric();
    const HarmonicMorphism m =
        build_morphism(c, ResidueMatrix(random_residues(rng, 2, static_cast<Eigen::Index>(c.leaf_count()), false)), 0);
    const auto reg = regularity_rank(c, m);
    v.require(reg.rank == 0 && reg.expected == 0 && reg.is_regular, "genus 0 gives (0, 0, regular)");
    ++trees;
  }

  const MetricGraph d = tropharm::testing::dumbbell();
  Eigen::MatrixXd r(1, 2);
  r << 3, -3;
  const auto dumbbell = regularity_rank(d, build_morphism(d, ResidueMatrix(r), 0));
  v.require(dumbbell.rank == 1 && dumbbell.expected == 1 && dumbbell.is_regular, "dumbbell (1, 1, regular)");
  const auto zero = regularity_rank(d, build_morphism(d, ResidueMatrix(Eigen::MatrixXd::Zero(1, 2)), 0));
  v.require(!zero.is_regular && zero.rank == 0, "zero morphism superabundant");

  int immersions = 0;
  for (int attempt = 0; attempt < 2000 && immersions < 10; ++attempt) {
    const MetricGraph c = random_cubic_graph(rng, 1, 3 + static_cast<std::size_t>(attempt % 3), true).metric();
    const Eigen::MatrixXd base = random_residues(rng, 2, static_cast<Eigen::Index>(c.leaf_count()), true);
    const auto k = tropharm::testing::integral_scale(c, base, 60);
    if (!k) continue;
    const HarmonicMorphism m = build_morphism(c, ResidueMatrix(static_cast<double>(*k) * base), 0);
    if (!is_tropical(m) || !is_immersion(m)) continue;
    ++immersions;
    const auto reg = regularity_rank(c, m);
    v.require(reg.rank == 2 * c.genus() && reg.is_regular, "planar genus-1 immersion has rank 2g");
  }
  v.require(immersions == 10, "10 genus-1 planar immersions generated");
  v.detail << trees << " genus-0 morphisms regular; dumbbell (" << dumbbell.rank << ", " << dumbbell.expected
           << ", regular); zero morphism rank " << zero.rank << " of " << zero.expected << "; " << immersions
           << " genus-1 immersions with rank 2";
}

void h_t_identity(Verdict& v) {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> log_t(1.0 + 1e-3, 60.0);
  std::uniform_real_distribution<double> log_r(-14.0, 14.0);
  std::uniform_real_distribution<double> arg(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = std::exp(log_t(rng));
    const Complex z = std::polar(std::exp(log_r(rng)), arg(rng));
    const auto h = rescale_H(t, std::vector<Complex>{z});
    worst = std::max(worst, std::abs(std::log(std::abs(h[0])) - std::log(std::abs(z)) / std::log(t)));
  }
  v.require(worst <= 1e-12, "max error <= 1e-12");
  v.detail << "1000 samples, max |log|H_t(z)| - log|z|/log t| = " << worst;
}

void pants_differential(Verdict& v) {
  std::mt19937_64 rng(1111);
  std::uniform_real_distribution<double> lambda(0.05, 20.0);
  double worst_residual = 0.0;
  double worst_root = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double l1 = lambda(rng);
    const double lm1 = lambda(rng);
    const auto z = field_zero(l1, lm1);
    worst_residual = std::max(worst_residual, z.residual);
    // Root of l1 (z+1) + lm1 (z-1) = 0, solved by hand.
    worst_root = std::max(worst_root, std::abs(z.root - Complex((lm1 - l1) / (l1 + lm1), 0.0)));
  }
  v.require(worst_residual <= 1e-10, "root residual <= 1e-10");
  v.require(worst_root <= 1e-12, "root matches the hand solution");

  const PuncturedSphere s({Puncture::finite(1.0), Puncture::finite(-1.0), Puncture::infinity()});
  Eigen::VectorXd r(3);
  r << 1.7, 0.6, -2.3;
  const auto w = ind_genus0(s, r);
  double worst_real = 0.0;
  double worst_ratio = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    for (double radius : {1e-2, 1e-3}) {
      const Complex p = w.circular_period(j, radius);
      worst_real = std::max(worst_real, std::abs(p.real()));
      worst_ratio = std::max(worst_ratio, std::abs(p.imag() - 2.0 * kPi * r(static_cast<Eigen::Index>(j))) / radius);
    }
  }
  v.require(worst_real <= 1e-9, "periods purely imaginary");
  v.require(worst_ratio <= 1.0, "residue error <= C r with C = 1");
  v.detail << "max residual " << worst_residual << ", max |root - hand root| " << worst_root
           << ", max |Re period| " << worst_real << ", max error / r " << worst_ratio;
}

void pants_zeta_formula(Verdict& v) {
  std::mt19937_64 rng(1111);
  std::uniform_real_distribution<double> lambda(0.05, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double l1 = lambda(rng);
    const double lm1 = lambda(rng);
    const auto z = field_zero(l1, lm1);
    worst = std::max(worst, std::abs(z.root - Complex((l1 - lm1) / (l1 + lm1), 0.0)));
  }
  v.require(worst <= 1e-12, "root equals (l1 - l-1)/(l1 + l-1)");
  v.detail << "max |root - (l1 - l-1)/(l1 + l-1)| = " << worst << " (the root is -(l1 - l-1)/(l1 + l-1))";
}

struct Criterion {
  const char* id;
  void (*run)(Verdict&);
};

constexpr Criterion kCriteria[] = {
    {"1", form_space_dimensions},       {"2", kirchhoff_oracle},     {"3", balancing_exactness},
    {"4", collar_criterion},        {"5", degeneration_constant}, {"6", line_convergence},
    {"6b", line_threshold},         {"7", caterpillar_realization}, {"8", twist_integrality},
    {"9", regularity_criterion},    {"10", h_t_identity},        {"11", pants_differential},
    {"11a", pants_zeta_formula},
};

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--criterion ID]\n", argv[0]);
      return 2;
    }
  }
  bool all_pass = true;
  bool matched = false;
  for (const auto& c : kCriteria) {
    if (!only.empty() && only != c.id) continue;
    matched = true;
    Verdict v;
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    std::printf("criterion %s: %s %s\n", c.id, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
    all_pass = all_pass && v.pass;
  }
  if (!matched) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return all_pass ? 0 : 1;
}
