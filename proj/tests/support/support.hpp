#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "tropharm/forms.hpp"
#include "tropharm/graph.hpp"
#include "tropharm/morphism.hpp"

namespace tropharm::testing {

struct RandomGraph {
  CubicGraph graph;
  std::map<std::string, double> lengths;
  MetricGraph metric() const { return validate(graph, lengths); }
};

/// Configuration-model cubic graph with genus g and n leaves (2g - 2 + n >= 1).
/// Self-loops and disconnected pairings are rejected and redrawn. Lengths are
/// uniform in [0.5, 3) or, with integer_lengths, integers in [1, 3].
RandomGraph random_cubic_graph(std::mt19937_64& rng, std::size_t genus, std::size_t leaves,
                               bool integer_lengths = false);

/// Random residue matrix with zero row sums; integer entries in
/// [-range, range] when `integer` is set, uniform reals otherwise.
Eigen::MatrixXd random_residues(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index leaves, bool integer,
                                int range = 3);

/// Minimises sum_e l(e) x_e^2 subject to balancing with the given residues,
/// by a dense KKT solve. Returns edge values in canonical orientation.
Eigen::VectorXd energy_minimiser(const MetricGraph& graph, const Eigen::VectorXd& residues);

/// Smallest k in [1, max_scale] such that k * R produces integer slopes, if any.
std::optional<int> integral_scale(const MetricGraph& graph, const Eigen::MatrixXd& residues, int max_scale = 1000);

/// Fixed small graphs.
MetricGraph tripod();
MetricGraph dumbbell(double l1 = 1.0, double l2 = 2.0);
MetricGraph caterpillar(double length = 1.0);
/// Two dumbbells joined by a bridge; genus 2, two leaves.
MetricGraph double_dumbbell(double a1 = 1.0, double a2 = 2.0, double bridge = 1.0, double b1 = 1.0,
                            double b2 = 2.0);

}  // namespace tropharm::testing
