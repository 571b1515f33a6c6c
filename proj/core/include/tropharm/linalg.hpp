#pragma once

#include <Eigen/Dense>

namespace tropharm {

/// Default relative threshold: singular values above threshold * sigma_max count.
inline constexpr double kRankThreshold = 1e-9;

struct RankInfo {
  Eigen::Index rank = 0;
  Eigen::VectorXd singular_values;
};

RankInfo numerical_rank(const Eigen::MatrixXd& matrix, double relative_threshold = kRankThreshold);

/// Orthonormal basis of the right null space (columns), same threshold rule.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& matrix, double relative_threshold = kRankThreshold);

}  // namespace tropharm
