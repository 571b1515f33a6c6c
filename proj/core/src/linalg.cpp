#include "tropharm/linalg.hpp"

namespace tropharm {

RankInfo numerical_rank(const Eigen::MatrixXd& matrix, double relative_threshold) {
  RankInfo info;
  if (matrix.size() == 0) return info;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix);
  info.singular_values = svd.singularValues();
  const double sigma_max = info.singular_values.size() > 0 ? info.singular_values(0) : 0.0;
  if (sigma_max == 0.0) return info;
  for (Eigen::Index i = 0; i < info.singular_values.size(); ++i) {
    if (info.singular_values(i) > relative_threshold * sigma_max) ++info.rank;
  }
  return info;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& matrix, double relative_threshold) {
  const Eigen::Index cols = matrix.cols();
  if (matrix.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double sigma_max = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (sigma_max > 0.0 && s(i) > relative_threshold * sigma_max) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

}  // namespace tropharm
