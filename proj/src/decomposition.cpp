#include "eigengesture/decomposition.hpp"

#include <cmath>

#include "eigengesture/error.hpp"
#include "eigengesture/text_io.hpp"

namespace eigengesture {

namespace {

void check_rank(const SvdResult& svd, int rank) {
  if (rank < 1 || rank > svd.q())
    throw Error(ErrorCode::RankOutOfRange,
                "rank " + std::to_string(rank) + " outside 1.." + std::to_string(svd.q()));
}

// tail[n] = sum_{i >= n} sigma_i^2 (0-based), accumulated from the smallest values up.
std::vector<double> spectral_tails(const Eigen::VectorXd& sigma) {
  std::vector<double> tail(sigma.size() + 1, 0.0);
  for (Eigen::Index i = sigma.size() - 1; i >= 0; --i) tail[i] = tail[i + 1] + sigma(i) * sigma(i);
  return tail;
}

}  // namespace

PrincipalComponents principal_components(const SvdResult& svd) {
  return {svd.V * svd.sigma.asDiagonal()};
}

std::vector<Eigengesture> eigengestures(const SvdResult& svd, int count) {
  if (count < 1 || count > svd.q())
    throw Error(ErrorCode::CountOutOfRange,
                "eigengesture count " + std::to_string(count) + " outside 1.." + std::to_string(svd.q()));
  if (!svd.layout) throw Error(ErrorCode::BadShape, "eigengestures need the data matrix layout");
  const auto& lay = *svd.layout;
  if (svd.U.rows() != lay.rows()) throw Error(ErrorCode::BadShape, "U rows do not match N*S");

  const double total = svd.sigma.squaredNorm();
  std::vector<Eigengesture> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigengesture e;
    e.index = i + 1;
    e.shape = unvectorise(svd.U.col(i), lay.samples, lay.sensors);
    e.singular_value = svd.sigma(i);
    e.energy_fraction = total > 0.0 ? svd.sigma(i) * svd.sigma(i) / total : 0.0;
    out.push_back(std::move(e));
  }
  return out;
}

Eigen::MatrixXd reconstruct(const SvdResult& svd, int rank) {
  check_rank(svd, rank);
  return svd.U.leftCols(rank) * svd.sigma.head(rank).asDiagonal() * svd.V.leftCols(rank).transpose();
}

Eigen::MatrixXd reconstruct_gesture(const SvdResult& svd, int k, int l, int rank) {
  if (!svd.layout) throw Error(ErrorCode::BadShape, "gesture reconstruction needs the data matrix layout");
  const auto& lay = *svd.layout;
  if (k < 0 || k >= lay.gestures || l < 0 || l >= lay.realisations)
    throw Error(ErrorCode::UnknownRealisation,
                "(" + std::to_string(k + 1) + "," + std::to_string(l + 1) + ") not in the data matrix");
  check_rank(svd, rank);
  const int c = lay.column_of(k, l);
  const Eigen::VectorXd weights = svd.sigma.head(rank).cwiseProduct(svd.V.row(c).head(rank).transpose());
  const Eigen::VectorXd column = svd.U.leftCols(rank) * weights;
  return unvectorise(column, lay.samples, lay.sensors);
}

ErrorCurve error_curve(const SvdResult& svd, int n_max) {
  check_rank(svd, n_max);
  const auto tail = spectral_tails(svd.sigma);
  ErrorCurve curve;
  curve.d.assign(n_max, 0.0);
  curve.d[0] = 1.0;
  const double denom = tail[1];
  if (!(denom > 0.0)) {
    curve.degenerate = true;
    return curve;
  }
  const double root_denom = std::sqrt(denom);
  for (int n = 2; n <= n_max; ++n) curve.d[n - 1] = std::sqrt(tail[n]) / root_denom;
  return curve;
}

ErrorCurve error_curve(const DataMatrix& X, const SvdResult& svd, int n_max) {
  if (X.X.rows() != svd.U.rows() || X.X.cols() != svd.V.rows())
    throw Error(ErrorCode::BadShape, "SVD factors do not match the data matrix");
  return error_curve(svd, n_max);
}

std::vector<double> column_error_curve(const SvdResult& svd, int n_max) {
  check_rank(svd, n_max);
  const Eigen::Index cols = svd.V.rows();
  const int q = svd.q();
  std::vector<double> mean(n_max, 0.0);
  int used = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    // residual energy of column c after rank n: sum_{i > n} (sigma_i V_ci)^2
    std::vector<double> tail(q + 1, 0.0);
    for (int i = q - 1; i >= 0; --i) {
      const double w = svd.sigma(i) * svd.V(c, i);
      tail[i] = tail[i + 1] + w * w;
    }
    if (!(tail[0] > 0.0)) continue;
    ++used;
    for (int n = 1; n <= n_max; ++n) mean[n - 1] += std::sqrt(tail[n] / tail[0]);
  }
  if (used > 0)
    for (auto& v : mean) v /= used;
  return mean;
}

std::string format_spectrum_csv(const SvdResult& svd) {
  const double total = svd.sigma.squaredNorm();
  std::string out = "index,sigma,energy_fraction,cumulative_energy\n";
  double cumulative = 0.0;
  for (int i = 0; i < svd.q(); ++i) {
    const double energy = total > 0.0 ? svd.sigma(i) * svd.sigma(i) / total : 0.0;
    cumulative += energy;
    out += std::to_string(i + 1) + ',' + format_number(svd.sigma(i)) + ',' + format_number(energy) + ',' +
           format_number(cumulative) + '\n';
  }
  return out;
}

std::string format_error_curve_csv(const ErrorCurve& curve) {
  std::string out = "n,d_n\n";
  for (std::size_t i = 0; i < curve.d.size(); ++i) out += std::to_string(i + 1) + ',' + format_number(curve.d[i]) + '\n';
  return out;
}

std::string format_column_error_csv(const std::vector<double>& curve) {
  std::string out = "n,mean_column_error\n";
  for (std::size_t i = 0; i < curve.size(); ++i) out += std::to_string(i + 1) + ',' + format_number(curve[i]) + '\n';
  return out;
}

}  // namespace eigengesture
