#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eigengesture/preprocess.hpp"

namespace eigengesture {

// Thin SVD X = U diag(sigma) V^T with q = min(rows, cols).
struct SvdResult {
  Eigen::MatrixXd U;      // rows x q, orthonormal columns
  Eigen::VectorXd sigma;  // q, non-negative, non-increasing
  Eigen::MatrixXd V;      // cols x q, orthonormal columns
  std::optional<MatrixLayout> layout;  // present when computed from a DataMatrix
  int sweeps = 0;

  int q() const { return static_cast<int>(sigma.size()); }
};

struct SvdOptions {
  int max_sweeps = 100;
};

// One-sided (Hestenes) Jacobi SVD. Each U column is sign-normalised so that
// its largest-magnitude entry (lowest row on ties) is non-negative.
SvdResult svd(const Eigen::MatrixXd& X, const SvdOptions& options = {});
SvdResult svd(const DataMatrix& X, const SvdOptions& options = {});

struct PrincipalComponents {
  Eigen::MatrixXd scores;  // cols x q, column i = V[:, i] * sigma_i
};

PrincipalComponents principal_components(const SvdResult& svd);

struct Eigengesture {
  int index = 0;           // 1-based
  Eigen::MatrixXd shape;   // N x S
  double singular_value = 0.0;
  double energy_fraction = 0.0;
};

std::vector<Eigengesture> eigengestures(const SvdResult& svd, int count);

// Rank-n truncation U[:, :n] diag(sigma[:n]) V[:, :n]^T.
Eigen::MatrixXd reconstruct(const SvdResult& svd, int rank);

// Column (k, l) of the rank-n truncation, unflattened to N x S (0-based k, l).
Eigen::MatrixXd reconstruct_gesture(const SvdResult& svd, int k, int l, int rank);

struct ErrorCurve {
  std::vector<double> d;  // d[n-1] for n = 1..n_max
  bool degenerate = false;  // sigma_2..sigma_q all zero; curve is zero beyond n = 1
};

// d(n) = ||X - X_n||_F / ||X - X_1||_F via the tail sums of sigma^2.
ErrorCurve error_curve(const SvdResult& svd, int n_max);
ErrorCurve error_curve(const DataMatrix& X, const SvdResult& svd, int n_max);

// Mean over columns of ||x_c - x_c,n|| / ||x_c|| for n = 1..n_max; columns with
// zero norm are skipped.
std::vector<double> column_error_curve(const SvdResult& svd, int n_max);

// index, sigma, energy_fraction, cumulative_energy
std::string format_spectrum_csv(const SvdResult& svd);
// n, d_n
std::string format_error_curve_csv(const ErrorCurve& curve);
std::string format_column_error_csv(const std::vector<double>& curve);

}  // namespace eigengesture
