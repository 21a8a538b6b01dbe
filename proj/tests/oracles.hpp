#pragma once

// Test-only reference computations, kept independent of the library's code paths.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = n(rng);
  return m;
}

// Singular values as square roots of the eigenvalues of the smaller Gram
// matrix, descending.
inline Eigen::VectorXd gram_singular_values(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd gram = x.rows() >= x.cols() ? Eigen::MatrixXd(x.transpose() * x) : Eigen::MatrixXd(x * x.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  Eigen::VectorXd ev = es.eigenvalues().reverse();
  return ev.cwiseMax(0.0).cwiseSqrt();
}

// Singular values from Eigen's two-sided Jacobi SVD. Resolves values far below
// the Gram route's sqrt(eps) floor, so use it for rank counting.
inline Eigen::VectorXd jacobi_singular_values(const Eigen::MatrixXd& x) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(x).singularValues();
}

// Frobenius norm by explicit element loop.
inline double frobenius(const Eigen::MatrixXd& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

// Piecewise-linear interpolation evaluated point by point from the definition.
inline double lerp_at(const std::vector<double>& xs, double tau) {
  const double pos = tau * static_cast<double>(xs.size() - 1);
  std::size_t j = static_cast<std::size_t>(pos);
  if (j >= xs.size() - 1) return xs.back();
  const double g = pos - static_cast<double>(j);
  return (1.0 - g) * xs[j] + g * xs[j + 1];
}

// Double cumulative sum with zero initial conditions.
inline std::vector<double> double_cumsum(const std::vector<double>& a, double dt) {
  std::vector<double> v(a.size()), p(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    v[t] = (t ? v[t - 1] : 0.0) + a[t] * dt;
    p[t] = (t ? p[t - 1] : 0.0) + v[t] * dt;
  }
  return p;
}

// Population mean and standard deviation in long double.
inline std::pair<double, double> moments(const std::vector<double>& xs) {
  long double s = 0.0L;
  for (double x : xs) s += x;
  const long double mean = s / xs.size();
  long double ss = 0.0L;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(ss / xs.size()))};
}

}  // namespace oracle
