#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "eigengesture/decomposition.hpp"
#include "eigengesture/error.hpp"

namespace eigengesture {

namespace {

struct JacobiState {
  Eigen::MatrixXd work;      // m x n, columns converge to mutually orthogonal
  Eigen::MatrixXd rotation;  // n x n accumulated rotations
  int sweeps = 0;
};

// Orthogonalises the columns of a (m >= n) by plane rotations applied from the right.
JacobiState one_sided_jacobi(const Eigen::MatrixXd& a, int max_sweeps) {
  JacobiState st{a, Eigen::MatrixXd::Identity(a.cols(), a.cols()), 0};
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  const double tol = static_cast<double>(m) * std::numeric_limits<double>::epsilon();

  for (st.sweeps = 1; st.sweeps <= max_sweeps; ++st.sweeps) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        double* wp = st.work.col(p).data();
        double* wq = st.work.col(q).data();
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
          alpha += wp[i] * wp[i];
          beta += wq[i] * wq[i];
          gamma += wp[i] * wq[i];
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::abs(zeta) > 1e150
                             ? 1.0 / (2.0 * zeta)
                             : std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index i = 0; i < m; ++i) {
          const double x = wp[i], y = wq[i];
          wp[i] = c * x - s * y;
          wq[i] = s * x + c * y;
        }
        double* jp = st.rotation.col(p).data();
        double* jq = st.rotation.col(q).data();
        for (Eigen::Index i = 0; i < n; ++i) {
          const double x = jp[i], y = jq[i];
          jp[i] = c * x - s * y;
          jq[i] = s * x + c * y;
        }
      }
    }
    if (!rotated) return st;
  }
  throw Error(ErrorCode::NoConvergence,
              "Jacobi SVD did not converge in " + std::to_string(max_sweeps) + " sweeps");
}

// Fills columns [first, q) of basis with unit vectors orthogonal to all earlier columns.
void complete_basis(Eigen::MatrixXd& basis, Eigen::Index first) {
  const Eigen::Index dim = basis.rows();
  Eigen::Index candidate = 0;
  for (Eigen::Index j = first; j < basis.cols(); ++j) {
    bool filled = false;
    while (!filled && candidate < dim) {
      Eigen::VectorXd v = Eigen::VectorXd::Unit(dim, candidate++);
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index i = 0; i < j; ++i) v -= basis.col(i).dot(v) * basis.col(i);
      const double norm = v.norm();
      // some unit vector always keeps at least 1/sqrt(dim) of its length
      if (norm >= 0.99 / std::sqrt(static_cast<double>(dim))) {
        basis.col(j) = v / norm;
        filled = true;
      }
    }
    if (!filled) throw Error(ErrorCode::NoConvergence, "could not complete orthonormal basis");
  }
}

}  // namespace

SvdResult svd(const Eigen::MatrixXd& X, const SvdOptions& options) {
  if (X.rows() == 0 || X.cols() == 0) throw Error(ErrorCode::EmptyInput, "SVD of an empty matrix");
  if (!X.allFinite()) throw Error(ErrorCode::BadShape, "SVD input contains non-finite values");

  const bool transposed = X.rows() < X.cols();
  const Eigen::MatrixXd a = transposed ? Eigen::MatrixXd(X.transpose()) : X;
  auto st = one_sided_jacobi(a, options.max_sweeps);

  const Eigen::Index q = a.cols();
  Eigen::VectorXd norms(q);
  for (Eigen::Index j = 0; j < q; ++j) norms(j) = st.work.col(j).norm();
  std::vector<Eigen::Index> order(q);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return norms(i) > norms(j); });

  // Columns whose norm underflows carry no direction; rebuild them from the basis.
  constexpr double kNullNorm = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

  SvdResult out;
  out.sweeps = st.sweeps;
  out.sigma.resize(q);
  Eigen::MatrixXd normalised(a.rows(), q);
  Eigen::MatrixXd rotation(q, q);
  Eigen::Index nonzero = 0;
  for (Eigen::Index j = 0; j < q; ++j) {
    const auto src = order[j];
    rotation.col(j) = st.rotation.col(src);
    if (norms(src) > kNullNorm) {
      out.sigma(j) = norms(src);
      normalised.col(j) = st.work.col(src) / norms(src);
      nonzero = j + 1;
    } else {
      out.sigma(j) = 0.0;
    }
  }
  complete_basis(normalised, nonzero);

  if (transposed) {
    out.U = std::move(rotation);
    out.V = std::move(normalised);
  } else {
    out.U = std::move(normalised);
    out.V = std::move(rotation);
  }

  for (Eigen::Index j = 0; j < q; ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < out.U.rows(); ++i) {
      if (std::abs(out.U(i, j)) > best) {
        best = std::abs(out.U(i, j));
        arg = i;
      }
    }
    if (out.U(arg, j) < 0.0) {
      out.U.col(j) *= -1.0;
      out.V.col(j) *= -1.0;
    }
  }
  return out;
}

SvdResult svd(const DataMatrix& X, const SvdOptions& options) {
  auto out = svd(X.X, options);
  out.layout = X.layout;
  return out;
}

}  // namespace eigengesture
