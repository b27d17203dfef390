#pragma once

// Small dense complex-matrix helpers on top of Eigen. All rank decisions go
// through one SVD policy: singular values below 1e-10 * sigma_max are zero.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace hexdof {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kRankTol = 1e-10;

struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline int numeric_rank(const Eigen::JacobiSVD<CMat>& svd) {
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cut = kRankTol * s(0);
  int r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

// Orthonormal basis of the column space of A (empty matrix for empty A).
inline CMat column_space(const CMat& A) {
  if (A.cols() == 0 || A.rows() == 0) return CMat(A.rows(), 0);
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullU);
  return svd.matrixU().leftCols(numeric_rank(svd));
}

// Orthonormal basis of the orthogonal complement of col(A) in C^rows.
// For A with zero columns this is the full identity basis.
inline CMat left_null_space(const CMat& A, int rows) {
  if (A.cols() == 0) return CMat::Identity(rows, rows);
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(rows - numeric_rank(svd));
}

// Right null space basis of A.
inline CMat null_space(const CMat& A) {
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(A.cols() - numeric_rank(svd));
}

// Components of the columns of B orthogonal to col(A).
inline CMat project_out(const CMat& A, const CMat& B) {
  if (A.cols() == 0) return B;
  CMat Q = column_space(A);
  return B - Q * (Q.adjoint() * B);
}

inline double smallest_singular_value(const CMat& A) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(A);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

inline double condition_number(const CMat& A) {
  Eigen::JacobiSVD<CMat> svd(A);
  const auto& s = svd.singularValues();
  double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

// Unit vector orthogonal to g in C^2 (Hermitian inner product).
inline Eigen::Vector2cd perp2(const Eigen::Vector2cd& g) {
  Eigen::Vector2cd u;
  u << -std::conj(g(1)), std::conj(g(0));
  double n = u.norm();
  if (n == 0.0) throw NumericalError("perp2: zero vector has no unique complement");
  return u / n;
}

struct Eig2x2 {
  cxd lambda1, lambda2;            // |lambda1| >= |lambda2| after selection
  Eigen::Vector2cd v1, v2;         // unit eigenvectors
  bool near_tie = false;           // |lambda1| - |lambda2| within 1e-9 of scale
};

// Analytic eigendecomposition of a 2x2 complex matrix. Eigenvalues from the
// characteristic polynomial; eigenvectors from the better-conditioned row of
// (A - lambda I). Ordering: larger |lambda| first; near-ties broken by
// lexicographic complex order (Re, then Im) so results are deterministic.
inline Eig2x2 eig2x2(const Eigen::Matrix2cd& A) {
  const cxd tr = A(0, 0) + A(1, 1);
  const cxd det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  const cxd disc = std::sqrt(tr * tr - 4.0 * det);
  cxd l1 = 0.5 * (tr + disc);
  cxd l2 = 0.5 * (tr - disc);

  const double scale = std::max({std::abs(l1), std::abs(l2), 1e-300});
  Eig2x2 out;
  out.near_tie = std::abs(std::abs(l1) - std::abs(l2)) <= 1e-9 * scale;
  bool swap;
  if (out.near_tie) {
    swap = (l1.real() != l2.real()) ? (l1.real() < l2.real()) : (l1.imag() < l2.imag());
  } else {
    swap = std::abs(l1) < std::abs(l2);
  }
  if (swap) std::swap(l1, l2);

  auto vec_for = [&A](cxd lambda) {
    // Rows of (A - lambda I): (a11-l, a12) and (a21, a22-l). An eigenvector
    // is orthogonal in the bilinear (not Hermitian) sense to either row;
    // take the complement of the larger row.
    Eigen::Vector2cd r0(A(0, 0) - lambda, A(0, 1));
    Eigen::Vector2cd r1(A(1, 0), A(1, 1) - lambda);
    Eigen::Vector2cd row = (r0.norm() >= r1.norm()) ? r0 : r1;
    Eigen::Vector2cd v(-row(1), row(0));
    double n = v.norm();
    if (n < 1e-300) {
      // A is (numerically) lambda * I: every direction is an eigenvector.
      v << 1.0, 0.0;
      n = 1.0;
    }
    return Eigen::Vector2cd(v / n);
  };

  out.lambda1 = l1;
  out.lambda2 = l2;
  out.v1 = vec_for(l1);
  out.v2 = vec_for(l2);
  return out;
}

// 2x2 inverse with a conditioning guard; `what` names the offending object.
inline Eigen::Matrix2cd inverse2x2_checked(const Eigen::Matrix2cd& A, const std::string& what,
                                           double max_cond = 1e10) {
  if (condition_number(A) > max_cond) {
    throw NumericalError("near-singular 2x2 inversion: " + what);
  }
  const cxd det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  Eigen::Matrix2cd inv;
  inv << A(1, 1), -A(0, 1), -A(1, 0), A(0, 0);
  return inv / det;
}

}  // namespace hexdof
