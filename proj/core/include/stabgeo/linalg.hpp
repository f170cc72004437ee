#pragma once

#include <vector>

#include "stabgeo/common.hpp"

namespace stabgeo {

/// Small dense row-major matrix; everything here is for d <= ~10.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static Matrix diag(const Vec& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows; ++i) m(i, i) = d[i];
    return m;
  }
};

Vec matvec(const Matrix& m, const Vec& v);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
bool is_symmetric(const Matrix& m, double tol = 1e-12);

/// Lower Cholesky factor; throws InvalidArgument if not SPD.
Matrix cholesky(const Matrix& m);
Matrix inverse_spd(const Matrix& m);

/// LU with partial pivoting.
double det(const Matrix& m);
Vec solve(Matrix m, Vec b);
Matrix inverse(const Matrix& m);

/// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> sym_eigenvalues(Matrix m);

/// Rank of a symmetric PSD matrix: eigenvalues above tol * max.
int rank_psd(const Matrix& m, double rel_tol = 1e-10);

}  // namespace stabgeo
