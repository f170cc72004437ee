#include "stabgeo/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace stabgeo {

Vec matvec(const Matrix& m, const Vec& v) {
  Vec r(m.rows, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double s = 0;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      double v = a(i, k);
      for (int j = 0; j < b.cols; ++j) r(i, j) += v * b(k, j);
    }
  return r;
}

Matrix transpose(const Matrix& m) {
  Matrix r(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(j, i) = m(i, j);
  return r;
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows != m.cols) return false;
  double scale = 0;
  for (double x : m.a) scale = std::max(scale, std::fabs(x));
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      if (std::fabs(m(i, j) - m(j, i)) > tol * std::max(1.0, scale)) return false;
  return true;
}

Matrix cholesky(const Matrix& m) {
  if (m.rows != m.cols) throw InvalidArgument("cholesky: matrix not square");
  int n = m.rows;
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0) throw InvalidArgument("cholesky: matrix not positive definite");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

Matrix inverse_spd(const Matrix& m) {
  Matrix l = cholesky(m);
  int n = m.rows;
  // Solve L L^T X = I column by column.
  Matrix inv(n, n);
  Vec col(n);
  for (int c = 0; c < n; ++c) {
    std::fill(col.begin(), col.end(), 0.0);
    col[c] = 1.0;
    // forward
    for (int i = 0; i < n; ++i) {
      double s = col[i];
      for (int k = 0; k < i; ++k) s -= l(i, k) * col[k];
      col[i] = s / l(i, i);
    }
    // backward with L^T
    for (int i = n - 1; i >= 0; --i) {
      double s = col[i];
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * col[k];
      col[i] = s / l(i, i);
    }
    for (int i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  return inv;
}

namespace {

// LU with partial pivoting in place; returns pivot sign, fills perm.
double lu_decompose(Matrix& m, std::vector<int>& perm) {
  int n = m.rows;
  perm.resize(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  double sign = 1.0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(m(i, k)) > std::fabs(m(p, k))) p = i;
    if (m(p, k) == 0.0) throw NumericalError("lu: singular matrix");
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(m.a[static_cast<std::size_t>(p) * n + j], m.a[static_cast<std::size_t>(k) * n + j]);
      std::swap(perm[p], perm[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      m(i, k) /= m(k, k);
      for (int j = k + 1; j < n; ++j) m(i, j) -= m(i, k) * m(k, j);
    }
  }
  return sign;
}

}  // namespace

double det(const Matrix& m0) {
  if (m0.rows != m0.cols) throw InvalidArgument("det: matrix not square");
  Matrix m = m0;
  std::vector<int> perm;
  double sign;
  try {
    sign = lu_decompose(m, perm);
  } catch (const NumericalError&) {
    return 0.0;
  }
  double d = sign;
  for (int i = 0; i < m.rows; ++i) d *= m(i, i);
  return d;
}

Vec solve(Matrix m, Vec b) {
  if (m.rows != m.cols || static_cast<int>(b.size()) != m.rows)
    throw InvalidArgument("solve: dimension mismatch");
  int n = m.rows;
  std::vector<int> perm;
  lu_decompose(m, perm);
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < i; ++k) x[i] -= m(i, k) * x[k];
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) x[i] -= m(i, k) * x[k];
    x[i] /= m(i, i);
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  int n = m.rows;
  Matrix r(n, n);
  for (int c = 0; c < n; ++c) {
    Vec e(n, 0.0);
    e[c] = 1.0;
    Vec col = solve(m, e);
    for (int i = 0; i < n; ++i) r(i, c) = col[i];
  }
  return r;
}

std::vector<double> sym_eigenvalues(Matrix m) {
  int n = m.rows;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(m(p, q)) < 1e-300) continue;
        double theta = (m(q, q) - m(p, p)) / (2 * m(p, q));
        double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = m(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

int rank_psd(const Matrix& m, double rel_tol) {
  auto ev = sym_eigenvalues(m);
  double mx = 0;
  for (double e : ev) mx = std::max(mx, std::fabs(e));
  if (mx == 0) return 0;
  int r = 0;
  for (double e : ev)
    if (e > rel_tol * mx) ++r;
  return r;
}

}  // namespace stabgeo
