#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace netdiv {

// Row-major square matrix, just enough for desk-scale dense work.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  static Matrix identity(std::size_t n_) {
    Matrix m(n_);
    for (std::size_t i = 0; i < n_; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
  const std::size_t n = x.n;
  Matrix z(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      const double* yrow = &y.a[k * n];
      double* zrow = &z.a[i * n];
      for (std::size_t j = 0; j < n; ++j) zrow[j] += xik * yrow[j];
    }
  }
  return z;
}

namespace dense {

// Householder reduction of a symmetric matrix to tridiagonal form,
// accumulating the orthogonal transform in place (tred2).
inline void tridiagonalize(Matrix& a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.n;
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  if (n == 0) return;

  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          a(j, i) = a(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] != 0.0) {
      for (std::size_t j = 0; j < i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < i; ++k) g += a(i, k) * a(k, j);
        for (std::size_t k = 0; k < i; ++k) a(k, j) -= g * a(k, i);
      }
    }
    d[i] = a(i, i);
    a(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) a(j, i) = a(i, j) = 0.0;
  }
}

// Implicit-shift QL on a symmetric tridiagonal matrix (tqli). d holds the
// diagonal in, eigenvalues out; e the subdiagonal in e[1..n-1]. When z is
// given its columns are rotated along, so passing the identity yields the
// tridiagonal eigenvectors and passing the tred2 output the full ones.
inline void tridiag_ql(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw std::runtime_error("tridiag_ql: too many iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          e[i + 1] = r = std::hypot(f, g);
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (std::size_t k = 0; k < z->n; ++k) {
              f = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
              (*z)(k, i) = c * (*z)(k, i) - s * f;
            }
          }
        }
        if (r == 0.0 && m - l > 1) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace dense

struct SymEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns match values
};

// Full eigendecomposition of a dense symmetric matrix.
inline SymEigen eigen_sym(Matrix a) {
  const std::size_t n = a.n;
  std::vector<double> d, e;
  dense::tridiagonalize(a, d, e);
  dense::tridiag_ql(d, e, &a);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  SymEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = a(i, order[j]);
  }
  return out;
}

// Eigenvalues and eigenvectors of a symmetric tridiagonal matrix given by
// its diagonal and subdiagonal (beta[i] couples i and i+1).
inline SymEigen eigen_tridiag(std::vector<double> diag, const std::vector<double>& sub) {
  const std::size_t n = diag.size();
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) e[i] = sub[i - 1];
  Matrix z = Matrix::identity(n);
  dense::tridiag_ql(diag, e, &z);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
  SymEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = z(i, order[j]);
  }
  return out;
}

// exp(s * A) by scaled squaring of the truncated series.
inline Matrix matrix_exponential(const Matrix& a, double s) {
  const std::size_t n = a.n;
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::fabs(s * a(i, j));
    norm = std::max(norm, row);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  const double scale = s / std::ldexp(1.0, squarings);

  Matrix b(n);
  for (std::size_t i = 0; i < n * n; ++i) b.a[i] = a.a[i] * scale;

  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * b;
    const double inv = 1.0 / static_cast<double>(k);
    double max_entry = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) {
      term.a[i] *= inv;
      result.a[i] += term.a[i];
      max_entry = std::max(max_entry, std::fabs(term.a[i]));
    }
    if (max_entry < 1e-17) break;
  }
  for (int q = 0; q < squarings; ++q) result = result * result;
  return result;
}

// Solves (I - s*A) X = I by Gaussian elimination with partial pivoting.
inline Matrix neumann_kernel(const Matrix& a, double s) {
  const std::size_t n = a.n;
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? 1.0 : 0.0) - s * a(i, j);
  }
  Matrix x = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::fabs(m(i, col)) > std::fabs(m(pivot, col))) pivot = i;
    }
    if (std::fabs(m(pivot, col)) < 1e-300) throw std::runtime_error("neumann_kernel: singular system");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(col, j), m(pivot, j));
        std::swap(x(col, j), x(pivot, j));
      }
    }
    const double inv = 1.0 / m(col, col);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const double f = m(i, col) * inv;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
      for (std::size_t j = 0; j < n; ++j) x(i, j) -= f * x(col, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double inv = 1.0 / m(i, i);
    for (std::size_t j = 0; j < n; ++j) x(i, j) *= inv;
  }
  return x;
}

}  // namespace netdiv
