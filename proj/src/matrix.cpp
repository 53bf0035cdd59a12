// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include <nspec/matrix.hpp>

#include <nspec/errors.hpp>

#include <cmath>
#include <stdexcept>

namespace nspec {

Mat Mat::identity(long n) {
  Mat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat Mat::transposed() const {
  Mat m(cols, rows);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
  Mat r(a.rows, b.cols);
  for (long i = 0; i < a.rows; ++i)
    for (long k = 0; k < a.cols; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (long j = 0; j < b.cols; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("matrix shape mismatch");
  Mat r = a;
  for (size_t t = 0; t < r.a.size(); ++t) r.a[t] -= b.a[t];
  return r;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("matrix shape mismatch");
  Mat r = a;
  for (size_t t = 0; t < r.a.size(); ++t) r.a[t] += b.a[t];
  return r;
}

Mat operator*(double s, Mat a) {
  for (double& v : a.a) v *= s;
  return a;
}

std::vector<double> mat_vec(const Mat& m, const std::vector<double>& x) {
  if (static_cast<long>(x.size()) != m.cols)
    throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<double> y(m.rows, 0.0);
  for (long i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (long j = 0; j < m.cols; ++j) s += m.at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> vec_mat(const std::vector<double>& x, const Mat& m) {
  if (static_cast<long>(x.size()) != m.rows)
    throw std::invalid_argument("vector-matrix shape mismatch");
  std::vector<double> y(m.cols, 0.0);
  for (long i = 0; i < m.rows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (long j = 0; j < m.cols; ++j) y[j] += xi * m.at(i, j);
  }
  return y;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
  return s;
}

Lu lu_factor(Mat m) {
  if (m.rows != m.cols) throw std::invalid_argument("LU needs a square matrix");
  const long n = m.rows;
  std::vector<long> perm(n);
  for (long i = 0; i < n; ++i) perm[i] = i;
  for (long col = 0; col < n; ++col) {
    long piv = col;
    double best = std::abs(m.at(col, col));
    for (long row = col + 1; row < n; ++row) {
      const double v = std::abs(m.at(row, col));
      if (v > best) {
        best = v;
        piv = row;
      }
    }
    if (best < 1e-300)
      throw SingularMatrixError("singular linear system (column " +
                                std::to_string(col) + ")");
    if (piv != col) {
      for (long j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      std::swap(perm[piv], perm[col]);
    }
    const double inv = 1.0 / m.at(col, col);
    for (long row = col + 1; row < n; ++row) {
      const double f = m.at(row, col) * inv;
      m.at(row, col) = f;
      if (f == 0.0) continue;
      for (long j = col + 1; j < n; ++j) m.at(row, j) -= f * m.at(col, j);
    }
  }
  return Lu{std::move(m), std::move(perm)};
}

std::vector<double> lu_solve(const Lu& f, std::vector<double> b) {
  const long n = f.lu.rows;
  if (static_cast<long>(b.size()) != n)
    throw std::invalid_argument("solve shape mismatch");
  std::vector<double> x(n);
  for (long i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < i; ++j) x[i] -= f.lu.at(i, j) * x[j];
  for (long i = n - 1; i >= 0; --i) {
    for (long j = i + 1; j < n; ++j) x[i] -= f.lu.at(i, j) * x[j];
    x[i] /= f.lu.at(i, i);
  }
  return x;
}

Mat lu_inverse(const Lu& f) {
  const long n = f.lu.rows;
  Mat inv(n, n);
  std::vector<double> e(n, 0.0);
  for (long col = 0; col < n; ++col) {
    e.assign(n, 0.0);
    e[col] = 1.0;
    const std::vector<double> x = lu_solve(f, e);
    for (long row = 0; row < n; ++row) inv.at(row, col) = x[row];
  }
  return inv;
}

RatMat operator*(const RatMat& a, const RatMat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
  RatMat r(a.rows, b.cols);
  for (long i = 0; i < a.rows; ++i)
    for (long k = 0; k < a.cols; ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (long j = 0; j < b.cols; ++j) {
        if (b.at(k, j) == 0) continue;
        r.at(i, j) += aik * b.at(k, j);
      }
    }
  return r;
}

std::vector<Rat> mat_vec(const RatMat& m, const std::vector<Rat>& x) {
  if (static_cast<long>(x.size()) != m.cols)
    throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<Rat> y(m.rows, Rat(0));
  for (long i = 0; i < m.rows; ++i) {
    Rat s = 0;
    for (long j = 0; j < m.cols; ++j) {
      if (m.at(i, j) == 0 || x[j] == 0) continue;
      s += m.at(i, j) * x[j];
    }
    y[i] = s;
  }
  return y;
}

bool operator==(const RatMat& a, const RatMat& b) {
  return a.rows == b.rows && a.cols == b.cols && a.a == b.a;
}

long rational_rank(RatMat m) {
  long rank = 0;
  long pivot_row = 0;
  for (long col = 0; col < m.cols && pivot_row < m.rows; ++col) {
    long piv = pivot_row;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != pivot_row)
      for (long j = col; j < m.cols; ++j)
        std::swap(m.at(piv, j), m.at(pivot_row, j));
    const Rat lead = m.at(pivot_row, col);
    for (long row = pivot_row + 1; row < m.rows; ++row) {
      if (m.at(row, col) == 0) continue;
      const Rat f = m.at(row, col) / lead;
      for (long j = col; j < m.cols; ++j)
        m.at(row, j) -= f * m.at(pivot_row, j);
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

}  // namespace nspec
