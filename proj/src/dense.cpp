#include "srscale/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "srscale/errors.hpp"

namespace srscale {

namespace {

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw StructureError("matrix entries must be finite");
  }
}

void require_nonempty(Index rows, Index cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix must be at least 1x1");
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string("shape mismatch in ") + op);
  }
}

}  // namespace

DenseMatrix::DenseMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {
  require_nonempty(rows, cols);
  data_.assign(rows * cols, 0.0);
}

DenseMatrix::DenseMatrix(Index rows, Index cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require_nonempty(rows, cols);
  if (data_.size() != rows * cols) throw DimensionError("entry count does not match shape");
  require_finite(data_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  require_nonempty(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

DenseMatrix DenseMatrix::identity(Index n) {
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> values) {
  DenseMatrix m(values.size(), values.size());
  for (Index i = 0; i < values.size(); ++i) m(i, i) = values[i];
  require_finite(m.entries());
  return m;
}

DenseMatrix DenseMatrix::from_columns(const std::vector<std::vector<double>>& cols) {
  if (cols.empty()) throw DimensionError("no columns");
  DenseMatrix m(cols.front().size(), cols.size());
  for (Index j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.rows()) throw DimensionError("ragged columns");
    m.set_column(j, cols[j]);
  }
  require_finite(m.entries());
  return m;
}

std::vector<double> DenseMatrix::column(Index j) const {
  std::vector<double> c(rows_);
  for (Index i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void DenseMatrix::set_column(Index j, std::span<const double> values) {
  if (values.size() != rows_) throw DimensionError("column length mismatch");
  for (Index i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

DenseMatrix DenseMatrix::column_block(Index first, Index count) const {
  return submatrix(0, first, rows_, count);
}

DenseMatrix DenseMatrix::row_block(Index first, Index count) const {
  return submatrix(first, 0, count, cols_);
}

DenseMatrix DenseMatrix::submatrix(Index row0, Index col0, Index nrows, Index ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw DimensionError("submatrix out of range");
  DenseMatrix s(nrows, ncols);
  for (Index i = 0; i < nrows; ++i) {
    for (Index j = 0; j < ncols; ++j) s(i, j) = (*this)(row0 + i, col0 + j);
  }
  return s;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (Index i = 0; i < rows_; ++i) {
    for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("inner dimensions differ in product");
  DenseMatrix c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (Index j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "sum");
  DenseMatrix c = a;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  }
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "difference");
  DenseMatrix c = a;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  }
  return c;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) c(i, j) *= s;
  }
  return c;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

double norm2(std::span<const double> x) {
  // Same scaling scheme as the reference BLAS dnrm2.
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : x) {
    if (v == 0.0) continue;
    const double a = std::abs(v);
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double frobenius_norm(const DenseMatrix& m) { return norm2(m.entries()); }

double max_abs(const DenseMatrix& m) {
  double r = 0.0;
  for (double v : m.entries()) r = std::max(r, std::abs(v));
  return r;
}

SingularSpectrum singular_values(const DenseMatrix& m) {
  // Work on the orientation with at least as many rows as columns; columns
  // are stored contiguously for the rotations.
  const DenseMatrix a = m.rows() >= m.cols() ? m : m.transpose();
  const Index rows = a.rows();
  const Index n = a.cols();
  std::vector<std::vector<double>> cols(n);
  for (Index j = 0; j < n; ++j) cols[j] = a.column(j);

  constexpr int kMaxSweeps = 80;
  // Rounding in the column inner products is about sqrt(rows) * eps.
  const double tol = std::sqrt(static_cast<double>(rows)) * kEps;
  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        auto& cp = cols[p];
        auto& cq = cols[q];
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (Index i = 0; i < rows; ++i) {
          alpha += cp[i] * cp[i];
          beta += cq[i] * cq[i];
          gamma += cp[i] * cq[i];
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (Index i = 0; i < rows; ++i) {
          const double x = cp[i];
          const double y = cq[i];
          cp[i] = c * x - s * y;
          cq[i] = s * x + c * y;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) throw ConvergenceError("one-sided Jacobi SVD did not converge");

  SingularSpectrum spectrum;
  spectrum.values.reserve(n);
  for (const auto& c : cols) spectrum.values.push_back(norm2(c));
  std::sort(spectrum.values.begin(), spectrum.values.end(), std::greater<>());
  return spectrum;
}

double spectral_condition(const DenseMatrix& m) {
  const SingularSpectrum s = singular_values(m);
  if (s.min() <= kZeroTolerance * s.max()) {
    throw SingularityError("smallest singular value is numerically zero");
  }
  return s.max() / s.min();
}

double infinity_norm(const DenseMatrix& m) {
  double best = 0.0;
  for (Index i = 0; i < m.rows(); ++i) {
    double sum = 0.0;
    for (double v : m.row(i)) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

bool is_upper_triangular(const DenseMatrix& m, double tol) {
  for (Index i = 1; i < m.rows(); ++i) {
    for (Index j = 0; j < std::min(i, m.cols()); ++j) {
      if (std::abs(m(i, j)) > tol) return false;
    }
  }
  return true;
}

namespace {

DenseMatrix upper_triangular_inverse(const DenseMatrix& u) {
  const Index n = u.rows();
  DenseMatrix x(n, n);
  for (Index j = 0; j < n; ++j) {
    // Solve U x_j = e_j by back substitution; x_j has zeros below row j.
    for (Index ii = j + 1; ii-- > 0;) {
      double sum = (ii == j) ? 1.0 : 0.0;
      for (Index k = ii + 1; k <= j; ++k) sum -= u(ii, k) * x(k, j);
      if (u(ii, ii) == 0.0) throw SingularityError("zero diagonal entry in triangular matrix");
      x(ii, j) = sum / u(ii, ii);
    }
  }
  return x;
}

DenseMatrix lu_inverse(const DenseMatrix& m) {
  const Index n = m.rows();
  DenseMatrix lu = m;
  std::vector<Index> piv(n);
  std::iota(piv.begin(), piv.end(), Index{0});
  const double scale = max_abs(m);
  for (Index k = 0; k < n; ++k) {
    Index p = k;
    for (Index i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    }
    if (lu(p, k) == 0.0 || std::abs(lu(p, k)) <= kEps * kEps * scale) {
      throw SingularityError("matrix is singular to working precision");
    }
    if (p != k) {
      for (Index j = 0; j < n; ++j) std::swap(lu(p, j), lu(k, j));
      std::swap(piv[p], piv[k]);
    }
    for (Index i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      const double l = lu(i, k);
      if (l == 0.0) continue;
      for (Index j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
    }
  }
  DenseMatrix inv(n, n);
  std::vector<double> y(n);
  for (Index col = 0; col < n; ++col) {
    for (Index i = 0; i < n; ++i) {
      double sum = (piv[i] == col) ? 1.0 : 0.0;
      for (Index k = 0; k < i; ++k) sum -= lu(i, k) * y[k];
      y[i] = sum;
    }
    for (Index ii = n; ii-- > 0;) {
      double sum = y[ii];
      for (Index k = ii + 1; k < n; ++k) sum -= lu(ii, k) * inv(k, col);
      inv(ii, col) = sum / lu(ii, ii);
    }
  }
  return inv;
}

}  // namespace

DenseMatrix inverse(const DenseMatrix& m) {
  if (!m.square()) throw DimensionError("inverse of a non-square matrix");
  return is_upper_triangular(m) ? upper_triangular_inverse(m) : lu_inverse(m);
}

double infinity_condition(const DenseMatrix& m) {
  return infinity_norm(m) * infinity_norm(inverse(m));
}

double gram_det_2col(const DenseMatrix& b) {
  if (b.cols() != 2) throw DimensionError("gram_det_2col expects exactly two columns");
  const auto b1 = b.column(0);
  const auto b2 = b.column(1);
  const double n1 = norm2(b1);
  const double n2 = norm2(b2);
  const double ip = dot(b1, b2);
  return (n1 * n1) * (n2 * n2) - ip * ip;
}

double ColumnPairGeometry::det_fourth_root() const {
  return std::sqrt(ref_norm) * std::sqrt(residual);
}

ColumnPairGeometry pair_geometry(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("pair_geometry: length mismatch");
  ColumnPairGeometry g;
  g.ref_norm = norm2(y);
  g.inner = dot(x, y);
  if (g.ref_norm == 0.0) {
    g.residual = norm2(x);
    return g;
  }
  // Projection residual with one refinement pass.
  std::vector<double> r(x.begin(), x.end());
  const double yy = g.ref_norm * g.ref_norm;
  for (int pass = 0; pass < 2; ++pass) {
    const double t = dot(r, y) / yy;
    for (Index i = 0; i < r.size(); ++i) r[i] -= t * y[i];
  }
  g.residual = norm2(r);
  return g;
}

double cond2_closed_form(const DenseMatrix& b) {
  if (b.rows() != 2 || b.cols() != 2) throw DimensionError("cond2_closed_form expects a 2x2 matrix");
  const double p = b(0, 0), q = b(0, 1), r = b(1, 0), s = b(1, 1);
  const double det = p * s - q * r;
  const double fro2 = p * p + q * q + r * r + s * s;
  if (std::abs(det) <= kZeroTolerance * fro2) throw SingularityError("2x2 matrix is singular");
  // ||B||_F^4 - 4 det^2 in factored form: ((p-s)^2+(q+r)^2)((p+s)^2+(q-r)^2).
  const double disc = std::hypot(p - s, q + r) * std::hypot(p + s, q - r);
  return (fro2 + disc) / (2.0 * std::abs(det));
}

DenseMatrix ql_triangular_factor(const DenseMatrix& l) {
  if (l.cols() != 2) throw DimensionError("ql_triangular_factor expects two columns");
  const auto l1 = l.column(0);
  const auto l2 = l.column(1);
  const ColumnPairGeometry g = pair_geometry(l1, l2);
  if (g.ref_norm == 0.0 || g.residual <= kZeroTolerance * norm2(l1)) {
    throw RankError("block is rank deficient");
  }
  // l22 = ||L2||, l21 = L1^T L2 / ||L2||, l11 = sqrt(det) / ||L2||.
  return DenseMatrix{{g.residual, 0.0}, {g.inner / g.ref_norm, g.ref_norm}};
}

}  // namespace srscale
