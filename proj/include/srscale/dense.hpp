#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace srscale {

using Index = std::size_t;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Quantities at or below kZeroTolerance * (relevant norm) count as zero.
inline constexpr double kZeroTolerance = 1e3 * kEps;

/// Dense real matrix stored row-major. Always at least 1x1 with finite
/// entries.
class DenseMatrix {
 public:
  DenseMatrix(Index rows, Index cols);
  DenseMatrix(Index rows, Index cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(Index n);
  static DenseMatrix diagonal(std::span<const double> values);
  static DenseMatrix from_columns(const std::vector<std::vector<double>>& cols);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double operator()(Index i, Index j) const noexcept { return data_[i * cols_ + j]; }
  double& operator()(Index i, Index j) noexcept { return data_[i * cols_ + j]; }

  std::span<const double> row(Index i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> entries() const noexcept { return data_; }

  std::vector<double> column(Index j) const;
  void set_column(Index j, std::span<const double> values);

  /// Columns [first, first + count).
  DenseMatrix column_block(Index first, Index count) const;
  /// Rows [first, first + count).
  DenseMatrix row_block(Index first, Index count) const;
  DenseMatrix submatrix(Index row0, Index col0, Index nrows, Index ncols) const;

  DenseMatrix transpose() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  Index rows_;
  Index cols_;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

// Vector helpers. norm2 uses scaled accumulation so it neither overflows nor
// underflows for representable inputs.
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

double frobenius_norm(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);

/// Singular values, sorted non-increasing.
struct SingularSpectrum {
  std::vector<double> values;

  double max() const { return values.front(); }
  double min() const { return values.back(); }
};

/// One-sided Jacobi SVD (values only). Throws ConvergenceError when the
/// sweeps do not converge.
SingularSpectrum singular_values(const DenseMatrix& m);

/// sigma_max / sigma_min. Throws SingularityError when sigma_min is at or
/// below kZeroTolerance * sigma_max.
double spectral_condition(const DenseMatrix& m);

/// ||M||_inf * ||M^{-1}||_inf for square M. Upper-triangular inputs are
/// inverted by back substitution, general ones by LU with partial pivoting.
double infinity_condition(const DenseMatrix& m);
double infinity_norm(const DenseMatrix& m);

bool is_upper_triangular(const DenseMatrix& m, double tol = 0.0);

/// Inverse of a square matrix; throws SingularityError on a zero pivot.
DenseMatrix inverse(const DenseMatrix& m);

/// ||B1||^2 ||B2||^2 - (B1^T B2)^2 for an m x 2 matrix, evaluated literally.
double gram_det_2col(const DenseMatrix& b);

/// Geometry of a column pair (x, y) taken relative to the reference column y:
/// ref_norm = ||y||, inner = x^T y and residual = ||x - (x^T y / y^T y) y||.
/// The Gram determinant of (x, y) is (ref_norm * residual)^2; computing it
/// this way avoids the cancellation of the literal two-term formula.
struct ColumnPairGeometry {
  double ref_norm = 0.0;
  double inner = 0.0;
  double residual = 0.0;

  double gram_det() const { return (ref_norm * residual) * (ref_norm * residual); }
  /// det^(1/4), evaluated without forming det.
  double det_fourth_root() const;
};

ColumnPairGeometry pair_geometry(std::span<const double> x, std::span<const double> y);

/// Closed-form spectral condition number of a nonsingular 2x2 matrix.
double cond2_closed_form(const DenseMatrix& b);

/// Lower-triangular 2x2 factor with positive diagonal of the QL
/// factorization L = V [0; Lhat]; Lhat^T Lhat = L^T L.
DenseMatrix ql_triangular_factor(const DenseMatrix& l);

}  // namespace srscale
