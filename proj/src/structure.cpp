#include "srscale/structure.hpp"

#include <cmath>

#include "srscale/errors.hpp"

namespace srscale {

PerfectShuffle::PerfectShuffle(Index half_size)
    : half_size_(half_size), map_(2 * half_size), inverse_map_(2 * half_size) {
  if (half_size == 0) throw DimensionError("perfect shuffle needs half size >= 1");
  for (Index k = 0; k < half_size; ++k) {
    map_[k] = 2 * k;
    map_[half_size + k] = 2 * k + 1;
  }
  for (Index k = 0; k < map_.size(); ++k) inverse_map_[map_[k]] = k;
}

DenseMatrix PerfectShuffle::to_matrix() const {
  DenseMatrix p(size(), size());
  for (Index k = 0; k < size(); ++k) p(map_[k], k) = 1.0;
  return p;
}

DenseMatrix PerfectShuffle::conjugate(const DenseMatrix& m) const {
  if (m.rows() != size() || m.cols() != size()) {
    throw DimensionError("shuffle conjugation: dimension mismatch");
  }
  DenseMatrix out(size(), size());
  for (Index a = 0; a < size(); ++a) {
    for (Index b = 0; b < size(); ++b) out(map_[a], map_[b]) = m(a, b);
  }
  return out;
}

DenseMatrix PerfectShuffle::inverse_conjugate(const DenseMatrix& m) const {
  if (m.rows() != size() || m.cols() != size()) {
    throw DimensionError("shuffle conjugation: dimension mismatch");
  }
  DenseMatrix out(size(), size());
  for (Index a = 0; a < size(); ++a) {
    for (Index b = 0; b < size(); ++b) out(a, b) = m(map_[a], map_[b]);
  }
  return out;
}

DenseMatrix PerfectShuffle::apply_rows(const DenseMatrix& m) const {
  if (m.rows() != size()) throw DimensionError("shuffle: row count mismatch");
  DenseMatrix out(m.rows(), m.cols());
  for (Index a = 0; a < size(); ++a) {
    for (Index j = 0; j < m.cols(); ++j) out(map_[a], j) = m(a, j);
  }
  return out;
}

DenseMatrix PerfectShuffle::apply_rows_inverse(const DenseMatrix& m) const {
  if (m.rows() != size()) throw DimensionError("shuffle: row count mismatch");
  DenseMatrix out(m.rows(), m.cols());
  for (Index a = 0; a < size(); ++a) {
    for (Index j = 0; j < m.cols(); ++j) out(a, j) = m(map_[a], j);
  }
  return out;
}

DenseMatrix shuffle_conjugate(const DenseMatrix& m, const PerfectShuffle& p) {
  return p.conjugate(m);
}

DenseMatrix j_matrix(Index half_size, JVariant variant) {
  if (half_size == 0) throw DimensionError("J needs half size >= 1");
  DenseMatrix j(2 * half_size, 2 * half_size);
  for (Index a = 0; a < half_size; ++a) {
    if (variant == JVariant::standard) {
      j(a, half_size + a) = 1.0;
      j(half_size + a, a) = -1.0;
    } else {
      j(2 * a, 2 * a + 1) = 1.0;
      j(2 * a + 1, 2 * a) = -1.0;
    }
  }
  return j;
}

double j_inner(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() % 2 != 0) {
    throw DimensionError("j_inner: vectors must share an even length");
  }
  const Index m = x.size() / 2;
  double sum = 0.0;
  for (Index a = 0; a < m; ++a) sum += x[a] * y[m + a] - x[m + a] * y[a];
  return sum;
}

DenseMatrix apply_j(const DenseMatrix& m) {
  if (m.rows() % 2 != 0) throw DimensionError("apply_j: odd row count");
  const Index half = m.rows() / 2;
  DenseMatrix out(m.rows(), m.cols());
  for (Index a = 0; a < half; ++a) {
    for (Index j = 0; j < m.cols(); ++j) {
      out(a, j) = m(half + a, j);
      out(half + a, j) = -m(a, j);
    }
  }
  return out;
}

StructureCheck is_permuted_symplectic(const DenseMatrix& s, std::optional<double> tol) {
  if (s.rows() % 2 != 0 || s.cols() % 2 != 0) {
    throw DimensionError("permuted symplectic check needs even dimensions");
  }
  if (s.rows() < s.cols()) throw DimensionError("permuted symplectic check needs rows >= cols");
  const DenseMatrix gram = s.transpose() * apply_j(s);
  const DenseMatrix target = j_matrix(s.cols() / 2, JVariant::hatted);
  StructureCheck check;
  check.residual = frobenius_norm(gram - target);
  check.ok = check.residual <= tol.value_or(1e-10 * frobenius_norm(s));
  return check;
}

bool is_j_triangular(const DenseMatrix& r, std::optional<double> tol) {
  if (!r.square() || r.rows() % 2 != 0) return false;
  const double t = tol.value_or(1e-10 * frobenius_norm(r));
  // J-triangular iff the shuffle conjugate is upper triangular: every entry
  // whose shuffled row position exceeds its shuffled column position is zero.
  const PerfectShuffle p(r.rows() / 2);
  for (Index a = 0; a < r.rows(); ++a) {
    for (Index b = 0; b < r.cols(); ++b) {
      if (p.image(a) > p.image(b) && std::abs(r(a, b)) > t) return false;
    }
  }
  return true;
}

BlockDiagScaling::BlockDiagScaling(std::vector<ScalerBlock> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw InvalidScalingError("scaling needs at least one block");
  for (const auto& b : blocks_) {
    if (b.c == 0.0 || !std::isfinite(b.c) || !std::isfinite(b.f)) {
      throw InvalidScalingError("scaling block needs finite f and finite nonzero c");
    }
  }
}

BlockDiagScaling BlockDiagScaling::identity(Index n) {
  return BlockDiagScaling(std::vector<ScalerBlock>(n));
}

DenseMatrix BlockDiagScaling::to_matrix() const {
  DenseMatrix d(dimension(), dimension());
  for (Index j = 0; j < blocks_.size(); ++j) {
    d(2 * j, 2 * j) = blocks_[j].c;
    d(2 * j, 2 * j + 1) = blocks_[j].f;
    d(2 * j + 1, 2 * j + 1) = 1.0 / blocks_[j].c;
  }
  return d;
}

BlockDiagScaling BlockDiagScaling::inverse() const {
  std::vector<ScalerBlock> inv;
  inv.reserve(blocks_.size());
  for (const auto& b : blocks_) inv.push_back({1.0 / b.c, -b.f});
  return BlockDiagScaling(std::move(inv));
}

DenseMatrix BlockDiagScaling::apply_left(const DenseMatrix& m) const {
  if (m.rows() != dimension()) throw DimensionError("scaling applied to wrong row count");
  DenseMatrix out(m.rows(), m.cols());
  for (Index j = 0; j < blocks_.size(); ++j) {
    const auto [c, f] = blocks_[j];
    for (Index k = 0; k < m.cols(); ++k) {
      out(2 * j, k) = c * m(2 * j, k) + f * m(2 * j + 1, k);
      out(2 * j + 1, k) = m(2 * j + 1, k) / c;
    }
  }
  return out;
}

DenseMatrix BlockDiagScaling::apply_right_inverse(const DenseMatrix& m) const {
  if (m.cols() != dimension()) throw DimensionError("scaling applied to wrong column count");
  DenseMatrix out(m.rows(), m.cols());
  for (Index j = 0; j < blocks_.size(); ++j) {
    const auto [c, f] = blocks_[j];
    for (Index i = 0; i < m.rows(); ++i) {
      out(i, 2 * j) = m(i, 2 * j) / c;
      out(i, 2 * j + 1) = c * m(i, 2 * j + 1) - f * m(i, 2 * j);
    }
  }
  return out;
}

DenseMatrix scaling_to_matrix(const BlockDiagScaling& d) { return d.to_matrix(); }

BlockDiagScaling scaling_inverse(const BlockDiagScaling& d) { return d.inverse(); }

DenseMatrix canonical_symplectic_embedding(Index m, Index n) {
  if (n == 0 || m < n) throw DimensionError("embedding needs 1 <= n <= m");
  DenseMatrix s(2 * m, 2 * n);
  for (Index j = 0; j < n; ++j) {
    s(j, 2 * j) = 1.0;
    s(m + j, 2 * j + 1) = 1.0;
  }
  return s;
}

}  // namespace srscale
