#pragma once

#include <optional>
#include <vector>

#include "srscale/dense.hpp"

namespace srscale {

/// Perfect shuffle on 2m indices: as a matrix its columns are
/// (e_1, e_3, ..., e_{2m-1}, e_2, e_4, ..., e_{2m}). Stored as an index map.
class PerfectShuffle {
 public:
  explicit PerfectShuffle(Index half_size);

  Index half_size() const noexcept { return half_size_; }
  Index size() const noexcept { return 2 * half_size_; }

  /// Position that column k of the shuffle matrix points at: P e_k = e_{image(k)}.
  Index image(Index k) const { return map_[k]; }
  Index preimage(Index i) const { return inverse_map_[i]; }

  DenseMatrix to_matrix() const;

  /// P M P^T.
  DenseMatrix conjugate(const DenseMatrix& m) const;
  /// P^T M P.
  DenseMatrix inverse_conjugate(const DenseMatrix& m) const;
  /// P M (rows of M moved).
  DenseMatrix apply_rows(const DenseMatrix& m) const;
  /// P^T M.
  DenseMatrix apply_rows_inverse(const DenseMatrix& m) const;

 private:
  Index half_size_;
  std::vector<Index> map_;
  std::vector<Index> inverse_map_;
};

/// P M P^T; M must be square with dimension 2 * P.half_size().
DenseMatrix shuffle_conjugate(const DenseMatrix& m, const PerfectShuffle& p);

enum class JVariant { standard, hatted };

/// standard: [[0, I], [-I, 0]]; hatted: diag(J1, ..., J1), J1 = [[0, 1], [-1, 0]].
DenseMatrix j_matrix(Index half_size, JVariant variant = JVariant::standard);

/// x^T J y for the standard J of dimension x.size().
double j_inner(std::span<const double> x, std::span<const double> y);

/// J M for the standard J (rows swapped with a sign), without materializing J.
DenseMatrix apply_j(const DenseMatrix& m);

struct StructureCheck {
  bool ok = false;
  double residual = 0.0;
};

/// ||S^T J S - Jhat(1:2n,1:2n)||_F against tol. Default tol is
/// 1e-10 * ||S||_F.
StructureCheck is_permuted_symplectic(const DenseMatrix& s, std::optional<double> tol = {});

/// All four n x n blocks upper triangular and the (2,1) block with zero
/// diagonal. Default tol is 1e-10 * ||R||_F.
bool is_j_triangular(const DenseMatrix& r, std::optional<double> tol = {});

/// One diagonal block [[c, f], [0, 1/c]] of a block-diagonal scaling.
struct ScalerBlock {
  double c = 1.0;
  double f = 0.0;

  friend bool operator==(const ScalerBlock&, const ScalerBlock&) = default;
};

/// D = diag(D_1, ..., D_n) with unit-determinant upper-triangular 2x2 blocks.
class BlockDiagScaling {
 public:
  explicit BlockDiagScaling(std::vector<ScalerBlock> blocks);
  static BlockDiagScaling identity(Index n);

  Index block_count() const noexcept { return blocks_.size(); }
  Index dimension() const noexcept { return 2 * blocks_.size(); }
  const ScalerBlock& block(Index j) const { return blocks_.at(j); }
  const std::vector<ScalerBlock>& blocks() const noexcept { return blocks_; }

  DenseMatrix to_matrix() const;
  /// Closed-form inverse: blocks [[1/c, -f], [0, c]].
  BlockDiagScaling inverse() const;

  /// D M without materializing D.
  DenseMatrix apply_left(const DenseMatrix& m) const;
  /// M D^{-1} without materializing D^{-1}.
  DenseMatrix apply_right_inverse(const DenseMatrix& m) const;

 private:
  std::vector<ScalerBlock> blocks_;
};

DenseMatrix scaling_to_matrix(const BlockDiagScaling& d);
BlockDiagScaling scaling_inverse(const BlockDiagScaling& d);

/// 2m x 2n matrix whose column pair j is (e_j, e_{m+j}); satisfies the
/// permuted-symplectic identity exactly.
DenseMatrix canonical_symplectic_embedding(Index m, Index n);

}  // namespace srscale
