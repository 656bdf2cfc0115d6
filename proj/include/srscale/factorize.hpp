#pragma once

#include <vector>

#include "srscale/dense.hpp"
#include "srscale/structure.hpp"

namespace srscale {

/// G * Pbar = S * R with S permuted symplectic (S^T J S = Jhat(1:2n,1:2n))
/// and R upper triangular. Column k of G * Pbar is column col_perm[k] of G.
struct SrFactors {
  DenseMatrix s;
  DenseMatrix r;
  std::vector<Index> col_perm;

  /// G * Pbar.
  DenseMatrix permuted(const DenseMatrix& g) const;
  /// Rows of S interleaved so that Q^T Jhat Q = Jhat(1:2n,1:2n).
  DenseMatrix q_factor() const;
};

/// Symplectic Gram-Schmidt with pair pivoting and one reorthogonalization
/// pass. Throws DimensionError for odd or too-wide inputs and BreakdownError
/// (carrying the 0-based pair index) when no column pair has a usable pivot.
SrFactors symplectic_qr(const DenseMatrix& g);

/// G^T J G, returned exactly skew-symmetric.
DenseMatrix skew_gram(const DenseMatrix& g);

/// A = L^T Jhat L with L upper triangular and diagonal blocks
/// diag(l, signs[j] * l), l > 0.
struct SkewCholFactors {
  DenseMatrix l;
  std::vector<int> signs;
};

/// Blockwise elimination without pivoting. Throws StructureError for
/// non-skew input and BreakdownError naming the block whose leading even
/// minor is numerically singular.
SkewCholFactors skew_cholesky(const DenseMatrix& a);

}  // namespace srscale
