#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "srscale/dense.hpp"
#include "srscale/factorize.hpp"
#include "srscale/structure.hpp"

namespace srscale {

// Two scaling problems share one block structure. On the row side the
// scaler multiplies R from the left, block j acting on the block column
// L_j = (L_j1, L_j2) of R^T; on the column side S is multiplied from the
// right by D^{-1}, block j acting on the column pair S_j = (s_j, s_{n+j}).
// In both cases the per-block magnitude is det(B^T B)^{1/4} of the 2-column
// block B.

/// Locally optimal scaler for one block and the minimal per-row (or
/// per-column) norm it attains.
struct LocalBlockResult {
  ScalerBlock block;
  double magnitude = 0.0;
};

/// Choice of the +/- branch of the equal-norm scaler's off-diagonal entry.
enum class SignRule { minus, plus, min_abs };

std::string_view to_string(SignRule rule);
std::optional<SignRule> parse_sign_rule(std::string_view text);

/// Minimizes ||D_j L_j^T||_F; input is the 2n x 2 block column L_j of R^T.
/// Throws RankError for a rank-deficient block.
LocalBlockResult local_optimal_row_block(const DenseMatrix& lj);

/// Minimizes ||S_j D_j^{-1}||_F; input is the column pair (s_j, s_{n+j}).
LocalBlockResult local_optimal_col_block(const DenseMatrix& sj);

struct BlockConditions {
  double kappa2 = 0.0;
  double kappa_f = 0.0;
};

/// Closed-form kappa_2 and kappa_F of the locally optimal row scaler.
BlockConditions block_scaler_condition(const LocalBlockResult& result, const DenseMatrix& lj);

/// Single-block version of the equal-norm scalers below: both rows of
/// D_j L_j^T (or both columns of S_j D_j^{-1}) get 2-norm `target`.
ScalerBlock equal_norm_row_block(const DenseMatrix& lj, double target,
                                 SignRule rule = SignRule::min_abs);
ScalerBlock equal_norm_col_block(const DenseMatrix& sj, double target,
                                 SignRule rule = SignRule::min_abs);

/// Block column j of R^T, i.e. rows 2j and 2j+1 of R transposed.
DenseMatrix row_block_transposed(const DenseMatrix& r, Index j);
/// Columns 2j and 2j+1 of S.
DenseMatrix column_pair(const DenseMatrix& s, Index j);

struct EqualNormScaling {
  BlockDiagScaling scaling;
  /// Common row (or column) norm the scaling produces.
  double target = 0.0;
  /// Per-block local minima (beta_j or delta_j).
  std::vector<double> magnitudes;
};

/// Scaling under which every row of D R has 2-norm `target`
/// (default: the largest beta_j). R must be upper triangular with
/// nonsingular 2x2 diagonal blocks. Throws InfeasibleTargetError when target
/// is below max beta_j.
EqualNormScaling equal_row_norm_scaling(const DenseMatrix& r, std::optional<double> target = {},
                                        SignRule rule = SignRule::min_abs);

/// Scaling under which every column of S D^{-1} has 2-norm `target`
/// (default: the largest delta_j).
EqualNormScaling equal_col_norm_scaling(const DenseMatrix& s, std::optional<double> target = {},
                                        SignRule rule = SignRule::min_abs);

/// sqrt(2n) * top * sqrt(top^2 + sqrt(top^4 - bottom^4)) / bottom^2; the
/// row side passes (beta, gamma), the column side (delta, mu).
double row_scaling_bound(double beta, double gamma, Index n);
double col_scaling_bound(double delta, double mu, Index n);

/// Classical diagonal row equilibration: 1 / ||e_k^T G||_2 per row.
std::vector<double> van_der_sluis_row_equilibration(const DenseMatrix& g);

enum class ScalingSide { row_of_r, column_of_s };

std::string_view to_string(ScalingSide side);

struct ScalingReport {
  ScalingSide side = ScalingSide::row_of_r;
  SignRule sign_rule = SignRule::min_abs;
  Index block_count = 0;

  /// Spectral condition numbers; empty when the matrix is numerically
  /// singular in double precision.
  std::optional<double> kappa2_before;
  std::optional<double> kappa2_after;
  /// Infinity-norm condition numbers; present only for square factors.
  std::optional<double> kappa_inf_before;
  std::optional<double> kappa_inf_after;

  std::vector<double> per_block_magnitudes;
  double max_magnitude = 0.0;  // beta or delta
  double min_magnitude = 0.0;  // gamma or mu
  /// Near-optimality factor with n = number of 2x2 blocks.
  double bound = 0.0;
  /// Same formula evaluated with n = matrix order (twice the block count).
  double bound_at_matrix_order = 0.0;

  double target_norm = 0.0;
  /// Smallest and largest row (column) 2-norm actually measured after
  /// scaling.
  double achieved_norm_min = 0.0;
  double achieved_norm_max = 0.0;

  BlockDiagScaling scaling = BlockDiagScaling::identity(1);
  DenseMatrix scaled{1, 1};
};

/// Row side: scales R from the left.
ScalingReport row_scaling_report(const DenseMatrix& r, SignRule rule = SignRule::min_abs,
                                 std::optional<double> target = {});
/// Column side: scales S from the right by the inverse scaler.
ScalingReport col_scaling_report(const DenseMatrix& s, SignRule rule = SignRule::min_abs,
                                 std::optional<double> target = {});
ScalingReport scaling_report(const SrFactors& factors, ScalingSide side,
                             SignRule rule = SignRule::min_abs, std::optional<double> target = {});

/// kappa_2, or empty when the matrix is numerically singular. Upper-triangular
/// matrices beyond the SVD's resolution use ||M||_2 ||M^-1||_2 instead.
std::optional<double> try_spectral_condition(const DenseMatrix& m);
std::optional<double> try_infinity_condition(const DenseMatrix& m);

}  // namespace srscale
