#include "srscale/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srscale/errors.hpp"

namespace srscale {

std::string_view to_string(SignRule rule) {
  switch (rule) {
    case SignRule::minus: return "minus";
    case SignRule::plus: return "plus";
    case SignRule::min_abs: return "min-abs";
  }
  return "min-abs";
}

std::optional<SignRule> parse_sign_rule(std::string_view text) {
  if (text == "minus") return SignRule::minus;
  if (text == "plus") return SignRule::plus;
  if (text == "min-abs" || text == "min_abs") return SignRule::min_abs;
  return std::nullopt;
}

std::string_view to_string(ScalingSide side) {
  return side == ScalingSide::row_of_r ? "row" : "col";
}

namespace {

void require_pair_matrix(const DenseMatrix& b) {
  if (b.cols() != 2) throw DimensionError("block must have exactly two columns");
}

void require_full_rank(const ColumnPairGeometry& g, double other_norm) {
  if (g.ref_norm == 0.0 || g.residual <= kZeroTolerance * other_norm) {
    throw RankError("two-column block is rank deficient");
  }
}

// Row side: the reference column is L_j2, the projected one L_j1.
ColumnPairGeometry row_geometry(const DenseMatrix& lj) {
  require_pair_matrix(lj);
  const auto l1 = lj.column(0);
  const auto l2 = lj.column(1);
  const ColumnPairGeometry g = pair_geometry(l1, l2);
  require_full_rank(g, norm2(l1));
  return g;
}

// Column side: the reference column is s_j, the projected one s_{n+j}.
ColumnPairGeometry col_geometry(const DenseMatrix& sj) {
  require_pair_matrix(sj);
  const auto first = sj.column(0);
  const auto second = sj.column(1);
  const ColumnPairGeometry g = pair_geometry(second, first);
  require_full_rank(g, norm2(second));
  return g;
}

// sqrt(target^4 - magnitude^4), with tiny negative values clamped.
double equal_norm_discriminant(double target, double magnitude) {
  const double t2 = target * target;
  const double m2 = magnitude * magnitude;
  const double value = (t2 - m2) * (t2 + m2);
  if (value >= 0.0) return std::sqrt(value);
  if (-value <= kZeroTolerance * t2 * t2) return 0.0;
  throw InfeasibleTargetError("target norm is below a block's minimal norm");
}

// Numerator (base +/- disc) of the off-diagonal scaler entry.
double choose_branch(double base, double disc, SignRule rule) {
  switch (rule) {
    case SignRule::plus: return base + disc;
    case SignRule::minus: return base - disc;
    case SignRule::min_abs: break;
  }
  const double plus = base + disc;
  const double minus = base - disc;
  return std::abs(minus) < std::abs(plus) ? minus : plus;
}

double resolve_target(std::optional<double> requested, double max_magnitude) {
  if (!requested) return max_magnitude;
  if (!std::isfinite(*requested) || *requested <= 0.0) {
    throw InfeasibleTargetError("target norm must be positive and finite");
  }
  if (*requested < max_magnitude * (1.0 - kZeroTolerance)) {
    throw InfeasibleTargetError("target norm " + std::to_string(*requested) +
                                " is below the largest block minimum " + std::to_string(max_magnitude));
  }
  return std::max(*requested, max_magnitude);
}

double near_optimality_factor(double top, double bottom, Index n) {
  if (!(bottom > 0.0) || !(top >= bottom) || n == 0) {
    throw DomainError("bound needs top >= bottom > 0 and n >= 1");
  }
  const double disc = std::sqrt((top - bottom) * (top + bottom) * (top * top + bottom * bottom));
  return std::sqrt(2.0 * static_cast<double>(n)) * top * std::sqrt(top * top + disc) /
         (bottom * bottom);
}

ScalerBlock row_block_at(const ColumnPairGeometry& g, double beta, SignRule rule) {
  const double disc = equal_norm_discriminant(beta, g.det_fourth_root());
  return {g.ref_norm / beta, choose_branch(-g.inner, disc, rule) / (beta * g.ref_norm)};
}

ScalerBlock col_block_at(const ColumnPairGeometry& g, double delta, SignRule rule) {
  const double disc = equal_norm_discriminant(delta, g.det_fourth_root());
  return {g.ref_norm / delta, choose_branch(g.inner, disc, rule) / (g.ref_norm * delta)};
}

std::pair<double, double> norm_range(const std::vector<double>& norms) {
  const auto [lo, hi] = std::minmax_element(norms.begin(), norms.end());
  return {*lo, *hi};
}

}  // namespace

LocalBlockResult local_optimal_row_block(const DenseMatrix& lj) {
  const ColumnPairGeometry g = row_geometry(lj);
  const double beta = g.det_fourth_root();
  return {{g.ref_norm / beta, -g.inner / (g.ref_norm * beta)}, beta};
}

LocalBlockResult local_optimal_col_block(const DenseMatrix& sj) {
  const ColumnPairGeometry g = col_geometry(sj);
  const double delta = g.det_fourth_root();
  return {{g.ref_norm / delta, g.inner / (g.ref_norm * delta)}, delta};
}

BlockConditions block_scaler_condition(const LocalBlockResult& result, const DenseMatrix& lj) {
  const ColumnPairGeometry g = row_geometry(lj);
  const double magnitude = g.det_fourth_root();
  if (std::abs(magnitude - result.magnitude) > 1e-8 * magnitude) {
    throw DomainError("block result was not produced from this block");
  }
  const double n1 = norm2(lj.column(0));
  const double n2 = g.ref_norm;
  const double fro2 = n1 * n1 + n2 * n2;
  const double sqrt_det = g.ref_norm * g.residual;
  // ||L_j||_F^4 - 4 det(L_j^T L_j) = (||L1||^2 - ||L2||^2)^2 + 4 (L1^T L2)^2.
  const double disc = std::hypot((n1 - n2) * (n1 + n2), 2.0 * g.inner);
  return {(fro2 + disc) / (2.0 * sqrt_det), fro2 / sqrt_det};
}

ScalerBlock equal_norm_row_block(const DenseMatrix& lj, double target, SignRule rule) {
  return row_block_at(row_geometry(lj), target, rule);
}

ScalerBlock equal_norm_col_block(const DenseMatrix& sj, double target, SignRule rule) {
  return col_block_at(col_geometry(sj), target, rule);
}

DenseMatrix row_block_transposed(const DenseMatrix& r, Index j) {
  return r.row_block(2 * j, 2).transpose();
}

DenseMatrix column_pair(const DenseMatrix& s, Index j) { return s.column_block(2 * j, 2); }

EqualNormScaling equal_row_norm_scaling(const DenseMatrix& r, std::optional<double> target,
                                        SignRule rule) {
  if (!r.square() || r.rows() % 2 != 0) {
    throw DimensionError("row scaling needs a square matrix of even order");
  }
  if (!is_upper_triangular(r, 1e-12 * frobenius_norm(r))) {
    throw StructureError("row scaling needs an upper triangular R");
  }
  const Index n = r.rows() / 2;
  std::vector<ColumnPairGeometry> geo;
  std::vector<double> magnitudes;
  for (Index j = 0; j < n; ++j) {
    if (r(2 * j, 2 * j) * r(2 * j + 1, 2 * j + 1) == 0.0) {
      throw RankError("diagonal block " + std::to_string(j) + " of R is singular");
    }
    geo.push_back(row_geometry(row_block_transposed(r, j)));
    magnitudes.push_back(geo.back().det_fourth_root());
  }
  const double beta = resolve_target(target, *std::max_element(magnitudes.begin(), magnitudes.end()));

  std::vector<ScalerBlock> blocks;
  for (const auto& g : geo) blocks.push_back(row_block_at(g, beta, rule));
  return {BlockDiagScaling(std::move(blocks)), beta, std::move(magnitudes)};
}

EqualNormScaling equal_col_norm_scaling(const DenseMatrix& s, std::optional<double> target,
                                        SignRule rule) {
  if (s.cols() % 2 != 0) throw DimensionError("column scaling needs an even column count");
  const Index n = s.cols() / 2;
  std::vector<ColumnPairGeometry> geo;
  std::vector<double> magnitudes;
  for (Index j = 0; j < n; ++j) {
    geo.push_back(col_geometry(column_pair(s, j)));
    magnitudes.push_back(geo.back().det_fourth_root());
  }
  const double delta = resolve_target(target, *std::max_element(magnitudes.begin(), magnitudes.end()));

  std::vector<ScalerBlock> blocks;
  for (const auto& g : geo) blocks.push_back(col_block_at(g, delta, rule));
  return {BlockDiagScaling(std::move(blocks)), delta, std::move(magnitudes)};
}

double row_scaling_bound(double beta, double gamma, Index n) {
  return near_optimality_factor(beta, gamma, n);
}

double col_scaling_bound(double delta, double mu, Index n) {
  return near_optimality_factor(delta, mu, n);
}

std::vector<double> van_der_sluis_row_equilibration(const DenseMatrix& g) {
  std::vector<double> scale(g.rows());
  for (Index i = 0; i < g.rows(); ++i) {
    const double nrm = norm2(g.row(i));
    if (nrm == 0.0) throw DomainError("row " + std::to_string(i) + " is zero");
    scale[i] = 1.0 / nrm;
  }
  return scale;
}

std::optional<double> try_spectral_condition(const DenseMatrix& m) {
  try {
    return spectral_condition(m);
  } catch (const SingularityError&) {
  }
  // Past the SVD's resolution a triangular matrix still has an accurate
  // inverse by back substitution, so ||M||_2 ||M^-1||_2 remains meaningful.
  if (!m.square() || !is_upper_triangular(m)) return std::nullopt;
  try {
    return singular_values(m).max() * singular_values(inverse(m)).max();
  } catch (const SingularityError&) {
    return std::nullopt;
  }
}

std::optional<double> try_infinity_condition(const DenseMatrix& m) {
  if (!m.square()) return std::nullopt;
  try {
    return infinity_condition(m);
  } catch (const SingularityError&) {
    return std::nullopt;
  }
}

namespace {

ScalingReport finish_report(ScalingSide side, SignRule rule, const DenseMatrix& original,
                            EqualNormScaling eq, DenseMatrix scaled, std::vector<double> norms) {
  ScalingReport rep;
  rep.side = side;
  rep.sign_rule = rule;
  rep.block_count = eq.scaling.block_count();
  rep.kappa2_before = try_spectral_condition(original);
  rep.kappa2_after = try_spectral_condition(scaled);
  rep.kappa_inf_before = try_infinity_condition(original);
  rep.kappa_inf_after = try_infinity_condition(scaled);
  const auto [lo, hi] = norm_range(eq.magnitudes);
  rep.max_magnitude = hi;
  rep.min_magnitude = lo;
  rep.bound = near_optimality_factor(hi, lo, rep.block_count);
  rep.bound_at_matrix_order = near_optimality_factor(hi, lo, 2 * rep.block_count);
  rep.per_block_magnitudes = std::move(eq.magnitudes);
  rep.target_norm = eq.target;
  std::tie(rep.achieved_norm_min, rep.achieved_norm_max) = norm_range(norms);
  rep.scaling = std::move(eq.scaling);
  rep.scaled = std::move(scaled);
  return rep;
}

}  // namespace

ScalingReport row_scaling_report(const DenseMatrix& r, SignRule rule, std::optional<double> target) {
  EqualNormScaling eq = equal_row_norm_scaling(r, target, rule);
  DenseMatrix scaled = eq.scaling.apply_left(r);
  std::vector<double> norms;
  for (Index i = 0; i < scaled.rows(); ++i) norms.push_back(norm2(scaled.row(i)));
  return finish_report(ScalingSide::row_of_r, rule, r, std::move(eq), std::move(scaled),
                       std::move(norms));
}

ScalingReport col_scaling_report(const DenseMatrix& s, SignRule rule, std::optional<double> target) {
  EqualNormScaling eq = equal_col_norm_scaling(s, target, rule);
  DenseMatrix scaled = eq.scaling.apply_right_inverse(s);
  std::vector<double> norms;
  for (Index j = 0; j < scaled.cols(); ++j) norms.push_back(norm2(scaled.column(j)));
  return finish_report(ScalingSide::column_of_s, rule, s, std::move(eq), std::move(scaled),
                       std::move(norms));
}

ScalingReport scaling_report(const SrFactors& factors, ScalingSide side, SignRule rule,
                             std::optional<double> target) {
  return side == ScalingSide::row_of_r ? row_scaling_report(factors.r, rule, target)
                                       : col_scaling_report(factors.s, rule, target);
}

}  // namespace srscale
