#include <gtest/gtest.h>

#include <cmath>

#include "srscale/dense.hpp"
#include "srscale/errors.hpp"
#include "test_support.hpp"

namespace srscale {
namespace {

using testing::rel_err;

DenseMatrix rotation(double t) { return {{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}}; }

// Orthogonal n x n matrix from a product of Householder reflectors.
DenseMatrix random_orthogonal(std::mt19937_64& rng, Index n) {
  DenseMatrix q = DenseMatrix::identity(n);
  for (Index k = 0; k < n; ++k) {
    const DenseMatrix v = random_matrix(rng, n, 1);
    const double vv = dot(v.column(0), v.column(0));
    q = q * (DenseMatrix::identity(n) - (2.0 / vv) * (v * v.transpose()));
  }
  return q;
}

TEST(DenseMatrix, RejectsEmptyShapesAndNonFiniteEntries) {
  EXPECT_THROW(DenseMatrix(0, 3), DimensionError);
  EXPECT_THROW(DenseMatrix(2, 0), DimensionError);
  EXPECT_THROW(DenseMatrix(1, 2, {1.0, NAN}), Error);
  EXPECT_THROW(DenseMatrix(1, 2, {1.0, INFINITY}), Error);
  EXPECT_THROW(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
}

TEST(DenseMatrix, BlocksAndTranspose) {
  const DenseMatrix m{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(m.transpose(), (DenseMatrix{{1, 4}, {2, 5}, {3, 6}}));
  EXPECT_EQ(m.column_block(1, 2), (DenseMatrix{{2, 3}, {5, 6}}));
  EXPECT_EQ(m.row_block(1, 1), (DenseMatrix{{4, 5, 6}}));
  EXPECT_EQ(m.submatrix(0, 1, 2, 1), (DenseMatrix{{2}, {5}}));
  EXPECT_EQ(m * DenseMatrix::identity(3), m);
}

TEST(FrobeniusNorm, SmallCases) {
  EXPECT_DOUBLE_EQ(frobenius_norm(DenseMatrix::identity(2)), std::sqrt(2.0));
  EXPECT_EQ(frobenius_norm(DenseMatrix(3, 4)), 0.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(DenseMatrix{{1, 2}, {3, 4}}), std::sqrt(30.0));
}

TEST(Norm2, NoOverflowOrUnderflow) {
  const std::vector<double> big{3e200, 4e200};
  const std::vector<double> tiny{3e-200, 4e-200};
  EXPECT_NEAR(norm2(big) / 5e200, 1.0, 1e-15);
  EXPECT_NEAR(norm2(tiny) / 5e-200, 1.0, 1e-15);
}

TEST(SingularValues, DiagonalOrthogonalPermutation) {
  const auto d = singular_values(DenseMatrix{{3, 0}, {0, 1}});
  EXPECT_DOUBLE_EQ(d.values[0], 3.0);
  EXPECT_DOUBLE_EQ(d.values[1], 1.0);

  auto rng = testing::stream(11);
  for (double v : singular_values(random_orthogonal(rng, 7)).values) EXPECT_NEAR(v, 1.0, 1e-12);
  for (double v : singular_values(rotation(0.3)).values) EXPECT_NEAR(v, 1.0, 1e-14);

  const auto p = singular_values(DenseMatrix{{0, 1}, {1, 0}});
  EXPECT_DOUBLE_EQ(p.values[0], 1.0);
  EXPECT_DOUBLE_EQ(p.values[1], 1.0);
}

TEST(SingularValues, KnownSpectrumRelativeAccuracy) {
  auto rng = testing::stream(12);
  const std::vector<double> sigma{1e3, 50.0, 7.0, 1.0, 0.25, 1.0};
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix u = random_orthogonal(rng, 6);
    const DenseMatrix v = random_orthogonal(rng, 6);
    const auto got = singular_values(u * DenseMatrix::diagonal(sigma) * v.transpose()).values;
    std::vector<double> want = sigma;
    std::sort(want.rbegin(), want.rend());
    for (Index k = 0; k < 6; ++k) EXPECT_LT(rel_err(got[k], want[k]), 1e-12);
  }
}

TEST(SingularValues, RectangularAndSortedNonIncreasing) {
  auto rng = testing::stream(13);
  const DenseMatrix m = random_matrix(rng, 9, 4);
  const auto s = singular_values(m).values;
  ASSERT_EQ(s.size(), 4u);
  for (Index k = 1; k < s.size(); ++k) EXPECT_GE(s[k - 1], s[k]);
  EXPECT_EQ(singular_values(m.transpose()).values.size(), 4u);
}

TEST(SingularValues, FrobeniusIdentity) {
  auto rng = testing::stream(14);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix m = random_matrix(rng, 6, 4, 3.0);
    double sum = 0.0;
    for (double v : singular_values(m).values) sum += v * v;
    const double f = frobenius_norm(m);
    EXPECT_LT(rel_err(sum, f * f), 1e-12);
  }
}

TEST(SpectralCondition, Basics) {
  EXPECT_DOUBLE_EQ(spectral_condition(DenseMatrix::identity(4)), 1.0);
  EXPECT_DOUBLE_EQ(spectral_condition(DenseMatrix{{10, 0}, {0, 1}}), 10.0);
  EXPECT_THROW(spectral_condition(DenseMatrix{{1, 2}, {2, 4}}), SingularityError);
  EXPECT_THROW(spectral_condition(DenseMatrix(3, 3)), SingularityError);
}

TEST(InfinityCondition, TriangularAndGeneral) {
  const DenseMatrix u{{1, 2}, {0, 1}};
  // ||U||_inf = 3, U^-1 = [[1, -2], [0, 1]].
  EXPECT_DOUBLE_EQ(infinity_condition(u), 9.0);
  EXPECT_DOUBLE_EQ(infinity_condition(u.transpose()), 9.0);
  const DenseMatrix g{{4, 3}, {6, 3}};
  // inverse = [[-0.5, 0.5], [1, -2/3]]
  EXPECT_NEAR(infinity_condition(g), 9.0 * (1.0 + 2.0 / 3.0), 1e-13);
  EXPECT_THROW(infinity_condition(DenseMatrix{{1, 1}, {1, 1}}), SingularityError);
}

TEST(Inverse, RoundTrip) {
  auto rng = testing::stream(15);
  const DenseMatrix m = random_matrix(rng, 5, 5);
  EXPECT_LT(testing::max_abs_diff(m * inverse(m), DenseMatrix::identity(5)), 1e-12);
  DenseMatrix u = m;
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < i; ++j) u(i, j) = 0.0;
    u(i, i) += 3.0;
  }
  const DenseMatrix ui = inverse(u);
  EXPECT_TRUE(is_upper_triangular(ui));
  EXPECT_LT(testing::max_abs_diff(u * ui, DenseMatrix::identity(5)), 1e-12);
}

TEST(GramDet2Col, ClosedFormCases) {
  const DenseMatrix ortho{{1, 0}, {0, 1}, {0, 0}};
  EXPECT_DOUBLE_EQ(gram_det_2col(ortho), 1.0);
  const DenseMatrix same{{1, 1}, {2, 2}, {3, 3}};
  EXPECT_NEAR(gram_det_2col(same), 0.0, 1e-12);
  EXPECT_THROW(gram_det_2col(DenseMatrix(3, 3)), DimensionError);
}

TEST(GramDet2Col, MatchesCofactorAndSingularValues) {
  auto rng = testing::stream(16);
  for (int trial = 0; trial < 200; ++trial) {
    const DenseMatrix b = random_matrix(rng, 6, 2);
    const DenseMatrix g = b.transpose() * b;
    const double cofactor = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    EXPECT_LT(rel_err(gram_det_2col(b), cofactor), 1e-12);
    const auto s = singular_values(b).values;
    EXPECT_LT(rel_err(gram_det_2col(b), s[0] * s[0] * s[1] * s[1]), 1e-10);
  }
}

TEST(PairGeometry, AvoidsCancellation) {
  // Nearly parallel columns: the literal formula loses every digit.
  const double eps = 1e-9;
  const DenseMatrix b{{1.0, 1.0}, {1.0, 1.0 + eps}, {0.0, 0.0}};
  const ColumnPairGeometry g = pair_geometry(b.column(0), b.column(1));
  // det(B^T B) = eps^2 exactly for this B.
  EXPECT_LT(rel_err(g.gram_det(), eps * eps), 1e-6);
  EXPECT_LT(rel_err(g.det_fourth_root(), std::sqrt(eps)), 1e-6);
}

TEST(PairGeometry, AgreesWithLiteralFormulaWhenWellConditioned) {
  auto rng = testing::stream(17);
  for (int trial = 0; trial < 100; ++trial) {
    const DenseMatrix b = random_matrix(rng, 8, 2);
    const ColumnPairGeometry g = pair_geometry(b.column(0), b.column(1));
    EXPECT_LT(rel_err(g.gram_det(), gram_det_2col(b)), 1e-12);
    EXPECT_LT(rel_err(g.det_fourth_root(), std::pow(gram_det_2col(b), 0.25)), 1e-12);
  }
}

TEST(Cond2ClosedForm, Cases) {
  EXPECT_DOUBLE_EQ(cond2_closed_form(DenseMatrix::identity(2)), 1.0);
  EXPECT_DOUBLE_EQ(cond2_closed_form(DenseMatrix{{2, 0}, {0, 1}}), 2.0);
  EXPECT_THROW(cond2_closed_form(DenseMatrix{{1, 2}, {2, 4}}), SingularityError);
  EXPECT_THROW(cond2_closed_form(DenseMatrix::identity(3)), DimensionError);
}

TEST(Cond2ClosedForm, MatchesSvdOnRandomMatrices) {
  auto rng = testing::stream(18);
  for (int trial = 0; trial < 1000; ++trial) {
    const DenseMatrix b = random_matrix(rng, 2, 2, 2.0);
    EXPECT_LT(rel_err(cond2_closed_form(b), spectral_condition(b)), 1e-10);
  }
}

TEST(QlTriangularFactor, Cases) {
  const DenseMatrix e{{1, 0}, {0, 1}, {0, 0}, {0, 0}};
  EXPECT_LT(testing::max_abs_diff(ql_triangular_factor(e), DenseMatrix::identity(2)), 1e-15);
  const DenseMatrix scaled{{3, 0}, {0, 2}, {0, 0}, {0, 0}};
  EXPECT_LT(testing::max_abs_diff(ql_triangular_factor(scaled), DenseMatrix{{3, 0}, {0, 2}}), 1e-15);
  EXPECT_THROW(ql_triangular_factor(DenseMatrix{{1, 2}, {2, 4}}), RankError);
}

TEST(QlTriangularFactor, ReproducesGramMatrix) {
  auto rng = testing::stream(19);
  for (int trial = 0; trial < 200; ++trial) {
    const DenseMatrix l = random_matrix(rng, 6, 2);
    const DenseMatrix lhat = ql_triangular_factor(l);
    EXPECT_EQ(lhat(0, 1), 0.0);
    EXPECT_GT(lhat(0, 0), 0.0);
    EXPECT_GT(lhat(1, 1), 0.0);
    const DenseMatrix want = l.transpose() * l;
    const DenseMatrix got = lhat.transpose() * lhat;
    EXPECT_LT(frobenius_norm(got - want) / frobenius_norm(want), 1e-12);
  }
}

}  // namespace
}  // namespace srscale
