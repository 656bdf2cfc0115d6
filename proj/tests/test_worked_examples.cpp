#include <gtest/gtest.h>

#include "srscale/errors.hpp"
#include "srscale/worked_examples.hpp"
#include "test_support.hpp"

namespace srscale {
namespace {

using testing::rel_err;

// Published table values. The condition numbers in these tables agree with
// the infinity-norm condition number to all printed digits; the published
// bound uses the order of R (6) where the formula has the block count.
struct RowTable {
  double a, kappa_r, kappa_dr, beta, gamma, bound;
};

const RowTable kWild[] = {
    {0.5, 5.1810e3, 1.5089e3, 2.3796, 1.4146, 1.3638e1},
    {0.1, 1.6803e9, 1.5829e8, 10.0, 1.4142, 2.4494e2},
    {0.05, 4.1985e11, 1.9053e10, 20.0, 1.4142, 9.7978e2},
    {0.01, 1.6080e17, 1.3925e15, 100.0, 1.4142, 2.4495e4},
};

const RowTable kMild[] = {
    {0.5, 5.5000e1, 1.3521e2, 3.4641, 7.4767e-1, 1.0513e2},
    {0.1, 1.0150e3, 7.7471e4, 1.7321e1, 1.4953e-1, 6.5727e4},
    {0.05, 4.0150e3, 1.2394e6, 3.4641e1, 7.4768e-2, 1.0516e6},
    {0.01, 1.0002e5, 7.7460e8, 1.7321e2, 1.4953e-2, 6.5727e8},
};

void check_table(ExampleId id, const RowTable* rows) {
  const auto table = row_example_table(id, default_parameter_sweep());
  ASSERT_EQ(table.size(), 4u);
  for (Index k = 0; k < 4; ++k) {
    const RowTable& w = rows[k];
    const ScalingReport& r = table[k].report;
    EXPECT_EQ(table[k].a, w.a);
    EXPECT_LT(rel_err(*r.kappa_inf_before, w.kappa_r), 1e-3) << "a = " << w.a;
    EXPECT_LT(rel_err(*r.kappa_inf_after, w.kappa_dr), 1e-3) << "a = " << w.a;
    EXPECT_LT(rel_err(r.max_magnitude, w.beta), 1e-3) << "a = " << w.a;
    EXPECT_LT(rel_err(r.min_magnitude, w.gamma), 1e-3) << "a = " << w.a;
    EXPECT_LT(rel_err(r.bound_at_matrix_order, w.bound), 1e-3) << "a = " << w.a;
  }
}

TEST(WorkedExample, WildRowsTable) { check_table(ExampleId::wild_rows, kWild); }
TEST(WorkedExample, MildRowsTable) { check_table(ExampleId::mild_rows, kMild); }

TEST(WorkedExample, WildRowsSpectralConditionIsLower) {
  // Reference values from a 60-digit SVD.
  const ScalingReport r = row_scaling_report(wild_rows_r(0.1));
  EXPECT_LT(rel_err(*r.kappa2_before, 1.29640e9), 1e-4);
  const ScalingReport tiny = row_scaling_report(wild_rows_r(0.01));
  EXPECT_LT(rel_err(*tiny.kappa2_before, 1.2944478e17), 1e-6);
}

TEST(WorkedExample, MildRowsScalingWorsensCondition) {
  for (const auto& e : row_example_table(ExampleId::mild_rows, default_parameter_sweep())) {
    EXPECT_GT(*e.report.kappa2_after, *e.report.kappa2_before);
    EXPECT_GT(*e.report.kappa_inf_after, *e.report.kappa_inf_before);
  }
}

TEST(WorkedExample, ParametricPatterns) {
  const DenseMatrix w = wild_rows_r(0.5);
  EXPECT_EQ(w(0, 0), 0.5);
  EXPECT_EQ(w(2, 2), 0.25);
  EXPECT_EQ(w(4, 4), 2.0);
  EXPECT_EQ(w(0, 1), 0.0);
  EXPECT_EQ(w(2, 3), 0.0);
  EXPECT_EQ(w(1, 2), 4.0);
  EXPECT_EQ(w(3, 5), 4.0);
  EXPECT_EQ(w(4, 5), 0.0);
  const DenseMatrix m = mild_rows_r(0.5);
  EXPECT_EQ(m(0, 0), 2.0);
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_EQ(m(1, 5), 2.0);
  EXPECT_EQ(m(2, 2), 0.5);
  EXPECT_EQ(m(2, 4), 0.5);
  EXPECT_EQ(m(3, 3), 0.5);
  EXPECT_EQ(m(5, 5), 2.0);
  EXPECT_TRUE(is_upper_triangular(w));
  EXPECT_TRUE(is_upper_triangular(m));
}

TEST(WorkedExample, ParameterRange) {
  EXPECT_THROW(wild_rows_r(0.0), DomainError);
  EXPECT_THROW(wild_rows_r(1.0), DomainError);
  EXPECT_THROW(mild_rows_r(-0.2), DomainError);
  EXPECT_THROW(parametric_r(ExampleId::moderate, 0.5), DomainError);
}

TEST(WorkedExample, Ids) {
  EXPECT_EQ(parse_example_id("6.1"), ExampleId::wild_rows);
  EXPECT_EQ(parse_example_id("6.4"), ExampleId::moderate);
  EXPECT_EQ(parse_example_id("moderate"), ExampleId::moderate);
  EXPECT_FALSE(parse_example_id("6.5"));
  for (ExampleId id : {ExampleId::wild_rows, ExampleId::mild_rows, ExampleId::near_orthogonal,
                       ExampleId::moderate}) {
    EXPECT_EQ(parse_example_id(to_string(id)), id);
  }
}

TEST(WorkedExample, NearOrthogonalColumnSide) {
  const ColumnExample ex = column_example(ExampleId::near_orthogonal, {0.01});
  const ScalingReport& r = ex.report;
  EXPECT_LT(rel_err(*r.kappa_inf_before, 1.0327e6), 2e-2);
  EXPECT_LT(rel_err(*r.kappa_inf_after, 1.0623), 1e-2);
  EXPECT_NEAR(r.max_magnitude, 1.000049, 1e-4);
  EXPECT_NEAR(r.min_magnitude, 1.000024, 1e-4);
  EXPECT_LT(rel_err(r.bound_at_matrix_order, 3.4815), 1e-2);
  EXPECT_LT(rel_err(r.achieved_norm_min, r.max_magnitude), 1e-10);
  EXPECT_LT(rel_err(r.achieved_norm_max, r.max_magnitude), 1e-10);
  // Two partners, one parameter, two products each.
  ASSERT_EQ(ex.cross.size(), 4u);
  EXPECT_EQ(ex.cross[0].label, "S*inv(D_r)");
  EXPECT_LT(rel_err(*ex.cross[0].kappa_inf, 3.8465e10), 2e-1);
  EXPECT_EQ(ex.cross[1].label, "D_c*R");
  EXPECT_LT(rel_err(*ex.cross[1].kappa_inf, 5.4894e20), 2e-1);
  EXPECT_TRUE(ex.refactor.ok);
  EXPECT_LT(ex.refactor.reconstruction_residual, 1e-10);
}

TEST(WorkedExample, ModerateColumnSide) {
  const ColumnExample ex = column_example(ExampleId::moderate, {}, SignRule::plus);
  const ScalingReport& r = ex.report;
  EXPECT_NEAR(r.max_magnitude, 1.7800, 1e-3);
  EXPECT_NEAR(r.min_magnitude, 1.2168, 1e-3);
  EXPECT_LT(rel_err(r.bound_at_matrix_order, 10.1756), 1e-2);
  EXPECT_LT(rel_err(*r.kappa_inf_after, 21.9625), 1e-2);
  EXPECT_GT(*r.kappa2_after, *r.kappa2_before);
  EXPECT_TRUE(ex.cross.empty());
  EXPECT_THROW(column_example(ExampleId::wild_rows, {}), DomainError);
}

TEST(WorkedExample, PrintedTriangularFactorReproducesModerateS) {
  // The printed S of the moderate example is G R^{-1} to printing accuracy.
  const DenseMatrix s = moderate_g() * inverse(printed_r());
  EXPECT_LT(max_abs(s - moderate_s()), 1e-3);
}

}  // namespace
}  // namespace srscale
