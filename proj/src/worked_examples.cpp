#include "srscale/worked_examples.hpp"

#include <cmath>

#include "srscale/errors.hpp"
#include "srscale/factorize.hpp"
#include "srscale/structure.hpp"

namespace srscale {

std::optional<ExampleId> parse_example_id(const std::string& text) {
  if (text == "6.1" || text == "wild-rows") return ExampleId::wild_rows;
  if (text == "6.2" || text == "mild-rows") return ExampleId::mild_rows;
  if (text == "6.3" || text == "near-orthogonal") return ExampleId::near_orthogonal;
  if (text == "6.4" || text == "moderate") return ExampleId::moderate;
  return std::nullopt;
}

std::string to_string(ExampleId id) {
  switch (id) {
    case ExampleId::wild_rows: return "6.1";
    case ExampleId::mild_rows: return "6.2";
    case ExampleId::near_orthogonal: return "6.3";
    case ExampleId::moderate: return "6.4";
  }
  return "?";
}

std::vector<double> default_parameter_sweep() { return {0.5, 0.1, 0.05, 0.01}; }

void check_parameter(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("parameter a must lie in (0, 1)");
}

DenseMatrix wild_rows_r(double a) {
  check_parameter(a);
  const double big = 1.0 / (a * a);
  DenseMatrix r(6, 6);
  r(0, 0) = r(1, 1) = a;
  r(2, 2) = r(3, 3) = a * a;
  r(4, 4) = r(5, 5) = 1.0 / a;
  for (Index i = 0; i < 4; ++i) {
    for (Index j = (i < 2 ? 2 : 4); j < 6; ++j) r(i, j) = big;
  }
  return r;
}

DenseMatrix mild_rows_r(double a) {
  check_parameter(a);
  const double inv = 1.0 / a;
  DenseMatrix r(6, 6);
  r(0, 0) = r(1, 1) = inv;
  r(2, 2) = r(3, 3) = a;
  r(4, 4) = r(5, 5) = inv;
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 2; j < 6; ++j) r(i, j) = inv;
  }
  for (Index i = 2; i < 4; ++i) {
    for (Index j = 4; j < 6; ++j) r(i, j) = a;
  }
  return r;
}

DenseMatrix parametric_r(ExampleId id, double a) {
  switch (id) {
    case ExampleId::wild_rows: return wild_rows_r(a);
    case ExampleId::mild_rows: return mild_rows_r(a);
    default: break;
  }
  throw DomainError("example " + to_string(id) + " has no parameter");
}

// Printed values, five significant digits.

DenseMatrix near_orthogonal_g() {
  return {
      {-8.0000e-08, 5.9999e-10, -9.9993e-06, -2.0816e-07, -1.0025e-05, -1.0002e-01},
      {2.0002e+03, -9.8412e+03, 2.1081e-01, 8.6657e-03, 1.6001e+02, 1.0001e+03},
      {1.9999e+00, -9.8397e+00, -1.1008e+01, -2.2904e-01, 1.4898e-01, -1.0097e-01},
      {-1.0000e-03, 2.0000e-05, 9.9001e-06, 1.0208e-05, 1.0008e+00, -1.0108e-03},
      {9.9990e-02, 7.9902e-03, -9.9999e-01, -2.0898e-02, 6.9991e-03, -1.0001e-01},
      {-1.9785e-02, 9.7344e-02, 1.0003e+03, 2.0903e+01, 9.9879e-01, 1.0003e+02},
  };
}

DenseMatrix near_orthogonal_s() {
  return {
      {-8.0000e-10, 7.0000e-10, 9.9993e-06, 8.0000e-10, 9.9999e-06, 1.0000e+00},
      {2.0002e+01, -1.0001e+03, -2.0900e-02, -2.0901e-09, 8.8412e-07, 9.8014e-03},
      {1.9999e-02, -9.9997e-01, 1.1008e+01, 1.0010e-03, 9.8545e-10, -1.0029e-04},
      {-1.0000e-05, 1.0000e-05, -1.0000e-05, 1.0000e-05, -1.0000e+00, 1.0000e-05},
      {9.9990e-04, -9.0000e-07, 1.0000e+00, 1.0000e-07, -8.9980e-10, -1.0010e-05},
      {-1.9785e-04, 9.8927e-03, -1.0003e+03, -1.0992e-04, 8.9912e-07, 1.0002e-02},
  };
}

DenseMatrix printed_r() {
  return {
      {1.0e+02, 8.0, 1.0e-02, -7.86e-05, 8.0, 1.0201e-05},
      {0.0, 10.0, 1.011e-05, -9.8e-06, 1.0e-05, -1.0},
      {0.0, 0.0, -1.0, -2.0898e-02, -1.0001e-03, -1.0001e-01},
      {0.0, 0.0, 0.0, 9.9988e-01, 9.0e-06, 9.9999e-05},
      {0.0, 0.0, 0.0, 0.0, -1.0009, 1.0008e-03},
      {0.0, 0.0, 0.0, 0.0, 0.0, -1.0002e-01},
  };
}

DenseMatrix moderate_g() {
  return {
      {1.0871e+02, 1.4643e+01, -5.4969e-01, -1.1806e-02, 9.2375e+00, -6.5123e-01},
      {-5.2820e+01, -8.8338e+00, 5.8813e-01, 1.3947e+00, -2.8501e+00, 4.1022e-01},
      {-1.8322e+01, 1.5381e+00, -5.1659e-02, -9.0207e-01, -1.8338e+00, -2.9221e-01},
      {-5.9464e+01, 1.1893e+00, -5.9404e-03, 4.0911e-05, -4.2155e+00, -5.9519e-01},
      {3.7614e+01, 3.0091e+00, -3.9718e-01, -8.4084e-03, 3.7575e+00, 4.9976e-04},
      {6.1056e+01, 4.3350e+00, -1.7096e+00, 1.2893e-01, 6.0988e+00, -5.6762e-02},
  };
}

DenseMatrix moderate_s() {
  return {
      {1.0871, 0.5946, 0.5606, 0.0, -0.5411, -1.08e-19},
      {-0.5282, -0.4608, -0.5934, 1.3825, -1.3738, 1.0868},
      {-0.1832, 0.3004, 0.0498, -0.9011, 0.3677, -0.1288},
      {-0.5946, 0.5946, 0.0, 0.0, -0.5411, 0.0},
      {0.3761, 1.02e-20, 0.4009, -6.78e-21, -0.7482, -0.4133},
      {0.6106, -0.0550, 1.7157, 0.1649, -1.2150, -0.6106},
  };
}

std::vector<RowExampleEntry> row_example_table(ExampleId id, const std::vector<double>& params,
                                               SignRule rule) {
  std::vector<RowExampleEntry> table;
  for (double a : params) table.push_back({a, row_scaling_report(parametric_r(id, a), rule)});
  return table;
}

RefactorDiagnostic refactor_diagnostic(const DenseMatrix& g) {
  RefactorDiagnostic d;
  try {
    const SrFactors f = symplectic_qr(g);
    d.ok = true;
    d.col_perm = f.col_perm;
    d.reconstruction_residual = frobenius_norm(f.permuted(g) - f.s * f.r) / frobenius_norm(g);
    d.structure_residual = is_permuted_symplectic(f.s).residual;
    d.kappa2_s = try_spectral_condition(f.s);
  } catch (const Error& e) {
    d.error = e.what();
  }
  return d;
}

ColumnExample column_example(ExampleId id, const std::vector<double>& params, SignRule rule) {
  if (id != ExampleId::near_orthogonal && id != ExampleId::moderate) {
    throw DomainError("example " + to_string(id) + " is a row-side example");
  }
  ColumnExample ex;
  ex.id = id;
  const DenseMatrix s = id == ExampleId::near_orthogonal ? near_orthogonal_s() : moderate_s();
  const DenseMatrix g = id == ExampleId::near_orthogonal ? near_orthogonal_g() : moderate_g();
  ex.report = col_scaling_report(s, rule);
  ex.printed_structure_residual = is_permuted_symplectic(s).residual;
  ex.refactor = refactor_diagnostic(g);

  if (id == ExampleId::near_orthogonal) {
    for (ExampleId partner : {ExampleId::wild_rows, ExampleId::mild_rows}) {
      for (double a : params) {
        const DenseMatrix r = parametric_r(partner, a);
        const BlockDiagScaling dr = equal_row_norm_scaling(r, {}, rule).scaling;
        const DenseMatrix s_dr = dr.apply_right_inverse(s);
        ex.cross.push_back({"S*inv(D_r)", partner, a, try_spectral_condition(s_dr),
                           try_infinity_condition(s_dr)});
        const DenseMatrix dc_r = ex.report.scaling.apply_left(r);
        ex.cross.push_back({"D_c*R", partner, a, try_spectral_condition(dc_r),
                           try_infinity_condition(dc_r)});
      }
    }
  }
  return ex;
}

}  // namespace srscale
