#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srscale/dense.hpp"
#include "srscale/scaling.hpp"

namespace srscale {

// Four fixed test problems with published condition-number tables. "6.1" and
// "6.2" are parametric upper-triangular R factors built exactly for any
// a in (0, 1); "6.3" and "6.4" are permuted symplectic factors known only to
// the five significant digits they were printed with.

enum class ExampleId { wild_rows, mild_rows, near_orthogonal, moderate };

std::optional<ExampleId> parse_example_id(const std::string& text);
std::string to_string(ExampleId id);

/// a values used when the caller gives none.
std::vector<double> default_parameter_sweep();
/// Throws DomainError unless 0 < a < 1.
void check_parameter(double a);

/// diag(a, a, a^2, a^2, 1/a, 1/a) with a^-2 couplings above the diagonal.
DenseMatrix wild_rows_r(double a);
/// diag(1/a, 1/a, a, a, 1/a, 1/a) with 1/a and a couplings.
DenseMatrix mild_rows_r(double a);
DenseMatrix parametric_r(ExampleId id, double a);

DenseMatrix near_orthogonal_g();
DenseMatrix near_orthogonal_s();
/// Triangular factor shared by both printed S examples.
DenseMatrix printed_r();
DenseMatrix moderate_g();
DenseMatrix moderate_s();

struct RowExampleEntry {
  double a = 0.0;
  ScalingReport report;
};

std::vector<RowExampleEntry> row_example_table(ExampleId id, const std::vector<double>& params,
                                               SignRule rule = SignRule::min_abs);

/// kappa of one factor scaled with the other factor's equal-norm scaler.
struct CrossScaling {
  std::string label;
  ExampleId partner = ExampleId::wild_rows;
  double a = 0.0;
  std::optional<double> kappa2;
  std::optional<double> kappa_inf;
};

/// Refactorization of the printed G, reported but never asserted: the
/// printed S was produced with a different pivot order and precision.
struct RefactorDiagnostic {
  bool ok = false;
  std::string error;
  std::vector<Index> col_perm;
  double reconstruction_residual = 0.0;  // ||G P - S R||_F / ||G||_F
  double structure_residual = 0.0;       // ||S^T J S - Jhat||_F
  std::optional<double> kappa2_s;
};

struct ColumnExample {
  ExampleId id = ExampleId::near_orthogonal;
  ScalingReport report;
  double printed_structure_residual = 0.0;
  std::vector<CrossScaling> cross;
  RefactorDiagnostic refactor;
};

/// Column-side table. For near_orthogonal the cross-scaling sweep pairs its
/// S and Ď_c with every parametric R in `params`.
ColumnExample column_example(ExampleId id, const std::vector<double>& params,
                             SignRule rule = SignRule::min_abs);

RefactorDiagnostic refactor_diagnostic(const DenseMatrix& g);

}  // namespace srscale
