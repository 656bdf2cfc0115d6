#include "srscale/report.hpp"

#include "srscale/structure.hpp"

namespace srscale {

namespace {

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json ratio_json(const RatioSummary& s) {
  return {{"count", s.count}, {"max", s.max}, {"mean", s.mean}, {"median", s.median}, {"p90", s.p90}};
}

}  // namespace

Json matrix_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

Json scaling_report_json(const ScalingReport& r) {
  Json blocks = Json::array();
  for (Index j = 0; j < r.block_count; ++j) {
    const ScalerBlock b = r.scaling.block(j);
    blocks.push_back({{"c", b.c}, {"f", b.f}, {"magnitude", r.per_block_magnitudes[j]}});
  }
  return {
      {"side", std::string(to_string(r.side))},
      {"sign_rule", std::string(to_string(r.sign_rule))},
      {"block_count", r.block_count},
      {"kappa2_before", optional_json(r.kappa2_before)},
      {"kappa2_after", optional_json(r.kappa2_after)},
      {"kappa_inf_before", optional_json(r.kappa_inf_before)},
      {"kappa_inf_after", optional_json(r.kappa_inf_after)},
      {"max_magnitude", r.max_magnitude},
      {"min_magnitude", r.min_magnitude},
      {"bound", r.bound},
      {"bound_at_matrix_order", r.bound_at_matrix_order},
      {"target_norm", r.target_norm},
      {"achieved_norm_min", r.achieved_norm_min},
      {"achieved_norm_max", r.achieved_norm_max},
      {"blocks", std::move(blocks)},
  };
}

Json provenance_json(const Provenance& p) {
  return {
      {"source", p.source},
      {"sign_rule", std::string(to_string(p.sign_rule))},
      {"printed_precision_input", p.printed_precision_input},
      {"tolerances", {{"zero", kZeroTolerance}, {"structure_relative", 1e-10}, {"triangular_relative", 1e-12}}},
  };
}

Json scale_document(const ScalingReport& report, const Provenance& p) {
  return {{"provenance", provenance_json(p)}, {"report", scaling_report_json(report)}};
}

Json factor_document(const SrFactors& f, const DenseMatrix& g, const std::string& source) {
  return {
      {"source", source},
      {"rows", g.rows()},
      {"cols", g.cols()},
      {"col_perm", f.col_perm},
      {"reconstruction_residual", frobenius_norm(f.permuted(g) - f.s * f.r) / frobenius_norm(g)},
      {"structure_residual", is_permuted_symplectic(f.s).residual},
      {"S", matrix_json(f.s)},
      {"R", matrix_json(f.r)},
  };
}

Json row_example_document(ExampleId id, const std::vector<RowExampleEntry>& table, SignRule rule) {
  Json entries = Json::array();
  for (const auto& e : table) {
    Json rep = scaling_report_json(e.report);
    rep["a"] = e.a;
    entries.push_back(std::move(rep));
  }
  Provenance p{"example:" + to_string(id), rule, false};
  return {{"example", to_string(id)}, {"provenance", provenance_json(p)}, {"table", std::move(entries)}};
}

Json column_example_document(const ColumnExample& ex, SignRule rule) {
  Json cross = Json::array();
  for (const auto& c : ex.cross) {
    cross.push_back({{"quantity", c.label},
                     {"partner", to_string(c.partner)},
                     {"a", c.a},
                     {"kappa2", optional_json(c.kappa2)},
                     {"kappa_inf", optional_json(c.kappa_inf)}});
  }
  const auto& rf = ex.refactor;
  Json refactor = {{"ok", rf.ok}};
  if (rf.ok) {
    refactor["col_perm"] = rf.col_perm;
    refactor["reconstruction_residual"] = rf.reconstruction_residual;
    refactor["structure_residual"] = rf.structure_residual;
    refactor["kappa2_s"] = optional_json(rf.kappa2_s);
  } else {
    refactor["error"] = rf.error;
  }
  Provenance p{"example:" + to_string(ex.id), rule, true};
  return {
      {"example", to_string(ex.id)},
      {"provenance", provenance_json(p)},
      {"printed_structure_residual", ex.printed_structure_residual},
      {"report", scaling_report_json(ex.report)},
      {"cross_scaling", std::move(cross)},
      {"refactorization", std::move(refactor)},
  };
}

Json ensemble_document(const EnsembleSummary& s) {
  const auto& c = s.config;
  return {
      {"config",
       {{"n_pairs", c.n_pairs},
        {"row_pairs", c.row_pairs == 0 ? c.n_pairs : c.row_pairs},
        {"trials", c.trials},
        {"samples", c.samples},
        {"seed", c.seed},
        {"decades", c.decades}}},
      {"factorized", s.factorized},
      {"breakdowns", s.breakdowns},
      {"skipped_samples", s.skipped_samples},
      {"row", ratio_json(s.row)},
      {"col", ratio_json(s.col)},
      {"max_ratio", s.max_ratio},
      {"violations", s.violations},
  };
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace srscale
