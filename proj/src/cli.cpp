#include "srscale/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "srscale/ensemble.hpp"
#include "srscale/errors.hpp"
#include "srscale/factorize.hpp"
#include "srscale/matrix_io.hpp"
#include "srscale/report.hpp"
#include "srscale/scaling.hpp"
#include "srscale/structure.hpp"
#include "srscale/worked_examples.hpp"

namespace srscale {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

std::string sci(const std::optional<double>& v) { return v ? sci(*v) : "singular"; }

// "-" sends the document to stdout in place of the text summary.
bool emit_json(const std::string& path, const Json& doc, std::ostream& out) {
  if (path.empty()) return false;
  if (path == "-") {
    out << dump(doc);
    return true;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << dump(doc);
  return false;
}

void print_report(const ScalingReport& r, std::ostream& out) {
  const bool row = r.side == ScalingSide::row_of_r;
  out << "side            " << to_string(r.side) << "  (sign rule " << to_string(r.sign_rule) << ")\n";
  out << "kappa2  before  " << sci(r.kappa2_before) << "  after " << sci(r.kappa2_after) << '\n';
  if (r.kappa_inf_before) {
    out << "kappaI  before  " << sci(r.kappa_inf_before) << "  after " << sci(r.kappa_inf_after) << '\n';
  }
  out << (row ? "beta            " : "delta           ") << sci(r.max_magnitude) << '\n';
  out << (row ? "gamma           " : "mu              ") << sci(r.min_magnitude) << '\n';
  out << "bound           " << sci(r.bound) << "  (at matrix order " << sci(r.bound_at_matrix_order)
      << ")\n";
  out << "achieved norms  " << sci(r.achieved_norm_min) << " .. " << sci(r.achieved_norm_max) << '\n';
  for (Index j = 0; j < r.block_count; ++j) {
    const ScalerBlock b = r.scaling.block(j);
    out << "  block " << j << "  c " << sci(b.c) << "  f " << sci(b.f) << "  magnitude "
        << sci(r.per_block_magnitudes[j]) << '\n';
  }
}

SignRule sign_from(const std::string& text) {
  const auto rule = parse_sign_rule(text);
  if (!rule) throw DomainError("unknown sign rule '" + text + "'");
  return *rule;
}

struct FactorArgs {
  std::string input, out_s, out_r, out_perm, json;
};

struct ScaleArgs {
  std::string input, side = "row", sign = "min-abs", json;
  std::optional<double> target;
  bool from_g = false;
};

struct ExampleArgs {
  std::string id, sign = "min-abs", json;
  std::optional<double> a;
};

struct EnsembleArgs {
  EnsembleConfig config;
  std::string json;
};

int cmd_factor(const FactorArgs& args, std::ostream& out) {
  const DenseMatrix g = read_matrix_file(args.input);
  const SrFactors f = symplectic_qr(g);
  if (!args.out_s.empty()) write_matrix_file(args.out_s, f.s);
  if (!args.out_r.empty()) write_matrix_file(args.out_r, f.r);
  if (!args.out_perm.empty()) {
    std::ofstream p(args.out_perm);
    if (!p) throw Error("cannot write '" + args.out_perm + "'");
    for (Index k : f.col_perm) p << k << '\n';
  }
  const Json doc = factor_document(f, g, args.input);
  if (emit_json(args.json, doc, out)) return kExitOk;
  out << "reconstruction  ||G P - S R||_F / ||G||_F = " << sci(doc["reconstruction_residual"].get<double>())
      << '\n';
  out << "structure       ||S^T J S - Jhat||_F      = " << sci(doc["structure_residual"].get<double>())
      << '\n';
  out << "column order   ";
  for (Index k : f.col_perm) out << ' ' << k;
  out << '\n';
  return kExitOk;
}

int cmd_scale(const ScaleArgs& args, std::ostream& out) {
  const SignRule rule = sign_from(args.sign);
  const ScalingSide side = args.side == "row" ? ScalingSide::row_of_r : ScalingSide::column_of_s;
  const DenseMatrix input = read_matrix_file(args.input);
  ScalingReport rep;
  if (args.from_g) {
    rep = scaling_report(symplectic_qr(input), side, rule, args.target);
  } else if (side == ScalingSide::row_of_r) {
    rep = row_scaling_report(input, rule, args.target);
  } else {
    rep = col_scaling_report(input, rule, args.target);
  }
  if (emit_json(args.json, scale_document(rep, {args.input, rule, false}), out)) return kExitOk;
  print_report(rep, out);
  return kExitOk;
}

int cmd_example(const ExampleArgs& args, std::ostream& out) {
  const SignRule rule = sign_from(args.sign);
  const auto id = parse_example_id(args.id);
  if (!id) throw DomainError("unknown example '" + args.id + "' (expected 6.1, 6.2, 6.3 or 6.4)");
  std::vector<double> params = default_parameter_sweep();
  if (args.a) {
    check_parameter(*args.a);
    params = {*args.a};
  }

  if (*id == ExampleId::wild_rows || *id == ExampleId::mild_rows) {
    const auto table = row_example_table(*id, params, rule);
    if (emit_json(args.json, row_example_document(*id, table, rule), out)) return kExitOk;
    out << "example " << to_string(*id) << "  (row side, sign rule " << to_string(rule) << ")\n";
    out << "a                 kappa2(R)   kappa2(DR)  kappaI(R)   kappaI(DR)  beta        gamma       "
           "bound       bound(2n)\n";
    for (const auto& e : table) {
      const auto& r = e.report;
      out << sci(e.a) << "  " << sci(r.kappa2_before) << "  " << sci(r.kappa2_after) << "  "
          << sci(r.kappa_inf_before) << "  " << sci(r.kappa_inf_after) << "  " << sci(r.max_magnitude)
          << "  " << sci(r.min_magnitude) << "  " << sci(r.bound) << "  " << sci(r.bound_at_matrix_order)
          << '\n';
    }
    return kExitOk;
  }

  const ColumnExample ex = column_example(*id, params, rule);
  if (emit_json(args.json, column_example_document(ex, rule), out)) return kExitOk;
  out << "example " << to_string(*id) << "  (column side, printed-precision input)\n";
  out << "printed S structure residual " << sci(ex.printed_structure_residual) << '\n';
  print_report(ex.report, out);
  for (const auto& c : ex.cross) {
    out << "cross " << c.label << "  partner " << to_string(c.partner) << "  a " << sci(c.a)
        << "  kappa2 " << sci(c.kappa2) << "  kappaI " << sci(c.kappa_inf) << '\n';
  }
  if (ex.refactor.ok) {
    out << "refactorized G: reconstruction " << sci(ex.refactor.reconstruction_residual)
        << ", structure " << sci(ex.refactor.structure_residual) << ", kappa2(S) "
        << sci(ex.refactor.kappa2_s) << '\n';
  } else {
    out << "refactorized G: " << ex.refactor.error << '\n';
  }
  return kExitOk;
}

int cmd_ensemble(const EnsembleArgs& args, std::ostream& out) {
  const EnsembleSummary s = run_ensemble(args.config);
  if (emit_json(args.json, ensemble_document(s), out)) return kExitOk;
  out << "trials " << s.config.trials << "  factorized " << s.factorized << "  breakdowns "
      << s.breakdowns << "  skipped samples " << s.skipped_samples << '\n';
  out << "row ratio  max " << sci(s.row.max) << "  median " << sci(s.row.median) << "  p90 "
      << sci(s.row.p90) << "  (" << s.row.count << " samples)\n";
  out << "col ratio  max " << sci(s.col.max) << "  median " << sci(s.col.median) << "  p90 "
      << sci(s.col.p90) << "  (" << s.col.count << " samples)\n";
  out << "max ratio " << sci(s.max_ratio) << (s.violations ? "  BOUND VIOLATED" : "  (bound holds)")
      << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-diagonal scaling of SR factors"};
  app.require_subcommand(1);

  FactorArgs fa;
  auto* factor = app.add_subcommand("factor", "Symplectic QR of a matrix file");
  factor->add_option("input", fa.input, "Matrix file G")->required();
  factor->add_option("--out-s", fa.out_s, "Write S here");
  factor->add_option("--out-r", fa.out_r, "Write R here");
  factor->add_option("--out-perm", fa.out_perm, "Write the column order here");
  factor->add_option("--json", fa.json, "Write a JSON document ('-' for stdout)");

  ScaleArgs sa;
  auto* scale = app.add_subcommand("scale", "Equal-norm block scaling of a factor");
  scale->add_option("input", sa.input, "Matrix file (R for --side row, S for --side col)")->required();
  scale->add_option("--side", sa.side)->check(CLI::IsMember({"row", "col"}));
  scale->add_option("--sign", sa.sign)->check(CLI::IsMember({"minus", "plus", "min-abs"}));
  scale->add_option("--target", sa.target, "Common norm (default: largest block minimum)");
  scale->add_flag("--from-g", sa.from_g, "Input is G; factorize first");
  scale->add_option("--json", sa.json, "Write a JSON document ('-' for stdout)");

  ExampleArgs ea;
  auto* example = app.add_subcommand("example", "Reproduce a worked example table");
  example->add_option("id", ea.id, "6.1, 6.2, 6.3 or 6.4")->required();
  example->add_option("--a", ea.a, "Parameter a in (0, 1)");
  example->add_option("--sign", ea.sign)->check(CLI::IsMember({"minus", "plus", "min-abs"}));
  example->add_option("--json", ea.json, "Write a JSON document ('-' for stdout)");

  EnsembleArgs na;
  auto* ensemble = app.add_subcommand("ensemble", "Sampled check of the near-optimality bound");
  ensemble->add_option("--n-pairs", na.config.n_pairs, "Column pairs n of G");
  ensemble->add_option("--row-pairs", na.config.row_pairs, "Row pairs m of G (default n)");
  ensemble->add_option("--trials", na.config.trials, "Random matrices");
  ensemble->add_option("--samples", na.config.samples, "Random scalings per matrix and side");
  ensemble->add_option("--seed", na.config.seed);
  ensemble->add_option("--decades", na.config.decades, "Row/column scale spread of G");
  ensemble->add_option("--json", na.json, "Write a JSON document ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitArgument;
  }

  try {
    if (*factor) return cmd_factor(fa, out);
    if (*scale) return cmd_scale(sa, out);
    if (*example) return cmd_example(ea, out);
    return cmd_ensemble(na, out);
  } catch (const BreakdownError& e) {
    err << "breakdown: " << e.what() << '\n';
    return kExitBreakdown;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DimensionError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const StructureError& e) {
    err << "structure error: " << e.what() << '\n';
    return kExitInput;
  } catch (const RankError& e) {
    err << "rank error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InfeasibleTargetError& e) {
    err << "infeasible target: " << e.what() << '\n';
    return kExitArgument;
  } catch (const DomainError& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitArgument;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
}

}  // namespace srscale
