#pragma once

#include <string>

#include <json.hpp>

#include "srscale/ensemble.hpp"
#include "srscale/factorize.hpp"
#include "srscale/scaling.hpp"
#include "srscale/worked_examples.hpp"

namespace srscale {

// JSON documents written by the command-line tool. Field names are part of
// the tool's interface (see README); absent optional values are null.

using Json = nlohmann::ordered_json;

Json scaling_report_json(const ScalingReport& report);

struct Provenance {
  std::string source;  // input path or "example:<id>"
  SignRule sign_rule = SignRule::min_abs;
  bool printed_precision_input = false;
};

Json provenance_json(const Provenance& p);

/// {"provenance": ..., "report": ...}
Json scale_document(const ScalingReport& report, const Provenance& p);

Json factor_document(const SrFactors& f, const DenseMatrix& g, const std::string& source);

Json row_example_document(ExampleId id, const std::vector<RowExampleEntry>& table, SignRule rule);
Json column_example_document(const ColumnExample& ex, SignRule rule);

Json ensemble_document(const EnsembleSummary& summary);

Json matrix_json(const DenseMatrix& m);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& doc);

}  // namespace srscale
