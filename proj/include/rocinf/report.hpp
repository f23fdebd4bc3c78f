#pragma once

#include <string>

#include <json.hpp>

#include "rocinf/inference.hpp"
#include "rocinf/simulation.hpp"

namespace rocinf {

using nlohmann::json;

/// Finite doubles as numbers, infinities as the strings "+inf" / "-inf".
json number(double v);

json to_json(const GridConfig& grid);
json to_json(const KernelConfig& kernel);
json to_json(const BootstrapConfig& boot);
json to_json(const ProcedureConfig& cfg);
json to_json(const DgpSpec& spec);

json to_json(const RocCurve& roc);
json to_json(const FittedModel& model);
json to_json(const PointwiseCI& ci);
json to_json(const BandResult& band);
json to_json(const DominanceResult& result);
json to_json(const AucComparison& result);
json to_json(const CoverageReport& report);
json to_json(const ExperimentSummary& summary);

/// t, r, c_hat
std::string roc_csv(const RocCurve& roc);
/// t, r_hat, lower, upper
std::string band_csv(const BandResult& band);
/// One row per cutoff; per (target, method) a coverage and an MC standard error column.
std::string coverage_csv(const CoverageReport& report);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace rocinf
