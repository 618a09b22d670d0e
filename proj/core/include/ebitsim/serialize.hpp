#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ebitsim/concentration.hpp"
#include "ebitsim/dilution.hpp"
#include "ebitsim/ledger.hpp"
#include "ebitsim/spectra.hpp"
#include "ebitsim/transcript.hpp"
#include "ebitsim/typicality.hpp"

namespace ebitsim {

using json = nlohmann::json;

/// Shortest round-trip decimal form of a double; byte-stable across runs.
std::string format_double(double value);

json spectrum_to_json(const SchmidtSpectrum& spectrum);
json partition_to_json(const TypicalityPartition& partition);
std::string partition_to_csv_row(const TypicalityPartition& partition);
json plan_to_json(const DilutionPlan& plan);
json transcript_to_json(const ProtocolTranscript& transcript);
json report_to_json(const CheckReport& report);
json ledger_to_json(const ResourceLedger& ledger);

/// CSV with header `N,c,S,d,delta_dim,cbits,singlets,fidelity,bits_per_ebit`,
/// LF line endings, `.` decimal separator.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
json sweep_to_json(const std::vector<SweepRow>& rows);

/// CSV with header `k,probability,yield_ebits`.
std::string concentration_to_csv(const std::vector<ConcentrationOutcome>& outcomes);
json concentration_to_json(const std::vector<ConcentrationOutcome>& outcomes);

}  // namespace ebitsim
