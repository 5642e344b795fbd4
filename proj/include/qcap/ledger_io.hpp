#pragma once

// Serialization of ledgers, comparison tables and audit summaries.
//
// Machine-readable output keeps energies as integers in half-quantum
// units and renders every floating-point field with its shortest
// round-trip decimal form, so identical runs produce byte-identical
// files on any platform. Joules appear only in the human summary.

#include <string>
#include <vector>

#include "json.hpp"
#include "qcap/analysis.hpp"
#include "qcap/ledger.hpp"

namespace qcap {

inline constexpr const char* ledger_csv_header =
    "step,n_before,n_after,emitted,photon_energy_W,field_work_hq,"
    "k0_residual_hq,ke_delivered_hq,cumulative_field_work_hq";

inline constexpr const char* comparison_csv_header =
    "n,exact_total_hq,paper_series_total_hq,qv_half_hq,abs_error_hq,rel_error";

/// Shortest decimal form that parses back to exactly the same double.
[[nodiscard]] std::string format_double(double value);

/// Photon energies keep a visible decimal point ("1.0", not "1") so the
/// column reads as the real quantity it is; otherwise shortest form.
[[nodiscard]] std::string format_photon_energy(double value);

/// Ledger as CSV: pinned header first, one row per entry, every line
/// newline-terminated.
[[nodiscard]] std::string to_csv(const Ledger& ledger);

/// Comparison table as CSV, same conventions.
[[nodiscard]] std::string to_csv(const std::vector<ComparisonRow>& rows);

/// Ledger as a JSON object: scenario, outcome, boundary states, entries
/// keyed by the CSV column names, and the audit report.
[[nodiscard]] nlohmann::ordered_json to_json(const Ledger& ledger, const ConservationReport& report);

/// Comparison table as a JSON object with a "rows" array.
[[nodiscard]] nlohmann::ordered_json to_json(const std::vector<ComparisonRow>& rows);

/// Rebuild a ledger from its own CSV (header plus rows, as produced by
/// to_csv). Boundary states are reconstructed under the canonical run
/// conventions: a single cell starts at the first row's n_before, a twin
/// pair starts at (first n_before, 0) and is replayed row by row.
/// Malformed input throws std::runtime_error naming the line.
[[nodiscard]] Ledger parse_ledger_csv(const std::string& csv, Scenario scenario);

/// Human-readable run summary (for standard error): scenario, outcome,
/// the conservation report, twin-run loss as a share of E_in, and SI
/// values when the state carries a capacitance.
[[nodiscard]] std::string summary_text(const Ledger& ledger, const ConservationReport& report);

}  // namespace qcap
