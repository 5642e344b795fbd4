#pragma once

// Ledger auditing and continuum-vs-exact comparison tables.
//
// The audit is an independent oracle over the engines: it trusts only the
// boundary states of a ledger, replays every entry against the exact
// transfer rules, and then checks the conservation identity
//   E_in = E_fin + total kinetic energy delivered
// as an exact integer equation (photon surpluses, when present, close to
// 1e-12 relative since they enter through floating point).

#include <stdexcept>
#include <string>
#include <vector>

#include "qcap/ledger.hpp"
#include "qcap/quantized.hpp"

namespace qcap {

/// One row of the continuum-vs-exact total-work comparison.
struct ComparisonRow {
    std::int64_t n = 0;               // initial electron count
    HalfQuantum exact_total{};        // n^2, the true discharge energy
    HalfQuantum paper_series_total{}; // n(n+1), the continuum per-step series
    HalfQuantum qv_half{};            // QV/2 in h_q, equal to exact_total
    HalfQuantum abs_error{};          // series minus exact, n h_q exactly
    double rel_error = 0.0;           // abs_error / exact_total = 1/n

    friend constexpr bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

/// Result of auditing one ledger.
struct ConservationReport {
    Scenario scenario = Scenario::single;
    HalfQuantum e_in{};           // field energy of the initial state
    HalfQuantum e_fin{};          // field energy of the final state
    HalfQuantum total_ke{};       // integer field work summed over entries
    double residual_k0_hq = 0.0;  // photon surplus summed over entries
    bool balanced = false;        // E_in == E_fin + total_ke (and float closure)

    friend constexpr bool operator==(const ConservationReport&, const ConservationReport&) = default;
};

/// A ledger whose entries contradict the transfer rules or each other.
/// The message names the first offending entry.
class LedgerError : public std::runtime_error {
public:
    explicit LedgerError(const std::string& message) : std::runtime_error(message) {}
};

/// Build comparison rows for each initial count. Every count must be at
/// least 1 (the relative error divides by the exact total); an empty input
/// yields an empty table.
[[nodiscard]] std::vector<ComparisonRow> sweep_comparison(const std::vector<ElectronCount>& counts);

/// Replay-validate a ledger and report on conservation.
///
/// Verifies, entry by entry: consecutive 1-based step numbers, emission
/// consistent with the photon's energy, state chaining from the initial
/// state, field work equal to the exact transfer work for the replayed
/// state, non-negative photon surplus, the kinetic-energy sum identity,
/// and the running cumulative. Any violation throws LedgerError naming
/// the first bad entry.
///
/// The returned report's balanced flag compares recomputed boundary
/// energies against the summed work; a ledger whose final_state does not
/// match the replayed end state yields balanced = false rather than an
/// error, since every entry is individually sound.
///
/// Pure: auditing the same ledger twice gives identical reports.
[[nodiscard]] ConservationReport audit(const Ledger& ledger);

}  // namespace qcap
