#pragma once

// Single photo-cell discharge engine.
//
// A charged capacitor whose cathode doubles as the photo-emitter: each
// absorbed photon at or above the work function frees one electron, the
// field then drives it to the anode and the plate charge drops by one.
// The field work per step is the exact integer (2n - 1) h_q.

#include <cstdint>

#include "qcap/ledger.hpp"
#include "qcap/quantized.hpp"

namespace qcap {

struct StepResult {
    CellState state;     // cell after the photon is absorbed
    LedgerEntry entry;   // bookkeeping for this photon
};

/// Outcome of the idealization check: the discharge model treats every
/// electron as arriving with negligible kinetic energy, which holds only
/// while the total electrostatic energy scale stays small against the
/// work function.
struct GuardResult {
    bool ok = false;
    double ratio = 0.0;  // peak per-step energy over work function, 2n/W_hq
};

/// Absorb one photon into the cell.
///
/// k0_unit_scale converts the photon's surplus above the work function
/// (measured in W units) into half-quanta; it equals the work function
/// expressed in h_q. Zero means "ideal mode is the only mode": any photon
/// hotter than threshold is then rejected because its surplus energy
/// would have nowhere to go in the ledger.
///
/// A sub-threshold photon produces a no-op entry. A hot photon hitting a
/// discharged cell (n = 0) is a terminal-state violation and throws.
///
/// step_index and prior_cumulative chain this entry onto an existing run;
/// the defaults start a fresh one.
[[nodiscard]] StepResult step(const CellState& state, Photon photon, double k0_unit_scale,
                              std::int64_t step_index = 1, HalfQuantum prior_cumulative = {});

/// Drive the cell to n = 0, drawing photons until discharge or exhaustion.
/// An exhausted source yields a partial ledger with outcome
/// source_exhausted; the entries recorded so far are kept.
[[nodiscard]] Ledger run_to_discharge(const CellState& initial, PhotonSource source,
                                      double k0_unit_scale = 0.0);

/// Check that the largest per-step electrostatic energy (2n h_q at the
/// first transfer) stays below epsilon times the work function, with the
/// work function given in half-quanta. Returns the ratio either way so
/// callers can report it; throws on non-positive work function or epsilon.
[[nodiscard]] GuardResult idealization_guard(ElectronCount n, double work_function_hq,
                                             double epsilon);

}  // namespace qcap
