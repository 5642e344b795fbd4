#pragma once

// Two-capacitor discharge engine.
//
// Two identical capacitors, one charged with N electrons, one empty,
// exchange charge one electron at a time through the same photoelectric
// mechanism as the single cell (ideal photons, zero residual). Moving an
// electron from a plate with d excess to one with r excess releases
// exactly 2(d - r - 1) h_q, so transfers continue while that is strictly
// positive and stop when the plates are within one electron of each other.
// Starting from (N, 0) this loses exactly N^2/2 h_q for even N and
// (N^2 - 1)/2 h_q for odd N, the discrete form of the classic
// half-the-energy-vanishes result.

#include <cstdint>
#include <optional>

#include "qcap/ledger.hpp"
#include "qcap/quantized.hpp"

namespace qcap {

/// Kinetic energy delivered by moving one electron from the donor plate
/// (excess d) to the receiver plate (excess r):
///   d^2 + r^2 - (d-1)^2 - (r+1)^2 = 2(d - r - 1) h_q.
/// Negative means the move is uphill and energetically forbidden.
[[nodiscard]] constexpr HalfQuantum pair_transfer_work(ElectronCount donor, ElectronCount receiver) {
    if (donor.value() == 0) {
        throw std::invalid_argument("pair_transfer_work: donor plate has no electron to give");
    }
    return HalfQuantum(2 * (donor.value() - receiver.value() - 1));
}

struct PairStepResult {
    TwinState state;     // pair after the transfer
    LedgerEntry entry;   // n_before/n_after track the donor plate
};

/// Attempt one transfer. The donor is whichever plate can deliver strictly
/// positive kinetic energy (the one ahead by two or more electrons); if
/// neither can, the pair is in equilibrium and nullopt is returned. The
/// marginal zero-energy move (difference exactly one) is disallowed: with
/// no field there is nothing to accelerate the electron, and permitting it
/// would make the terminal state oscillate.
[[nodiscard]] std::optional<PairStepResult> pair_step(const TwinState& state,
                                                      std::int64_t step_index = 1,
                                                      HalfQuantum prior_cumulative = {});

/// Run transfers until equilibrium. The ledger's outcome is equilibrium;
/// its entries carry the strictly decreasing per-step kinetic energies.
[[nodiscard]] Ledger run_pair_to_equilibrium(const TwinState& initial);

}  // namespace qcap
