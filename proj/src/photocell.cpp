#include "qcap/photocell.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace qcap {

StepResult step(const CellState& state, Photon photon, double k0_unit_scale,
                std::int64_t step_index, HalfQuantum prior_cumulative) {
    LedgerEntry entry{};
    entry.step = step_index;
    entry.n_before = state.cathode_excess.value();
    entry.photon_energy_w = photon.energy_w();

    if (!emission_check(photon)) {
        // Below threshold nothing couples: no emission, no work, no cost.
        entry.n_after = entry.n_before;
        entry.cumulative_field_work = prior_cumulative;
        return StepResult{state, entry};
    }

    if (state.cathode_excess.value() == 0) {
        throw std::logic_error("step: photon at or above threshold hit a discharged cell (n = 0)");
    }

    const double surplus_w = photon.energy_w() - 1.0;
    if (surplus_w > 0.0 && !(k0_unit_scale > 0.0)) {
        throw std::invalid_argument(
            "step: photon carries surplus energy but k0_unit_scale is not positive; "
            "pass the work function in half-quanta to account for it");
    }

    entry.emitted = true;
    entry.work_function_cost_w = 1.0;
    entry.k0_residual_hq = surplus_w > 0.0 ? surplus_w * k0_unit_scale : 0.0;
    entry.field_work = transfer_work_exact(state.cathode_excess);
    entry.ke_delivered_hq = static_cast<double>(entry.field_work.value()) + entry.k0_residual_hq;

    CellState next = state;
    next.cathode_excess = state.cathode_excess.decremented();
    entry.n_after = next.cathode_excess.value();
    entry.cumulative_field_work = prior_cumulative + entry.field_work;
    return StepResult{std::move(next), entry};
}

Ledger run_to_discharge(const CellState& initial, PhotonSource source, double k0_unit_scale) {
    Ledger ledger{};
    ledger.scenario = Scenario::single;
    ledger.initial_state = initial;

    CellState current = initial;
    std::int64_t index = 0;
    HalfQuantum cumulative{};

    while (current.cathode_excess.value() > 0) {
        const auto photon = source.next();
        if (!photon) {
            ledger.outcome = RunOutcome::source_exhausted;
            ledger.final_state = current;
            return ledger;
        }
        auto result = step(current, *photon, k0_unit_scale, ++index, cumulative);
        cumulative = result.entry.cumulative_field_work;
        ledger.entries.push_back(result.entry);
        current = std::move(result.state);
    }

    ledger.outcome = RunOutcome::discharged;
    ledger.final_state = current;
    return ledger;
}

GuardResult idealization_guard(ElectronCount n, double work_function_hq, double epsilon) {
    if (!(work_function_hq > 0.0)) {
        throw std::invalid_argument("idealization_guard: work function must be positive");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("idealization_guard: epsilon must be positive");
    }
    // First transfer is the hottest: the continuum estimate eV = 2n h_q.
    const double peak_step_hq = 2.0 * static_cast<double>(n.value());
    const double ratio = peak_step_hq / work_function_hq;
    return GuardResult{ratio <= epsilon, ratio};
}

}  // namespace qcap
