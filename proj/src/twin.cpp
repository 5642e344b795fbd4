#include "qcap/twin.hpp"

#include <utility>

namespace qcap {

std::optional<PairStepResult> pair_step(const TwinState& state, std::int64_t step_index,
                                        HalfQuantum prior_cumulative) {
    const std::int64_t diff = state.n1.value() - state.n2.value();
    if (diff < 2 && diff > -2) {
        return std::nullopt;  // neither direction delivers positive energy
    }

    const bool first_donates = diff > 0;
    const ElectronCount donor = first_donates ? state.n1 : state.n2;
    const ElectronCount receiver = first_donates ? state.n2 : state.n1;
    const HalfQuantum work = pair_transfer_work(donor, receiver);

    TwinState next = state;
    if (first_donates) {
        next.n1 = state.n1.decremented();
        next.n2 = state.n2.incremented();
    } else {
        next.n2 = state.n2.decremented();
        next.n1 = state.n1.incremented();
    }

    LedgerEntry entry{};
    entry.step = step_index;
    entry.n_before = donor.value();
    entry.n_after = donor.value() - 1;
    entry.emitted = true;
    entry.photon_energy_w = 1.0;  // ideal photon frees the electron, zero residual
    entry.work_function_cost_w = 1.0;
    entry.k0_residual_hq = 0.0;
    entry.field_work = work;
    entry.ke_delivered_hq = static_cast<double>(work.value());
    entry.cumulative_field_work = prior_cumulative + work;
    return PairStepResult{std::move(next), entry};
}

Ledger run_pair_to_equilibrium(const TwinState& initial) {
    Ledger ledger{};
    ledger.scenario = Scenario::twin;
    ledger.outcome = RunOutcome::equilibrium;
    ledger.initial_state = initial;

    TwinState current = initial;
    std::int64_t index = 0;
    HalfQuantum cumulative{};

    while (auto result = pair_step(current, index + 1, cumulative)) {
        ++index;
        cumulative = result->entry.cumulative_field_work;
        ledger.entries.push_back(result->entry);
        current = std::move(result->state);
    }

    ledger.final_state = current;
    return ledger;
}

}  // namespace qcap
