#include "qcap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <variant>

#include "qcap/twin.hpp"

namespace qcap {
namespace {

[[noreturn]] void fail(std::int64_t position, const std::string& what) {
    throw LedgerError("audit: entry " + std::to_string(position) + ": " + what);
}

// Equality with 1e-12 relative slack, for identities that pass through
// floating point (photon surplus). Integer identities never use this.
bool close(double a, double b) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= 1e-12 * scale;
}

void check_common_shape(const LedgerEntry& entry, std::int64_t position) {
    if (entry.step != position) {
        fail(position, "step number is " + std::to_string(entry.step) + ", expected " +
                           std::to_string(position));
    }
    if (!(entry.photon_energy_w >= 0.0)) {
        fail(position, "photon energy is negative");
    }
    const bool should_emit = entry.photon_energy_w >= 1.0;
    if (entry.emitted != should_emit) {
        fail(position, "emission flag contradicts the photon energy");
    }
    if (!entry.emitted) {
        if (entry.n_after != entry.n_before) fail(position, "no emission but the plate count changed");
        if (entry.field_work != HalfQuantum(0)) fail(position, "no emission but field work is nonzero");
        if (entry.k0_residual_hq != 0.0) fail(position, "no emission but photon surplus is nonzero");
        if (entry.ke_delivered_hq != 0.0) fail(position, "no emission but kinetic energy is nonzero");
        if (entry.work_function_cost_w != 0.0) fail(position, "no emission but work-function cost is nonzero");
        return;
    }
    if (entry.n_after != entry.n_before - 1) {
        fail(position, "emission must lower the donor plate count by exactly one");
    }
    if (entry.work_function_cost_w != 1.0) {
        fail(position, "emission costs exactly one work function");
    }
    if (!(entry.k0_residual_hq >= 0.0)) {
        fail(position, "photon surplus is negative");
    }
    if (!close(entry.ke_delivered_hq,
               static_cast<double>(entry.field_work.value()) + entry.k0_residual_hq)) {
        fail(position, "kinetic energy does not equal field work plus photon surplus");
    }
    if (!(entry.ke_delivered_hq >= 0.0)) {
        fail(position, "kinetic energy is negative");
    }
}

CellState replay_single(CellState current, const LedgerEntry& entry, std::int64_t position) {
    if (entry.n_before != current.cathode_excess.value()) {
        fail(position, "plate count " + std::to_string(entry.n_before) +
                           " does not chain from the previous state (" +
                           std::to_string(current.cathode_excess.value()) + ")");
    }
    if (!entry.emitted) {
        return current;
    }
    if (current.cathode_excess.value() == 0) {
        fail(position, "emission recorded against a discharged cell");
    }
    if (entry.field_work != transfer_work_exact(current.cathode_excess)) {
        fail(position, "field work is " + std::to_string(entry.field_work.value()) +
                           " h_q, expected " +
                           std::to_string(transfer_work_exact(current.cathode_excess).value()));
    }
    current.cathode_excess = current.cathode_excess.decremented();
    return current;
}

TwinState replay_twin(TwinState current, const LedgerEntry& entry, std::int64_t position) {
    if (!entry.emitted) {
        if (entry.n_before != current.n1.value() && entry.n_before != current.n2.value()) {
            fail(position, "plate count does not match either capacitor");
        }
        return current;
    }
    // The donor is identified by its count and by the transfer being
    // energetically downhill; with both plates equal no such plate exists.
    const bool first_donates =
        entry.n_before == current.n1.value() && current.n1.value() - current.n2.value() >= 2;
    const bool second_donates =
        entry.n_before == current.n2.value() && current.n2.value() - current.n1.value() >= 2;
    if (!first_donates && !second_donates) {
        fail(position, "no plate with count " + std::to_string(entry.n_before) +
                           " can make a positive-energy transfer from state (" +
                           std::to_string(current.n1.value()) + ", " +
                           std::to_string(current.n2.value()) + ")");
    }
    const ElectronCount donor = first_donates ? current.n1 : current.n2;
    const ElectronCount receiver = first_donates ? current.n2 : current.n1;
    if (entry.field_work != pair_transfer_work(donor, receiver)) {
        fail(position, "field work is " + std::to_string(entry.field_work.value()) +
                           " h_q, expected " +
                           std::to_string(pair_transfer_work(donor, receiver).value()));
    }
    if (first_donates) {
        current.n1 = current.n1.decremented();
        current.n2 = current.n2.incremented();
    } else {
        current.n2 = current.n2.decremented();
        current.n1 = current.n1.incremented();
    }
    return current;
}

}  // namespace

std::vector<ComparisonRow> sweep_comparison(const std::vector<ElectronCount>& counts) {
    std::vector<ComparisonRow> rows;
    rows.reserve(counts.size());
    for (const ElectronCount count : counts) {
        if (count.value() < 1) {
            throw std::invalid_argument("sweep_comparison: every count must be at least 1");
        }
        ComparisonRow row{};
        row.n = count.value();
        row.exact_total = total_work_exact(count);
        row.paper_series_total = total_work_paper_series(count);
        row.qv_half = field_energy(count);  // QV/2 = n^2 h_q, same as the exact total
        row.abs_error = row.paper_series_total - row.exact_total;
        row.rel_error =
            static_cast<double>(row.abs_error.value()) / static_cast<double>(row.exact_total.value());
        rows.push_back(row);
    }
    return rows;
}

ConservationReport audit(const Ledger& ledger) {
    const bool states_are_single = std::holds_alternative<CellState>(ledger.initial_state) &&
                                   std::holds_alternative<CellState>(ledger.final_state);
    const bool states_are_twin = std::holds_alternative<TwinState>(ledger.initial_state) &&
                                 std::holds_alternative<TwinState>(ledger.final_state);
    if ((ledger.scenario == Scenario::single && !states_are_single) ||
        (ledger.scenario == Scenario::twin && !states_are_twin)) {
        throw LedgerError("audit: boundary states do not match the ledger's scenario");
    }

    StateSnapshot current = ledger.initial_state;
    HalfQuantum total_ke{};
    double residual_k0 = 0.0;
    double total_ke_float = 0.0;
    std::int64_t position = 0;

    for (const LedgerEntry& entry : ledger.entries) {
        ++position;
        check_common_shape(entry, position);
        if (ledger.scenario == Scenario::single) {
            current = replay_single(std::get<CellState>(current), entry, position);
        } else {
            current = replay_twin(std::get<TwinState>(current), entry, position);
        }
        total_ke += entry.field_work;
        residual_k0 += entry.k0_residual_hq;
        total_ke_float += entry.ke_delivered_hq;
        if (entry.cumulative_field_work != total_ke) {
            fail(position, "cumulative field work is " +
                               std::to_string(entry.cumulative_field_work.value()) +
                               " h_q, expected " + std::to_string(total_ke.value()));
        }
    }

    ConservationReport report{};
    report.scenario = ledger.scenario;
    report.e_in = field_energy(ledger.initial_state);
    report.e_fin = field_energy(ledger.final_state);
    report.total_ke = total_ke;
    report.residual_k0_hq = residual_k0;

    // Exact integer ledger closure, plus the float closure that the photon
    // surplus passes through: E_in + sum(k0) = E_fin + sum(ke).
    const bool integer_balanced = report.e_in == report.e_fin + total_ke;
    const bool float_balanced =
        close(static_cast<double>(report.e_in.value()) + residual_k0,
              static_cast<double>(report.e_fin.value()) + total_ke_float);
    report.balanced = integer_balanced && float_balanced;
    return report;
}

}  // namespace qcap
