#pragma once

// Ledger vocabulary shared by the single-cell and twin-cell engines.
//
// Every charge transfer appends one LedgerEntry. Field work and cumulative
// totals are integers in half-quantum units; photon bookkeeping uses the
// work function W as its unit (a photon of energy 1.0 is exactly at
// threshold). The two currencies meet in ke_delivered: the integer field
// work plus whatever photon surplus k0 survives above the work function,
// converted into half-quanta.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qcap/quantized.hpp"

namespace qcap {

/// A photon with energy measured in work-function units (1.0 == W).
class Photon {
public:
    constexpr explicit Photon(double energy_w) : energy_w_(energy_w) {
        if (!(energy_w >= 0.0)) {
            throw std::invalid_argument("Photon: energy must be non-negative");
        }
    }

    [[nodiscard]] constexpr double energy_w() const { return energy_w_; }

    friend constexpr auto operator<=>(Photon, Photon) = default;

private:
    double energy_w_;
};

/// Emission happens exactly at threshold: photon energy >= work function.
[[nodiscard]] constexpr bool emission_check(Photon photon) {
    return photon.energy_w() >= 1.0;
}

/// Stream of photons hitting the cathode.
///
/// Three flavours:
///  - ideal:    every photon carries exactly the work function;
///  - fixed:    every photon carries one given energy;
///  - sequence: a finite scripted list, then exhaustion.
/// An optional count limit turns the infinite flavours into finite ones.
/// A fixed sub-threshold source without a limit is rejected outright:
/// it can never free an electron, so draining a charged cell from it
/// would loop forever.
class PhotonSource {
public:
    [[nodiscard]] static PhotonSource ideal(std::optional<std::int64_t> count_limit = {}) {
        return PhotonSource(Photon(1.0), count_limit);
    }

    [[nodiscard]] static PhotonSource fixed(Photon photon,
                                            std::optional<std::int64_t> count_limit = {}) {
        if (!count_limit && !emission_check(photon)) {
            throw std::invalid_argument(
                "PhotonSource: an unlimited sub-threshold source can never discharge a cell; "
                "give it a count limit");
        }
        return PhotonSource(photon, count_limit);
    }

    [[nodiscard]] static PhotonSource sequence(std::vector<Photon> photons) {
        PhotonSource source(std::move(photons));
        return source;
    }

    /// Next photon, or nullopt once the source is exhausted.
    [[nodiscard]] std::optional<Photon> next() {
        if (limit_ && emitted_ >= *limit_) {
            return std::nullopt;
        }
        if (scripted_) {
            if (emitted_ >= static_cast<std::int64_t>(scripted_->size())) {
                return std::nullopt;
            }
            return (*scripted_)[static_cast<std::size_t>(emitted_++)];
        }
        ++emitted_;
        return repeated_;
    }

private:
    PhotonSource(Photon repeated, std::optional<std::int64_t> limit)
        : repeated_(repeated), limit_(limit) {
        if (limit && *limit < 0) {
            throw std::invalid_argument("PhotonSource: count limit must be non-negative");
        }
    }

    explicit PhotonSource(std::vector<Photon> scripted)
        : repeated_(Photon(0.0)), scripted_(std::move(scripted)) {}

    Photon repeated_;
    std::optional<std::vector<Photon>> scripted_{};
    std::optional<std::int64_t> limit_{};
    std::int64_t emitted_ = 0;
};

enum class Scenario { single, twin };

/// Why a run stopped.
enum class RunOutcome {
    discharged,        // single cell reached n = 0
    source_exhausted,  // photons ran out with charge still on the plate
    equilibrium,       // twin pair reached a state with no energy left to gain
};

[[nodiscard]] constexpr const char* to_string(Scenario scenario) {
    switch (scenario) {
        case Scenario::single: return "single";
        case Scenario::twin: return "twin";
    }
    throw std::invalid_argument("to_string: unknown scenario");
}

[[nodiscard]] constexpr const char* to_string(RunOutcome outcome) {
    switch (outcome) {
        case RunOutcome::discharged: return "discharged";
        case RunOutcome::source_exhausted: return "source_exhausted";
        case RunOutcome::equilibrium: return "equilibrium";
    }
    throw std::invalid_argument("to_string: unknown run outcome");
}

/// One absorbed photon's worth of bookkeeping.
///
/// Sub-threshold photons still get an entry (emitted = false, all energy
/// columns zero) so that a replay can verify nothing happened. For twin
/// runs the emitting plate plays the cathode role: n_before/n_after track
/// the donor plate's excess.
struct LedgerEntry {
    std::int64_t step = 0;                // 1-based position in the run
    std::int64_t n_before = 0;            // donor plate excess before the step
    std::int64_t n_after = 0;             // donor plate excess after the step
    bool emitted = false;                 // did the photon free an electron
    double photon_energy_w = 0.0;         // incident photon energy, W units
    double work_function_cost_w = 0.0;    // 1.0 when emitted, else 0.0
    double k0_residual_hq = 0.0;          // photon surplus above W, in h_q
    HalfQuantum field_work{};             // exact field work on the electron
    double ke_delivered_hq = 0.0;         // field_work + k0_residual
    HalfQuantum cumulative_field_work{};  // running sum of field_work

    friend constexpr bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

using StateSnapshot = std::variant<CellState, TwinState>;

[[nodiscard]] constexpr HalfQuantum field_energy(const StateSnapshot& snapshot) {
    return std::visit([](const auto& state) { return field_energy(state); }, snapshot);
}

/// Complete record of one run: boundary states plus every transfer between
/// them. The audit in analysis.hpp re-derives everything in here from the
/// boundary states alone and cross-checks entry by entry.
struct Ledger {
    Scenario scenario = Scenario::single;
    RunOutcome outcome = RunOutcome::discharged;
    StateSnapshot initial_state{};
    StateSnapshot final_state{};
    std::vector<LedgerEntry> entries{};

    friend bool operator==(const Ledger&, const Ledger&) = default;
};

}  // namespace qcap
