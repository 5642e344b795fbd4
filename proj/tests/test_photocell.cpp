#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "doctest.h"
#include "qcap/photocell.hpp"

using namespace qcap;

namespace {

PhotonSource sequence_of(std::initializer_list<double> energies) {
    std::vector<Photon> photons;
    for (const double e : energies) photons.emplace_back(e);
    return PhotonSource::sequence(std::move(photons));
}

}  // namespace

TEST_SUITE("photocell") {

TEST_CASE("emission happens exactly at the work-function threshold") {
    CHECK(emission_check(Photon(1.0)));
    CHECK(emission_check(Photon(1.2)));
    CHECK_FALSE(emission_check(Photon(0.5)));
    CHECK_FALSE(emission_check(Photon(0.0)));
    CHECK_FALSE(emission_check(Photon(0.999999)));
    CHECK_THROWS_AS((void)Photon(-0.1), std::invalid_argument);
}

TEST_CASE("photon sources produce their advertised streams") {
    PhotonSource ideal = PhotonSource::ideal();
    for (int i = 0; i < 100; ++i) {
        const auto photon = ideal.next();
        REQUIRE(photon.has_value());
        CHECK(photon->energy_w() == 1.0);
    }

    PhotonSource limited = PhotonSource::ideal(3);
    CHECK(limited.next().has_value());
    CHECK(limited.next().has_value());
    CHECK(limited.next().has_value());
    CHECK_FALSE(limited.next().has_value());
    CHECK_FALSE(limited.next().has_value());

    PhotonSource fixed = PhotonSource::fixed(Photon(1.5), 2);
    CHECK(fixed.next()->energy_w() == 1.5);
    CHECK(fixed.next()->energy_w() == 1.5);
    CHECK_FALSE(fixed.next().has_value());

    PhotonSource scripted = sequence_of({1.0, 0.3, 1.0});
    CHECK(scripted.next()->energy_w() == 1.0);
    CHECK(scripted.next()->energy_w() == 0.3);
    CHECK(scripted.next()->energy_w() == 1.0);
    CHECK_FALSE(scripted.next().has_value());
}

TEST_CASE("an unlimited sub-threshold source is rejected outright") {
    // It could never free an electron, so draining a charged cell from it
    // would never terminate.
    CHECK_THROWS_AS((void)PhotonSource::fixed(Photon(0.5)), std::invalid_argument);
    CHECK_NOTHROW((void)PhotonSource::fixed(Photon(0.5), 10));
    CHECK_NOTHROW((void)PhotonSource::fixed(Photon(1.0)));
}

TEST_CASE("one ideal photon moves one electron and ledgers its work") {
    const CellState cell{ElectronCount(5)};
    const StepResult result = step(cell, Photon(1.0), 0.0);
    CHECK(result.state.cathode_excess.value() == 4);
    CHECK(result.entry.step == 1);
    CHECK(result.entry.n_before == 5);
    CHECK(result.entry.n_after == 4);
    CHECK(result.entry.emitted);
    CHECK(result.entry.photon_energy_w == 1.0);
    CHECK(result.entry.work_function_cost_w == 1.0);
    CHECK(result.entry.k0_residual_hq == 0.0);
    CHECK(result.entry.field_work.value() == 9);
    CHECK(result.entry.ke_delivered_hq == 9.0);
    CHECK(result.entry.cumulative_field_work.value() == 9);
}

TEST_CASE("a sub-threshold photon is ledgered as a no-op") {
    const CellState cell{ElectronCount(3)};
    const StepResult result = step(cell, Photon(0.9), 0.0, 4, HalfQuantum(20));
    CHECK(result.state == cell);
    CHECK(result.entry.step == 4);
    CHECK(result.entry.n_before == 3);
    CHECK(result.entry.n_after == 3);
    CHECK_FALSE(result.entry.emitted);
    CHECK(result.entry.work_function_cost_w == 0.0);
    CHECK(result.entry.field_work.value() == 0);
    CHECK(result.entry.ke_delivered_hq == 0.0);
    CHECK(result.entry.cumulative_field_work.value() == 20);
}

TEST_CASE("the last electron leaves the cell fully discharged") {
    const StepResult result = step(CellState{ElectronCount(1)}, Photon(1.0), 0.0);
    CHECK(result.state.cathode_excess.value() == 0);
    CHECK(result.entry.field_work.value() == 1);
    CHECK(field_energy(result.state).value() == 0);
}

TEST_CASE("a hot photon on a discharged cell is a terminal-state violation") {
    CHECK_THROWS_AS((void)step(CellState{ElectronCount(0)}, Photon(1.0), 0.0), std::logic_error);
    // Sub-threshold light on an empty cell stays a plain no-op.
    CHECK_NOTHROW((void)step(CellState{ElectronCount(0)}, Photon(0.5), 0.0));
}

TEST_CASE("photon surplus converts through the work-function scale") {
    // Work function worth 1000 h_q: a photon at 1.5 W leaves 0.5 W = 500 h_q
    // of kinetic energy on top of the field work.
    const StepResult result = step(CellState{ElectronCount(5)}, Photon(1.5), 1000.0);
    CHECK(result.entry.k0_residual_hq == 500.0);
    CHECK(result.entry.ke_delivered_hq == 509.0);
    CHECK(result.entry.field_work.value() == 9);

    // Without a scale there is nowhere to account the surplus.
    CHECK_THROWS_AS((void)step(CellState{ElectronCount(5)}, Photon(1.5), 0.0), std::invalid_argument);
    // At exactly threshold the scale is irrelevant.
    CHECK_NOTHROW((void)step(CellState{ElectronCount(5)}, Photon(1.0), 0.0));
}

TEST_CASE("a full ideal discharge ledgers the odd numbers in reverse") {
    const Ledger ledger = run_to_discharge(CellState{ElectronCount(5)}, PhotonSource::ideal());
    CHECK(ledger.scenario == Scenario::single);
    CHECK(ledger.outcome == RunOutcome::discharged);
    CHECK(std::get<CellState>(ledger.initial_state).cathode_excess.value() == 5);
    CHECK(std::get<CellState>(ledger.final_state).cathode_excess.value() == 0);
    REQUIRE(ledger.entries.size() == 5);

    const std::int64_t expected_work[] = {9, 7, 5, 3, 1};
    const std::int64_t expected_cumulative[] = {9, 16, 21, 24, 25};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(ledger.entries[i].step == static_cast<std::int64_t>(i + 1));
        CHECK(ledger.entries[i].field_work.value() == expected_work[i]);
        CHECK(ledger.entries[i].cumulative_field_work.value() == expected_cumulative[i]);
    }
    CHECK(ledger.entries.back().cumulative_field_work == field_energy(ledger.initial_state));
}

TEST_CASE("an empty cell yields an empty ledger") {
    const Ledger ledger = run_to_discharge(CellState{ElectronCount(0)}, PhotonSource::ideal());
    CHECK(ledger.outcome == RunOutcome::discharged);
    CHECK(ledger.entries.empty());
    CHECK(field_energy(ledger.initial_state).value() == 0);
    CHECK(field_energy(ledger.final_state).value() == 0);
}

TEST_CASE("an exhausted source leaves a partial but honest ledger") {
    const Ledger ledger = run_to_discharge(CellState{ElectronCount(5)}, PhotonSource::ideal(2));
    CHECK(ledger.outcome == RunOutcome::source_exhausted);
    REQUIRE(ledger.entries.size() == 2);
    CHECK(std::get<CellState>(ledger.final_state).cathode_excess.value() == 3);
    // The partial ledger still balances: 25 = 9 (remaining) + 9 + 7.
    CHECK(ledger.entries.back().cumulative_field_work.value() == 16);
}

TEST_CASE("emission count equals the initial charge for an unbounded ideal source") {
    for (std::int64_t n : {0LL, 1LL, 2LL, 37LL, 1000LL}) {
        const Ledger ledger = run_to_discharge(CellState{ElectronCount(n)}, PhotonSource::ideal());
        CHECK(ledger.entries.size() == static_cast<std::size_t>(n));
        CHECK(ledger.outcome == RunOutcome::discharged);
    }
}

TEST_CASE("voltage drops strictly at every emission") {
    const Ledger ledger = run_to_discharge(CellState{ElectronCount(50)}, PhotonSource::ideal());
    for (const LedgerEntry& entry : ledger.entries) {
        CHECK(entry.n_after < entry.n_before);
    }
}

TEST_CASE("identical inputs replay to identical ledgers") {
    const CellState cell{ElectronCount(20)};
    const auto make_source = [] {
        std::vector<Photon> photons;
        for (int i = 0; i < 40; ++i) {
            photons.emplace_back(i % 3 == 0 ? 0.4 : 1.0);
        }
        return PhotonSource::sequence(std::move(photons));
    };
    const Ledger first = run_to_discharge(cell, make_source());
    const Ledger second = run_to_discharge(cell, make_source());
    CHECK(first == second);
}

TEST_CASE("sub-threshold photons are inert: filtering them out changes nothing") {
    std::mt19937_64 rng(20260822);
    std::uniform_int_distribution<std::int64_t> charge(0, 300);
    std::uniform_real_distribution<double> dud_energy(0.0, 0.999);
    std::uniform_int_distribution<int> dud_count(0, 80);

    for (int round = 0; round < 50; ++round) {
        const std::int64_t n = charge(rng);
        std::vector<Photon> mixed;
        for (std::int64_t i = 0; i < n; ++i) mixed.emplace_back(1.0);
        for (int i = dud_count(rng); i > 0; --i) mixed.emplace_back(dud_energy(rng));
        std::shuffle(mixed.begin(), mixed.end(), rng);

        std::vector<Photon> filtered;
        for (const Photon photon : mixed) {
            if (emission_check(photon)) filtered.push_back(photon);
        }

        const CellState cell{ElectronCount(n)};
        const Ledger noisy = run_to_discharge(cell, PhotonSource::sequence(mixed));
        const Ledger clean = run_to_discharge(cell, PhotonSource::sequence(filtered));

        CHECK(noisy.final_state == clean.final_state);
        CHECK(noisy.outcome == clean.outcome);

        std::vector<const LedgerEntry*> noisy_emissions;
        for (const LedgerEntry& entry : noisy.entries) {
            if (entry.emitted) noisy_emissions.push_back(&entry);
        }
        REQUIRE(noisy_emissions.size() == clean.entries.size());
        for (std::size_t i = 0; i < clean.entries.size(); ++i) {
            CHECK(noisy_emissions[i]->n_before == clean.entries[i].n_before);
            CHECK(noisy_emissions[i]->n_after == clean.entries[i].n_after);
            CHECK(noisy_emissions[i]->field_work == clean.entries[i].field_work);
            CHECK(noisy_emissions[i]->cumulative_field_work ==
                  clean.entries[i].cumulative_field_work);
        }
    }
}

TEST_CASE("idealization guard compares the peak step energy to the work function") {
    // Peak per-step energy is the continuum estimate 2n h_q, so the ratio
    // for n = 1000 against a 4000 h_q work function is exactly 0.5.
    const GuardResult hot = idealization_guard(ElectronCount(1000), 4000.0, 0.01);
    CHECK_FALSE(hot.ok);
    CHECK(hot.ratio == 0.5);

    const GuardResult cold = idealization_guard(ElectronCount(1000), 2'000'000.0, 0.01);
    CHECK(cold.ok);
    CHECK(cold.ratio == 0.001);

    const GuardResult empty = idealization_guard(ElectronCount(0), 10.0, 0.01);
    CHECK(empty.ok);
    CHECK(empty.ratio == 0.0);

    // The boundary itself is not a violation.
    CHECK(idealization_guard(ElectronCount(5), 1000.0, 0.01).ok);

    CHECK_THROWS_AS((void)idealization_guard(ElectronCount(1), 0.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS((void)idealization_guard(ElectronCount(1), -5.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS((void)idealization_guard(ElectronCount(1), 10.0, 0.0), std::invalid_argument);
}

}  // TEST_SUITE
