#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "qcap/quantized.hpp"

using namespace qcap;

TEST_SUITE("quantized") {

TEST_CASE("electron count validates its range") {
    CHECK(ElectronCount(0).value() == 0);
    CHECK(ElectronCount(42).value() == 42);
    CHECK(ElectronCount(ElectronCount::max_count).value() == ElectronCount::max_count);
    CHECK_THROWS_AS((void)ElectronCount(-1), std::invalid_argument);
    CHECK_THROWS_AS((void)ElectronCount(ElectronCount::max_count + 1), std::invalid_argument);
    CHECK_THROWS_AS((void)ElectronCount(0).decremented(), std::invalid_argument);
    CHECK(ElectronCount(3).decremented().value() == 2);
    CHECK(ElectronCount(3).incremented().value() == 4);
    CHECK(ElectronCount(3) < ElectronCount(4));
}

TEST_CASE("half-quantum arithmetic is plain integer arithmetic") {
    using namespace qcap::literals;
    CHECK((3_hq + 4_hq).value() == 7);
    CHECK((3_hq - 4_hq).value() == -1);
    CHECK((-(3_hq)).value() == -3);
    HalfQuantum h(10);
    h += HalfQuantum(5);
    h -= HalfQuantum(3);
    CHECK(h == 12_hq);
}

TEST_CASE("elementary voltage comes from the capacitance") {
    CHECK(ElementaryVoltage::reduced().volts() == 1.0);
    const double c = 1e-12;
    const ElementaryVoltage v = ElementaryVoltage::from_capacitance(c);
    CHECK(v.volts() == doctest::Approx(1.602176634e-7).epsilon(1e-12));
    CHECK_THROWS_AS((void)ElementaryVoltage(0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)ElementaryVoltage(-2.0), std::invalid_argument);
    CHECK_THROWS_AS((void)ElementaryVoltage::from_capacitance(0.0), std::invalid_argument);
}

TEST_CASE("field energy is the square of the excess count") {
    CHECK(field_energy(ElectronCount(0)).value() == 0);
    CHECK(field_energy(ElectronCount(1)).value() == 1);
    CHECK(field_energy(ElectronCount(5)).value() == 25);
    CHECK(field_energy(ElectronCount(1000)).value() == 1'000'000);

    // Discreteness signature: the second difference of n^2 is the constant 2.
    for (std::int64_t n = 1; n <= 1000; ++n) {
        const std::int64_t second_difference = field_energy(ElectronCount(n + 1)).value() -
                                               2 * field_energy(ElectronCount(n)).value() +
                                               field_energy(ElectronCount(n - 1)).value();
        CHECK(second_difference == 2);
    }
}

TEST_CASE("field energy overloads cover both cell layouts") {
    CHECK(field_energy(CellState{ElectronCount(7)}).value() == 49);
    CHECK(field_energy(TwinState{ElectronCount(3), ElectronCount(4)}).value() == 25);
    CHECK(field_energy(TwinState{ElectronCount(0), ElectronCount(0)}).value() == 0);
}

TEST_CASE("terminal voltage scales linearly with the charge") {
    CHECK(voltage(ElectronCount(0), ElementaryVoltage::reduced()) == 0.0);
    CHECK(voltage(ElectronCount(7), ElementaryVoltage::reduced()) == 7.0);
    const ElementaryVoltage v = ElementaryVoltage::from_capacitance(1e-12);
    CHECK(voltage(ElectronCount(10), v) == doctest::Approx(10 * v.volts()));
}

TEST_CASE("per-step work equals the field-energy drop") {
    CHECK(transfer_work_exact(ElectronCount(1)).value() == 1);
    CHECK(transfer_work_exact(ElectronCount(5)).value() == 9);
    CHECK_THROWS_AS((void)transfer_work_exact(ElectronCount(0)), std::invalid_argument);

    for (std::int64_t n : {1LL, 2LL, 3LL, 17LL, 1000LL, 1'000'000LL}) {
        const std::int64_t drop = field_energy(ElectronCount(n)).value() -
                                  field_energy(ElectronCount(n - 1)).value();
        CHECK(transfer_work_exact(ElectronCount(n)).value() == drop);
    }
}

TEST_CASE("continuum per-step work overshoots by exactly one half-quantum") {
    CHECK(transfer_work_paper_approx(ElectronCount(5)).value() == 10);
    CHECK_THROWS_AS((void)transfer_work_paper_approx(ElectronCount(0)), std::invalid_argument);

    for (std::int64_t n : {1LL, 2LL, 10LL, 10'000LL, 1'000'000LL}) {
        const HalfQuantum exact = transfer_work_exact(ElectronCount(n));
        const HalfQuantum approx = transfer_work_paper_approx(ElectronCount(n));
        CHECK((approx - exact).value() == 1);
        const double rel = static_cast<double>((approx - exact).value()) /
                           static_cast<double>(exact.value());
        CHECK(rel == doctest::Approx(1.0 / static_cast<double>(2 * n - 1)).epsilon(1e-12));
    }
}

TEST_CASE("closed-form totals match the step-by-step sums") {
    // Brute-force oracle: accumulate the per-step works one at a time and
    // compare every prefix against the closed forms.
    std::int64_t exact_sum = 0;
    std::int64_t approx_sum = 0;
    for (std::int64_t n = 1; n <= 1'000'000; ++n) {
        exact_sum += transfer_work_exact(ElectronCount(n)).value();
        approx_sum += transfer_work_paper_approx(ElectronCount(n)).value();
        // Discharging from n spends the same steps in the opposite order,
        // so the prefix sum over 1..n is the discharge total from n.
        if (n <= 1000 || n % 9973 == 0 || n == 1'000'000) {
            CHECK(total_work_exact(ElectronCount(n)).value() == exact_sum);
            CHECK(total_work_paper_series(ElectronCount(n)).value() == approx_sum);
        }
    }
    CHECK(total_work_exact(ElectronCount(1'000'000)).value() == 1'000'000'000'000);
    CHECK(total_work_paper_series(ElectronCount(1'000'000)).value() == 1'000'001'000'000);
}

TEST_CASE("series total exceeds the exact total by one half-quantum per step") {
    for (std::int64_t n : {1LL, 10LL, 100LL, 1000LL, 10'000LL, 1'000'000LL}) {
        const HalfQuantum gap =
            total_work_paper_series(ElectronCount(n)) - total_work_exact(ElectronCount(n));
        CHECK(gap.value() == n);
        const double rel = static_cast<double>(gap.value()) /
                           static_cast<double>(total_work_exact(ElectronCount(n)).value());
        CHECK(rel == 1.0 / static_cast<double>(n));
    }
    CHECK(total_work_exact(ElectronCount(0)).value() == 0);
    CHECK(total_work_paper_series(ElectronCount(0)).value() == 0);
}

TEST_CASE("si reporting is consistent with the closed-form joule values") {
    const double c = 3.3e-9;
    const double e = si_constants.elementary_charge;
    CHECK(half_quantum_joules(c) == doctest::Approx(e * e / (2.0 * c)).epsilon(1e-15));
    CHECK_THROWS_AS((void)half_quantum_joules(0.0), std::invalid_argument);

    // Stored energy in joules two ways: ledger units scaled out, and CV^2/2
    // with V = n e / C.
    for (std::int64_t n : {1LL, 5LL, 1000LL, 1'000'000LL}) {
        const double from_ledger = to_joules(field_energy(ElectronCount(n)), c);
        const double volts = voltage(ElectronCount(n), ElementaryVoltage::from_capacitance(c));
        const double from_cv = 0.5 * c * volts * volts;
        CHECK(from_ledger == doctest::Approx(from_cv).epsilon(1e-12));
    }
}

TEST_CASE("cell states compare by value") {
    CHECK(CellState{ElectronCount(3)} == CellState{ElectronCount(3)});
    CHECK(CellState{ElectronCount(3)} != CellState{ElectronCount(4)});
    CHECK(CellState{ElectronCount(3), 1e-9} != CellState{ElectronCount(3)});
    CHECK(TwinState{ElectronCount(1), ElectronCount(2)} ==
          TwinState{ElectronCount(1), ElectronCount(2)});
    CHECK(TwinState{ElectronCount(1), ElectronCount(2)} !=
          TwinState{ElectronCount(2), ElectronCount(1)});
}

}  // TEST_SUITE
