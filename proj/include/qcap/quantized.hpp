#pragma once

// Charge- and energy-quantized domain types for capacitor discharge runs.
//
// The whole library accounts energy in integer multiples of the half-quantum
//   h_q = e*v/2 = e^2/(2C),
// where v = e/C is the voltage change caused by one elementary charge.
// With n excess electrons on the cathode the stored field energy is exactly
// n^2 h_q, and moving one electron across releases exactly (2n-1) h_q, so
// every conservation statement in this library is an integer identity with
// no tolerance. Floating point appears only at the reporting boundary
// (SI joules, photon residual energy).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qcap {

/// Defined SI constants used for reporting in joules/volts.
struct PhysicalConstants {
    double elementary_charge = 1.602176634e-19;  // coulombs, exact by definition
};

inline constexpr PhysicalConstants si_constants{};

/// Count of excess elementary charges on a plate. Never negative.
///
/// The upper bound keeps every derived energy used here (n^2, n(n+1),
/// n1^2 + n2^2) inside signed 64-bit range, so half-quantum arithmetic
/// cannot overflow.
class ElectronCount {
public:
    static constexpr std::int64_t max_count = 2'147'483'647;

    constexpr ElectronCount() = default;

    constexpr explicit ElectronCount(std::int64_t count) : count_(count) {
        if (count < 0) {
            throw std::invalid_argument("ElectronCount: count must be non-negative, got " +
                                        std::to_string(count));
        }
        if (count > max_count) {
            throw std::invalid_argument("ElectronCount: count " + std::to_string(count) +
                                        " exceeds supported maximum " + std::to_string(max_count));
        }
    }

    [[nodiscard]] constexpr std::int64_t value() const { return count_; }

    /// Count after one electron leaves this plate. Rejects an empty plate.
    [[nodiscard]] constexpr ElectronCount decremented() const {
        if (count_ == 0) {
            throw std::invalid_argument("ElectronCount: cannot remove an electron from an empty plate");
        }
        return ElectronCount(count_ - 1);
    }

    [[nodiscard]] constexpr ElectronCount incremented() const { return ElectronCount(count_ + 1); }

    friend constexpr auto operator<=>(ElectronCount, ElectronCount) = default;

private:
    std::int64_t count_ = 0;
};

/// Signed energy in half-quantum units. All arithmetic is exact.
class HalfQuantum {
public:
    constexpr HalfQuantum() = default;
    constexpr explicit HalfQuantum(std::int64_t value) : value_(value) {}

    [[nodiscard]] constexpr std::int64_t value() const { return value_; }

    friend constexpr HalfQuantum operator+(HalfQuantum a, HalfQuantum b) {
        return HalfQuantum(a.value_ + b.value_);
    }
    friend constexpr HalfQuantum operator-(HalfQuantum a, HalfQuantum b) {
        return HalfQuantum(a.value_ - b.value_);
    }
    constexpr HalfQuantum operator-() const { return HalfQuantum(-value_); }
    constexpr HalfQuantum& operator+=(HalfQuantum other) {
        value_ += other.value_;
        return *this;
    }
    constexpr HalfQuantum& operator-=(HalfQuantum other) {
        value_ -= other.value_;
        return *this;
    }

    friend constexpr auto operator<=>(HalfQuantum, HalfQuantum) = default;

private:
    std::int64_t value_ = 0;
};

inline namespace literals {
constexpr HalfQuantum operator""_hq(unsigned long long v) {
    return HalfQuantum(static_cast<std::int64_t>(v));
}
}  // namespace literals

/// Voltage step per elementary charge: v = e/C in SI mode, 1 in reduced units.
class ElementaryVoltage {
public:
    constexpr explicit ElementaryVoltage(double volts) : volts_(volts) {
        if (!(volts > 0.0)) {
            throw std::invalid_argument("ElementaryVoltage: must be positive");
        }
    }

    [[nodiscard]] static constexpr ElementaryVoltage reduced() { return ElementaryVoltage(1.0); }

    [[nodiscard]] static constexpr ElementaryVoltage from_capacitance(
        double capacitance_farads, PhysicalConstants constants = si_constants) {
        if (!(capacitance_farads > 0.0)) {
            throw std::invalid_argument("ElementaryVoltage: capacitance must be positive");
        }
        return ElementaryVoltage(constants.elementary_charge / capacitance_farads);
    }

    [[nodiscard]] constexpr double volts() const { return volts_; }

    friend constexpr auto operator<=>(ElementaryVoltage, ElementaryVoltage) = default;

private:
    double volts_;
};

/// One photo-cell capacitor: n excess electrons on the cathode, the same
/// number missing from the anode. Capacitance is carried only for SI
/// reporting; the energy ledger itself is unit-free.
struct CellState {
    ElectronCount cathode_excess{};
    std::optional<double> capacitance_farads{};

    friend constexpr bool operator==(const CellState&, const CellState&) = default;
};

/// Two identical capacitors exchanging charge one electron at a time.
struct TwinState {
    ElectronCount n1{};  // plate excess of the first capacitor
    ElectronCount n2{};  // plate excess of the second capacitor
    std::optional<double> capacitance_farads{};

    friend constexpr bool operator==(const TwinState&, const TwinState&) = default;
};

/// Stored field energy of a cell holding n excess electrons: n^2 h_q.
[[nodiscard]] constexpr HalfQuantum field_energy(ElectronCount n) {
    return HalfQuantum(n.value() * n.value());
}

[[nodiscard]] constexpr HalfQuantum field_energy(const CellState& state) {
    return field_energy(state.cathode_excess);
}

/// Combined field energy of the capacitor pair: (n1^2 + n2^2) h_q.
[[nodiscard]] constexpr HalfQuantum field_energy(const TwinState& state) {
    return field_energy(state.n1) + field_energy(state.n2);
}

/// Terminal voltage in volts: V = n*v.
[[nodiscard]] constexpr double voltage(ElectronCount n, ElementaryVoltage v) {
    return static_cast<double>(n.value()) * v.volts();
}

/// Exact work done by the field on the electron that takes the plate from
/// n to n-1 excess charges: n^2 - (n-1)^2 = (2n - 1) h_q.
[[nodiscard]] constexpr HalfQuantum transfer_work_exact(ElectronCount n) {
    if (n.value() == 0) {
        throw std::invalid_argument("transfer_work_exact: no electron to transfer from a discharged cell");
    }
    return HalfQuantum(2 * n.value() - 1);
}

/// Continuum approximation of the same per-step work: eV = 2n h_q.
/// Overshoots the exact value by exactly 1 h_q for every n; the elementary
/// voltage cancels because the half-quantum unit itself scales with it.
[[nodiscard]] constexpr HalfQuantum transfer_work_paper_approx(ElectronCount n) {
    if (n.value() == 0) {
        throw std::invalid_argument("transfer_work_paper_approx: no electron to transfer from a discharged cell");
    }
    return HalfQuantum(2 * n.value());
}

/// Total work released by discharging from n excess electrons to zero,
/// in closed form: sum of (2k - 1) for k = n..1, which telescopes to n^2 h_q.
/// Equal to field_energy(n) as an exact integer; loss and stored energy
/// are the same number.
[[nodiscard]] constexpr HalfQuantum total_work_exact(ElectronCount n) {
    return HalfQuantum(n.value() * n.value());
}

/// The continuum series for the same total: sum of 2k h_q for k = n..1,
/// i.e. n(n+1) h_q. Overshoots the exact total by exactly n h_q (relative
/// error 1/n), one surplus half-quantum per step.
[[nodiscard]] constexpr HalfQuantum total_work_paper_series(ElectronCount n) {
    return HalfQuantum(n.value() * (n.value() + 1));
}

/// SI value of one half-quantum: e^2/(2C) joules.
[[nodiscard]] constexpr double half_quantum_joules(double capacitance_farads,
                                                   PhysicalConstants constants = si_constants) {
    if (!(capacitance_farads > 0.0)) {
        throw std::invalid_argument("half_quantum_joules: capacitance must be positive");
    }
    const double e = constants.elementary_charge;
    return e * e / (2.0 * capacitance_farads);
}

/// Pure scaling into joules, used only at the reporting boundary.
[[nodiscard]] constexpr double to_joules(HalfQuantum energy, double capacitance_farads,
                                         PhysicalConstants constants = si_constants) {
    return static_cast<double>(energy.value()) * half_quantum_joules(capacitance_farads, constants);
}

}  // namespace qcap
