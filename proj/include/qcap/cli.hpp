#pragma once

// Command-line front end: argument/config-file parsing, run execution,
// output emission, exit-code policy.
//
// Exit codes: 0 run completed and the conservation audit balanced,
// 1 usage or I/O error, 2 internal consistency failure (audit imbalance).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcap {

enum class RunKind { single, twin, sweep };
enum class PhotonMode { ideal, fixed };
enum class OutputFormat { csv, json };

struct SimConfig {
    RunKind scenario = RunKind::single;
    std::int64_t n = 0;                          // initial charge (single/twin)
    std::optional<double> capacitance_farads{};  // enables SI lines in the summary
    PhotonMode photon_mode = PhotonMode::ideal;
    double photon_energy_w = 1.0;                // fixed-mode photon energy
    double epsilon_ideal = 0.01;                 // idealization guard threshold
    std::optional<double> work_function_hq{};    // guard input and surplus conversion
    OutputFormat output_format = OutputFormat::csv;
    std::optional<std::string> output_path{};    // default: standard output
    std::vector<std::int64_t> sweep_values{};    // sweep scenario only
};

/// Thrown for anything that should terminate the process with a one-line
/// diagnostic: bad flags, violated config invariants, requested help text
/// (exit code 0).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int exit_code)
        : std::runtime_error(message), exit_code_(exit_code) {}

    [[nodiscard]] int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

/// Parse command-line arguments (without the program name) into a fully
/// validated SimConfig. Each subcommand accepts --config FILE with flat
/// key=value lines mirroring the flag names; explicit flags win over the
/// file. Throws ConfigError naming the offending key.
[[nodiscard]] SimConfig parse_config(const std::vector<std::string>& args);

/// Execute a validated config: run the scenario, emit the ledger or sweep
/// table to the configured destination (or `out`), print the audit summary
/// and any idealization warning to `err`. Returns the exit code.
[[nodiscard]] int run_cli(const SimConfig& config, std::ostream& out, std::ostream& err);

/// main() glue: parse, run, map errors to exit codes and one-line
/// diagnostics on `err`.
[[nodiscard]] int run_main(int argc, const char* const* argv, std::ostream& out,
                           std::ostream& err);

}  // namespace qcap
