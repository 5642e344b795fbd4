#include "qcap/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <utility>

#include "CLI11.hpp"
#include "qcap/analysis.hpp"
#include "qcap/ledger_io.hpp"
#include "qcap/photocell.hpp"
#include "qcap/quantized.hpp"
#include "qcap/twin.hpp"

namespace qcap {
namespace {

struct RawOptions {
    std::int64_t n = 0;
    std::string format = "csv";
    std::string out_path{};
    double photon_energy = 1.0;
    double work_function = 0.0;
    double capacitance = 0.0;
    double epsilon = 0.01;
    std::vector<std::int64_t> values{};
    std::string config_path{};
};

// Attach the option set shared by the run subcommands; sweep declares its
// own narrower set. Presence is detected through the returned App after
// parsing, so defaults here never leak into the config unrequested.
void add_run_options(CLI::App& cmd, RawOptions& raw) {
    cmd.add_option("--n", raw.n, "Initial number of excess electrons")
        ->required()
        ->check(CLI::Range(std::int64_t{0}, ElectronCount::max_count));
    cmd.add_option("--format", raw.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("--out", raw.out_path, "Write output to this file instead of standard output");
    cmd.add_option("--photon-energy", raw.photon_energy,
                   "Fixed photon energy in work-function units (default: ideal source at 1.0)")
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--work-function", raw.work_function,
                   "Work function in half-quantum units (enables the idealization guard "
                   "and photon-surplus accounting)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--capacitance", raw.capacitance, "Capacitance in farads, for SI reporting")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--epsilon", raw.epsilon, "Idealization guard threshold")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--config", raw.config_path,
                   "Read option defaults from a flat key=value file; explicit flags win");
}

std::string trimmed(std::string text) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!text.empty() && is_space(text.front())) text.erase(text.begin());
    while (!text.empty() && is_space(text.back())) text.pop_back();
    return text;
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    for (const std::string& arg : args) {
        if (arg == flag || arg.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
}

/// Expand `--config FILE` into the flags the file provides. Keys mirror the
/// long flag names without the dashes; a key the command line already sets
/// is skipped, so explicit flags always win. (The CLI11 config machinery
/// only reads files for the root command, not per subcommand, so the file
/// is applied here before parsing.)
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            break;
        }
    }
    if (!path) {
        return args;
    }

    std::ifstream file(*path);
    if (!file) {
        throw ConfigError("config: cannot read " + *path, 1);
    }
    std::string line;
    int line_number = 0;
    while (std::getline(file, line)) {
        ++line_number;
        line = trimmed(line);
        if (line.empty() || line.front() == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(line_number) +
                                  ": expected key=value",
                              1);
        }
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config: line " + std::to_string(line_number) + ": empty key", 1);
        }
        if (key == "config") {
            throw ConfigError("config: files cannot chain other config files", 1);
        }
        if (has_flag(args, key)) continue;
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

OutputFormat parse_format(const std::string& format) {
    return format == "json" ? OutputFormat::json : OutputFormat::csv;
}

SimConfig build_run_config(RunKind kind, const CLI::App& cmd, const RawOptions& raw) {
    SimConfig config{};
    config.scenario = kind;
    config.n = raw.n;
    config.output_format = parse_format(raw.format);
    if (cmd.count("--out") > 0) config.output_path = raw.out_path;
    if (cmd.count("--capacitance") > 0) config.capacitance_farads = raw.capacitance;
    if (cmd.count("--work-function") > 0) config.work_function_hq = raw.work_function;
    config.epsilon_ideal = raw.epsilon;

    if (cmd.count("--photon-energy") > 0) {
        config.photon_mode = PhotonMode::fixed;
        config.photon_energy_w = raw.photon_energy;
        if (kind == RunKind::twin && raw.photon_energy != 1.0) {
            throw ConfigError(
                "photon_energy: twin runs support only the ideal value 1.0", 1);
        }
        if (raw.photon_energy < 1.0) {
            throw ConfigError(
                "photon_energy: a fixed sub-threshold source can never discharge the cell", 1);
        }
        if (!config.work_function_hq) {
            throw ConfigError(
                "work_function: required with --photon-energy to convert the photon surplus "
                "into half-quanta",
                1);
        }
    }
    return config;
}

void validate(const SimConfig& config) {
    if (config.scenario == RunKind::sweep && config.sweep_values.empty()) {
        throw ConfigError("values: sweep requires a non-empty list of counts", 1);
    }
    if (config.photon_mode == PhotonMode::fixed && !config.work_function_hq) {
        throw ConfigError("work_function: required when the photon energy is fixed", 1);
    }
}

/// Emit `content` to the configured destination. A failed write to a file
/// removes the partial file before reporting.
int emit(const SimConfig& config, const std::string& content, std::ostream& out,
         std::ostream& err) {
    if (!config.output_path) {
        out << content;
        return out.good() ? 0 : 1;
    }
    const std::filesystem::path path = *config.output_path;
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open " << path.string() << " for writing\n";
        return 1;
    }
    file << content;
    file.close();
    if (!file) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        err << "error: failed while writing " << path.string() << ", partial file removed\n";
        return 1;
    }
    return 0;
}

int run_sweep(const SimConfig& config, std::ostream& out, std::ostream& err) {
    std::vector<ElectronCount> counts;
    counts.reserve(config.sweep_values.size());
    for (const std::int64_t value : config.sweep_values) {
        counts.emplace_back(value);
    }
    const std::vector<ComparisonRow> rows = sweep_comparison(counts);
    const std::string content = config.output_format == OutputFormat::csv
                                    ? to_csv(rows)
                                    : to_json(rows).dump(2) + "\n";
    if (const int code = emit(config, content, out, err); code != 0) {
        return code;
    }
    err << "sweep over " << rows.size() << " counts, largest relative error = "
        << format_double(rows.empty() ? 0.0 : rows.front().rel_error) << "\n";
    return 0;
}

int run_scenario(const SimConfig& config, std::ostream& out, std::ostream& err) {
    Ledger ledger;
    if (config.scenario == RunKind::single) {
        const CellState initial{ElectronCount(config.n), config.capacitance_farads};
        PhotonSource source = config.photon_mode == PhotonMode::ideal
                                  ? PhotonSource::ideal()
                                  : PhotonSource::fixed(Photon(config.photon_energy_w));
        ledger = run_to_discharge(initial, std::move(source),
                                  config.work_function_hq.value_or(0.0));
    } else {
        const TwinState initial{ElectronCount(config.n), ElectronCount(0),
                                config.capacitance_farads};
        ledger = run_pair_to_equilibrium(initial);
    }

    const ConservationReport report = audit(ledger);

    if (config.work_function_hq) {
        const GuardResult guard = idealization_guard(
            ElectronCount(config.n), *config.work_function_hq, config.epsilon_ideal);
        if (!guard.ok) {
            err << "idealization warning: peak step energy / work function = "
                << format_double(guard.ratio) << " exceeds epsilon = "
                << format_double(config.epsilon_ideal) << "\n";
        }
    }

    const std::string content = config.output_format == OutputFormat::csv
                                    ? to_csv(ledger)
                                    : to_json(ledger, report).dump(2) + "\n";
    if (const int code = emit(config, content, out, err); code != 0) {
        return code;
    }
    err << summary_text(ledger, report);
    return report.balanced ? 0 : 2;
}

}  // namespace

SimConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"Quantum-discrete capacitor discharge simulator"};
    app.require_subcommand(1);

    RawOptions single_raw, twin_raw, sweep_raw;
    CLI::App* single_cmd = app.add_subcommand(
        "single", "Discharge one photo-cell capacitor and ledger every transfer");
    add_run_options(*single_cmd, single_raw);
    CLI::App* twin_cmd = app.add_subcommand(
        "twin", "Equalize a charged/uncharged capacitor pair one electron at a time");
    add_run_options(*twin_cmd, twin_raw);
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Tabulate exact vs continuum discharge totals over several counts");
    sweep_cmd->add_option("--values", sweep_raw.values, "Comma-separated initial counts")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(std::int64_t{1}, ElectronCount::max_count));
    sweep_cmd->add_option("--format", sweep_raw.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", sweep_raw.out_path,
                          "Write output to this file instead of standard output");
    sweep_cmd->add_option("--config", sweep_raw.config_path,
                          "Read option defaults from a flat key=value file; explicit flags win");

    const std::vector<std::string> expanded = apply_config_file(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        throw ConfigError(app.help(), e.get_exit_code() == 0 ? 0 : 1);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(std::string(e.get_name()) + ": " + e.what(), 1);
    }

    if (single_cmd->parsed()) {
        return build_run_config(RunKind::single, *single_cmd, single_raw);
    }
    if (twin_cmd->parsed()) {
        return build_run_config(RunKind::twin, *twin_cmd, twin_raw);
    }
    SimConfig config{};
    config.scenario = RunKind::sweep;
    config.output_format = parse_format(sweep_raw.format);
    if (sweep_cmd->count("--out") > 0) config.output_path = sweep_raw.out_path;
    config.sweep_values = sweep_raw.values;
    validate(config);
    return config;
}

int run_cli(const SimConfig& config, std::ostream& out, std::ostream& err) {
    validate(config);
    if (config.scenario == RunKind::sweep) {
        return run_sweep(config, out, err);
    }
    return run_scenario(config, out, err);
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    SimConfig config;
    try {
        config = parse_config(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const ConfigError& e) {
        (e.exit_code() == 0 ? out : err) << e.what() << (e.exit_code() == 0 ? "" : "\n");
        return e.exit_code();
    }
    try {
        return run_cli(config, out, err);
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return e.exit_code();
    } catch (const LedgerError& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qcap
