#include "qcap/ledger_io.hpp"

#include <charconv>
#include <stdexcept>
#include <string_view>
#include <system_error>
#include <variant>

namespace qcap {
namespace {

[[noreturn]] void parse_fail(std::size_t line_number, const std::string& what) {
    throw std::runtime_error("parse_ledger_csv: line " + std::to_string(line_number) + ": " + what);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::int64_t parse_int(std::string_view field, std::size_t line_number, const char* column) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        parse_fail(line_number, std::string("bad integer in column ") + column);
    }
    return value;
}

double parse_double(std::string_view field, std::size_t line_number, const char* column) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        parse_fail(line_number, std::string("bad number in column ") + column);
    }
    return value;
}

bool parse_bool(std::string_view field, std::size_t line_number, const char* column) {
    if (field == "true") return true;
    if (field == "false") return false;
    parse_fail(line_number, std::string("bad boolean in column ") + column);
}

void append_entry_row(std::string& out, const LedgerEntry& entry) {
    out += std::to_string(entry.step);
    out += ',';
    out += std::to_string(entry.n_before);
    out += ',';
    out += std::to_string(entry.n_after);
    out += ',';
    out += entry.emitted ? "true" : "false";
    out += ',';
    out += format_photon_energy(entry.photon_energy_w);
    out += ',';
    out += std::to_string(entry.field_work.value());
    out += ',';
    out += format_double(entry.k0_residual_hq);
    out += ',';
    out += format_double(entry.ke_delivered_hq);
    out += ',';
    out += std::to_string(entry.cumulative_field_work.value());
    out += '\n';
}

nlohmann::ordered_json state_to_json(const StateSnapshot& snapshot) {
    nlohmann::ordered_json j;
    std::visit(
        [&j](const auto& state) {
            using State = std::decay_t<decltype(state)>;
            if constexpr (std::is_same_v<State, CellState>) {
                j["cathode_excess"] = state.cathode_excess.value();
            } else {
                j["n1"] = state.n1.value();
                j["n2"] = state.n2.value();
            }
            if (state.capacitance_farads) {
                j["capacitance_farads"] = *state.capacitance_farads;
            }
        },
        snapshot);
    return j;
}

std::optional<double> snapshot_capacitance(const StateSnapshot& snapshot) {
    return std::visit([](const auto& state) { return state.capacitance_farads; }, snapshot);
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: value does not fit the buffer");
    }
    return std::string(buffer, ptr);
}

std::string format_photon_energy(double value) {
    std::string text = format_double(value);
    if (text.find_first_of(".eE") == std::string::npos) {
        text += ".0";
    }
    return text;
}

std::string to_csv(const Ledger& ledger) {
    std::string out = ledger_csv_header;
    out += '\n';
    for (const LedgerEntry& entry : ledger.entries) {
        append_entry_row(out, entry);
    }
    return out;
}

std::string to_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = comparison_csv_header;
    out += '\n';
    for (const ComparisonRow& row : rows) {
        out += std::to_string(row.n);
        out += ',';
        out += std::to_string(row.exact_total.value());
        out += ',';
        out += std::to_string(row.paper_series_total.value());
        out += ',';
        out += std::to_string(row.qv_half.value());
        out += ',';
        out += std::to_string(row.abs_error.value());
        out += ',';
        out += format_double(row.rel_error);
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json to_json(const Ledger& ledger, const ConservationReport& report) {
    nlohmann::ordered_json j;
    j["scenario"] = to_string(ledger.scenario);
    j["outcome"] = to_string(ledger.outcome);
    j["initial_state"] = state_to_json(ledger.initial_state);
    j["final_state"] = state_to_json(ledger.final_state);
    j["entries"] = nlohmann::ordered_json::array();
    for (const LedgerEntry& entry : ledger.entries) {
        nlohmann::ordered_json e;
        e["step"] = entry.step;
        e["n_before"] = entry.n_before;
        e["n_after"] = entry.n_after;
        e["emitted"] = entry.emitted;
        e["photon_energy_W"] = entry.photon_energy_w;
        e["field_work_hq"] = entry.field_work.value();
        e["k0_residual_hq"] = entry.k0_residual_hq;
        e["ke_delivered_hq"] = entry.ke_delivered_hq;
        e["cumulative_field_work_hq"] = entry.cumulative_field_work.value();
        j["entries"].push_back(std::move(e));
    }
    j["audit"] = {
        {"scenario", to_string(report.scenario)},
        {"e_in_hq", report.e_in.value()},
        {"e_fin_hq", report.e_fin.value()},
        {"total_ke_hq", report.total_ke.value()},
        {"residual_k0_hq", report.residual_k0_hq},
        {"balanced", report.balanced},
    };
    return j;
}

nlohmann::ordered_json to_json(const std::vector<ComparisonRow>& rows) {
    nlohmann::ordered_json j;
    j["rows"] = nlohmann::ordered_json::array();
    for (const ComparisonRow& row : rows) {
        nlohmann::ordered_json r;
        r["n"] = row.n;
        r["exact_total_hq"] = row.exact_total.value();
        r["paper_series_total_hq"] = row.paper_series_total.value();
        r["qv_half_hq"] = row.qv_half.value();
        r["abs_error_hq"] = row.abs_error.value();
        r["rel_error"] = row.rel_error;
        j["rows"].push_back(std::move(r));
    }
    return j;
}

Ledger parse_ledger_csv(const std::string& csv, Scenario scenario) {
    std::vector<std::string_view> lines;
    {
        std::string_view rest = csv;
        while (!rest.empty()) {
            const std::size_t nl = rest.find('\n');
            if (nl == std::string_view::npos) {
                lines.push_back(rest);
                break;
            }
            lines.push_back(rest.substr(0, nl));
            rest.remove_prefix(nl + 1);
        }
    }
    if (lines.empty() || lines.front() != ledger_csv_header) {
        parse_fail(1, "missing or unexpected header");
    }

    Ledger ledger{};
    ledger.scenario = scenario;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_number = i + 1;
        if (lines[i].empty()) {
            parse_fail(line_number, "empty row");
        }
        const auto fields = split_fields(lines[i]);
        if (fields.size() != 9) {
            parse_fail(line_number, "expected 9 columns, got " + std::to_string(fields.size()));
        }
        LedgerEntry entry{};
        entry.step = parse_int(fields[0], line_number, "step");
        entry.n_before = parse_int(fields[1], line_number, "n_before");
        entry.n_after = parse_int(fields[2], line_number, "n_after");
        entry.emitted = parse_bool(fields[3], line_number, "emitted");
        entry.photon_energy_w = parse_double(fields[4], line_number, "photon_energy_W");
        entry.field_work = HalfQuantum(parse_int(fields[5], line_number, "field_work_hq"));
        entry.k0_residual_hq = parse_double(fields[6], line_number, "k0_residual_hq");
        entry.ke_delivered_hq = parse_double(fields[7], line_number, "ke_delivered_hq");
        entry.cumulative_field_work =
            HalfQuantum(parse_int(fields[8], line_number, "cumulative_field_work_hq"));
        entry.work_function_cost_w = entry.emitted ? 1.0 : 0.0;
        ledger.entries.push_back(entry);
    }

    if (scenario == Scenario::single) {
        const std::int64_t initial =
            ledger.entries.empty() ? 0 : ledger.entries.front().n_before;
        const std::int64_t final_count =
            ledger.entries.empty() ? initial : ledger.entries.back().n_after;
        ledger.initial_state = CellState{ElectronCount(initial)};
        ledger.final_state = CellState{ElectronCount(final_count)};
        ledger.outcome =
            final_count == 0 ? RunOutcome::discharged : RunOutcome::source_exhausted;
        return ledger;
    }

    // Twin rows only record the donor plate, so replay from the canonical
    // start (everything on the first capacitor) to recover both plates.
    std::int64_t n1 = ledger.entries.empty() ? 0 : ledger.entries.front().n_before;
    std::int64_t n2 = 0;
    ledger.initial_state = TwinState{ElectronCount(n1), ElectronCount(n2)};
    for (std::size_t i = 0; i < ledger.entries.size(); ++i) {
        const LedgerEntry& entry = ledger.entries[i];
        if (!entry.emitted) {
            continue;
        }
        const std::size_t line_number = i + 2;
        if (entry.n_before == n1 && n1 - n2 >= 2) {
            --n1;
            ++n2;
        } else if (entry.n_before == n2 && n2 - n1 >= 2) {
            --n2;
            ++n1;
        } else {
            parse_fail(line_number, "row does not describe a downhill transfer from (" +
                                        std::to_string(n1) + ", " + std::to_string(n2) + ")");
        }
    }
    ledger.final_state = TwinState{ElectronCount(n1), ElectronCount(n2)};
    ledger.outcome = RunOutcome::equilibrium;
    return ledger;
}

std::string summary_text(const Ledger& ledger, const ConservationReport& report) {
    std::string out;
    out += to_string(ledger.scenario);
    out += " run: ";
    out += to_string(ledger.outcome);
    out += '\n';

    out += "E_in = " + std::to_string(report.e_in.value()) +
           " h_q, E_fin = " + std::to_string(report.e_fin.value()) +
           " h_q, total_ke = " + std::to_string(report.total_ke.value()) + " h_q";
    if (report.residual_k0_hq != 0.0) {
        out += ", residual_k0 = " + format_double(report.residual_k0_hq) + " h_q";
    }
    out += '\n';

    if (ledger.scenario == Scenario::twin && report.e_in.value() > 0) {
        const HalfQuantum loss = report.e_in - report.e_fin;
        const double percent = 100.0 * static_cast<double>(loss.value()) /
                               static_cast<double>(report.e_in.value());
        out += "loss = " + std::to_string(loss.value()) + " h_q = " + format_double(percent) +
               "% of E_in\n";
    }

    if (report.balanced) {
        out += "audit: balanced\n";
    } else {
        const HalfQuantum gap = report.e_in - report.e_fin - report.total_ke;
        out += "audit: IMBALANCED (E_in - E_fin - total_ke = " + std::to_string(gap.value()) +
               " h_q)\n";
    }

    if (const auto capacitance = snapshot_capacitance(ledger.initial_state)) {
        const double hq_joules = half_quantum_joules(*capacitance);
        out += "h_q = " + format_double(hq_joules) + " J at C = " + format_double(*capacitance) +
               " F: E_in = " + format_double(to_joules(report.e_in, *capacitance)) +
               " J, total_ke = " + format_double(to_joules(report.total_ke, *capacitance)) + " J\n";
    }
    return out;
}

}  // namespace qcap
