#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "agt/compiler.hpp"
#include "agt/dynamics.hpp"
#include "agt/gadgets.hpp"
#include "agt/protocols.hpp"
#include "agt/spectral.hpp"

namespace agt::io {

using nlohmann::json;

inline std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

/// Minimal RFC-4180-style CSV assembly: a header row plus value rows,
/// doubles rendered with %.12g.
class CsvWriter {
   public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(const std::vector<std::string>& fields) {
        if (fields.size() != header_.size()) {
            throw StructuralError("CSV row width does not match the header");
        }
        rows_.push_back(fields);
    }

    std::string str() const {
        std::string out;
        append_line(out, header_);
        for (const auto& row : rows_) append_line(out, row);
        return out;
    }

   private:
    static void append_line(std::string& out, const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(fields[i]);
        }
        out += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline void write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << content;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

inline json to_json(const PauliSum& sum) {
    json terms = json::array();
    for (const auto& t : sum.terms) terms.push_back(json::array({t.letters, t.coefficient}));
    return terms;
}

inline PauliSum pauli_sum_from_json(const json& terms, int n_qubits) {
    PauliSum sum(n_qubits);
    for (const auto& entry : terms) {
        sum.add(entry.at(0).get<std::string>(), entry.at(1).get<double>());
    }
    return sum;
}

inline json to_json(const StateVector& state) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < state.dim(); ++i) {
        amps.push_back(json::array({state.amplitudes[i].real(), state.amplitudes[i].imag()}));
    }
    return json{{"n_qubits", state.n_qubits}, {"amplitudes", amps}};
}

inline json to_json(const GateSpec& gate) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < gate.matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < gate.matrix.cols(); ++c) {
            row.push_back(json::array({gate.matrix(r, c).real(), gate.matrix(r, c).imag()}));
        }
        rows.push_back(row);
    }
    return json{{"name", gate.name}, {"targets", gate.targets}, {"matrix", rows}};
}

inline GateSpec gate_from_json(const json& j) {
    const auto& rows = j.at("matrix");
    Eigen::MatrixXcd m(rows.size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows.size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Complex(rows[r][c][0].get<double>(), rows[r][c][1].get<double>());
        }
    }
    return GateSpec::custom(j.at("name").get<std::string>(), std::move(m),
                            j.at("targets").get<std::vector<int>>());
}

inline json to_json(const RunReport& report) {
    return json{{"protocol", report.protocol},
                {"config", json{{"T", report.config.total_time},
                                {"steps", report.config.steps},
                                {"method", report.config.method},
                                {"omega", report.omega},
                                {"schedule", report.schedule_tag},
                                {"input_state", report.input_label}}},
                {"fidelity", report.fidelity},
                {"leakage", report.leakage},
                {"min_gap", json{{"s", report.min_gap_s}, {"gap", report.min_gap}}},
                {"final_state", to_json(report.final_state)}};
}

inline std::string gap_profile_csv(const GapProfile& profile) {
    CsvWriter csv({"s", "gap", "ground_energy", "ground_degeneracy"});
    bool min_emitted = false;
    auto min_row = [&profile]() {
        return std::vector<std::string>{format_double(profile.s_min),
                                        format_double(profile.gap_min), "", ""};
    };
    for (const auto& sample : profile.samples) {
        if (!min_emitted && sample.s > profile.s_min &&
            std::abs(sample.s - profile.s_min) > 1e-12) {
            csv.add_row(min_row());
            min_emitted = true;
        }
        bool is_min = std::abs(sample.s - profile.s_min) <= 1e-12;
        csv.add_row({format_double(sample.s),
                     format_double(is_min ? profile.gap_min : sample.gap),
                     format_double(sample.ground_energy),
                     std::to_string(sample.ground_degeneracy)});
        if (is_min) min_emitted = true;
    }
    if (!min_emitted) csv.add_row(min_row());
    return csv.str();
}

inline json to_json(const NoGoReport& report) {
    return json{{"max_offdiagonal", report.max_offdiagonal},
                {"swap_fidelity", report.swap_fidelity},
                {"grid_points", report.grid_points},
                {"T", report.total_time},
                {"obstruction_confirmed", report.obstruction_confirmed}};
}

inline json to_json(const FrameCheckReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        entries.push_back(json{{"check", e.name}, {"pass", e.pass}, {"residual", e.residual}});
    }
    return json{{"all_pass", report.all_pass}, {"checks", entries}};
}

inline json to_json(const GadgetBoundReport& report) {
    return json{{"r", report.r},
                {"grid_points", report.grid_points},
                {"min_gap", report.min_gap},
                {"min_gap_s", report.min_gap_s},
                {"bound_r_squared", report.bound},
                {"holds", report.holds},
                {"slack", report.slack},
                {"min_chain_first", report.min_chain_first},
                {"min_chain_second", report.min_chain_second},
                {"stationary_s", report.stationary_s}};
}

inline json protocol_to_json(const ProtocolSpec& spec) {
    return json{{"name", spec.name},
                {"n_qubits", spec.hamiltonian.n_qubits()},
                {"schedule", spec.hamiltonian.schedule.tag},
                {"h_initial", to_json(spec.hamiltonian.h_initial)},
                {"h_final", to_json(spec.hamiltonian.h_final)},
                {"static_terms", to_json(spec.hamiltonian.static_terms)},
                {"data_qubits", spec.data_qubits},
                {"output_qubits", spec.output_qubits},
                {"target_gate", to_json(spec.target_gate)}};
}

inline json to_json(const CompiledProgram& program) {
    json segments = json::array();
    for (const auto& seg : program.segments) {
        json pairs = json::array();
        for (auto [a, b] : seg.fresh_pairs) pairs.push_back(json::array({a, b}));
        segments.push_back(json{{"index", seg.index},
                                {"label", seg.label},
                                {"gate", seg.gate_name},
                                {"imprint", to_json(seg.imprint)},
                                {"active_qubits", seg.active_qubits},
                                {"fresh_pairs", pairs},
                                {"swept_initial", to_json(seg.swept_initial)},
                                {"swept_final", to_json(seg.swept_final)},
                                {"static_terms", to_json(seg.static_terms)},
                                {"start_hamiltonian", to_json(seg.start_hamiltonian)},
                                {"end_hamiltonian", to_json(seg.end_hamiltonian)}});
    }
    json circuit = json::array();
    for (const auto& gate : program.circuit) {
        circuit.push_back(json{{"kind", gate.kind}, {"wire_a", gate.wire_a},
                               {"wire_b", gate.wire_b}});
    }
    return json{{"layout", layout_tag(program.layout)},
                {"n_logical", program.n_logical},
                {"n_physical", program.n_physical},
                {"omega", program.omega},
                {"gadgetized", program.gadgetized},
                {"circuit", circuit},
                {"segments", segments}};
}

inline CompiledProgram compiled_from_json(const json& j) {
    CompiledProgram program;
    std::string layout = j.at("layout").get<std::string>();
    if (layout == "chain") program.layout = Layout::Chain;
    else if (layout == "3n") program.layout = Layout::Alt3n;
    else throw ParseError("unknown layout \"" + layout + "\"");
    program.n_logical = j.at("n_logical").get<int>();
    program.n_physical = j.at("n_physical").get<int>();
    program.omega = j.at("omega").get<double>();
    program.gadgetized = j.at("gadgetized").get<bool>();
    for (const auto& g : j.at("circuit")) {
        program.circuit.push_back(CircuitGate{g.at("kind").get<std::string>(),
                                              g.at("wire_a").get<int>(),
                                              g.at("wire_b").get<int>()});
    }
    const int n = program.n_physical;
    for (const auto& s : j.at("segments")) {
        Segment seg;
        seg.index = s.at("index").get<int>();
        seg.label = s.at("label").get<std::string>();
        seg.gate_name = s.at("gate").get<std::string>();
        seg.imprint = gate_from_json(s.at("imprint"));
        seg.active_qubits = s.at("active_qubits").get<std::vector<int>>();
        for (const auto& p : s.at("fresh_pairs")) {
            seg.fresh_pairs.push_back({p[0].get<int>(), p[1].get<int>()});
        }
        seg.swept_initial = pauli_sum_from_json(s.at("swept_initial"), n);
        seg.swept_final = pauli_sum_from_json(s.at("swept_final"), n);
        seg.static_terms = pauli_sum_from_json(s.at("static_terms"), n);
        seg.start_hamiltonian = pauli_sum_from_json(s.at("start_hamiltonian"), n);
        seg.end_hamiltonian = pauli_sum_from_json(s.at("end_hamiltonian"), n);
        program.segments.push_back(std::move(seg));
    }
    return program;
}

}  // namespace agt::io
