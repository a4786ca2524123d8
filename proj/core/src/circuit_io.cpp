#include "qprep/circuit_io.hpp"

#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qprep {

namespace {

const char* kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Ry:
            return "ry";
        case GateKind::H:
            return "h";
        case GateKind::X:
            return "x";
        case GateKind::Swap:
            return "swap";
        case GateKind::Cswap:
            return "cswap";
    }
    throw std::logic_error("unreachable gate kind");
}

GateKind kind_from_name(const std::string& name) {
    if (name == "ry") return GateKind::Ry;
    if (name == "h") return GateKind::H;
    if (name == "x") return GateKind::X;
    if (name == "swap") return GateKind::Swap;
    if (name == "cswap") return GateKind::Cswap;
    throw std::invalid_argument("unknown gate kind \"" + name + "\"");
}

std::string format_angle(double angle) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", angle);
    return buf;
}

}  // namespace

std::string circuit_to_json(const Circuit& circuit) {
    nlohmann::json j;
    j["version"] = 1;
    j["num_qubits"] = circuit.num_qubits();
    const CircuitMetadata& metadata = circuit.metadata();
    if (!metadata.builder.empty() || !metadata.distribution.empty() || !metadata.grid.empty()) {
        nlohmann::json meta;
        if (!metadata.builder.empty()) {
            meta["builder"] = metadata.builder;
        }
        if (!metadata.distribution.empty()) {
            meta["distribution"] = metadata.distribution;
        }
        if (!metadata.grid.empty()) {
            meta["grid"] = metadata.grid;
        }
        j["metadata"] = std::move(meta);
    }
    auto& gates = j["gates"] = nlohmann::json::array();
    for (const Gate& gate : circuit.gates()) {
        nlohmann::json g;
        g["kind"] = kind_name(gate.kind);
        if (gate.kind == GateKind::Ry) {
            g["angle"] = gate.angle;
        }
        if (gate.targets.size() == 1) {
            g["target"] = gate.targets[0];
        } else {
            g["targets"] = gate.targets;
        }
        auto& controls = g["controls"] = nlohmann::json::array();
        for (const Control& c : gate.controls) {
            controls.push_back({{"q", c.qubit}, {"pol", c.positive ? "+" : "-"}});
        }
        gates.push_back(std::move(g));
    }
    return j.dump(2) + "\n";
}

Circuit circuit_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != 1) {
        throw std::invalid_argument("unsupported circuit schema version");
    }
    Circuit circuit(j.at("num_qubits").get<int>());
    if (j.contains("metadata")) {
        const auto& meta = j.at("metadata");
        circuit.metadata().builder = meta.value("builder", "");
        circuit.metadata().distribution = meta.value("distribution", "");
        circuit.metadata().grid = meta.value("grid", "");
    }
    for (const auto& g : j.at("gates")) {
        Gate gate;
        gate.kind = kind_from_name(g.at("kind").get<std::string>());
        if (gate.kind == GateKind::Ry) {
            gate.angle = g.at("angle").get<double>();
        }
        if (g.contains("target")) {
            gate.targets = {g.at("target").get<int>()};
        } else {
            gate.targets = g.at("targets").get<std::vector<int>>();
        }
        for (const auto& c : g.at("controls")) {
            const auto pol = c.at("pol").get<std::string>();
            // "−" is the typographic minus some producers emit.
            if (pol != "+" && pol != "-" && pol != "−") {
                throw std::invalid_argument("control polarity must be \"+\" or \"-\"");
            }
            gate.controls.push_back({c.at("q").get<int>(), pol == "+"});
        }
        circuit.append(std::move(gate));
    }
    return circuit;
}

std::string export_qasm(const Circuit& circuit, const QasmOptions& options) {
    std::string out;
    out += "OPENQASM 3.0;\n";
    out += "include \"stdgates.inc\";\n";
    // Endianness is fixed here, at the exchange boundary: q[m] carries bit m
    // of the basis index, so q[0] is least significant.
    out += "// little endian: q[m] is bit m of the basis index\n";
    out += "qubit[" + std::to_string(circuit.num_qubits()) + "] q;\n";

    const auto operand = [](int q) { return "q[" + std::to_string(q) + "]"; };

    for (const Gate& gate : circuit.gates()) {
        switch (gate.kind) {
            case GateKind::H:
                out += "h " + operand(gate.targets[0]) + ";\n";
                break;
            case GateKind::X:
                if (gate.controls.empty()) {
                    out += "x " + operand(gate.targets[0]) + ";\n";
                } else {
                    out += "cx " + operand(gate.controls[0].qubit) + ", " +
                           operand(gate.targets[0]) + ";\n";
                }
                break;
            case GateKind::Swap:
                out += "swap " + operand(gate.targets[0]) + ", " + operand(gate.targets[1]) + ";\n";
                break;
            case GateKind::Cswap:
                out += "cswap " + operand(gate.controls[0].qubit) + ", " +
                       operand(gate.targets[0]) + ", " + operand(gate.targets[1]) + ";\n";
                break;
            case GateKind::Ry: {
                const bool conjugate = !options.use_negctrl;
                if (conjugate) {
                    for (const Control& c : gate.controls) {
                        if (!c.positive) {
                            out += "x " + operand(c.qubit) + ";\n";
                        }
                    }
                }
                std::string stmt;
                for (const Control& c : gate.controls) {
                    stmt += (c.positive || conjugate) ? "ctrl @ " : "negctrl @ ";
                }
                stmt += "ry(" + format_angle(gate.angle) + ") ";
                for (const Control& c : gate.controls) {
                    stmt += operand(c.qubit) + ", ";
                }
                stmt += operand(gate.targets[0]) + ";\n";
                out += stmt;
                if (conjugate) {
                    for (const Control& c : gate.controls) {
                        if (!c.positive) {
                            out += "x " + operand(c.qubit) + ";\n";
                        }
                    }
                }
                break;
            }
        }
    }
    return out;
}

}  // namespace qprep
