#include "qprep/forking.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qprep {

namespace {

std::uint64_t reverse_bits(std::uint64_t value, int width) {
    std::uint64_t out = 0;
    for (int b = 0; b < width; ++b) {
        out = (out << 1) | ((value >> b) & 1u);
    }
    return out;
}

// Post-order routing: once both subtrees have gathered their conditional
// states onto their left spines, the parent exposes the winning branch by
// swapping the two spines under its own qubit. Children at equal depth touch
// disjoint qubits, so the per-level swaps overlap in time.
void emit_routing(Circuit& circuit, std::uint64_t node, int level, int n) {
    if (level >= n - 1) {
        return;
    }
    emit_routing(circuit, 2 * node, level + 1, n);
    emit_routing(circuit, 2 * node + 1, level + 1, n);
    const std::uint64_t left = 2 * node;
    const std::uint64_t right = 2 * node + 1;
    for (int k = 0; k + level + 1 <= n - 1; ++k) {
        circuit.append(Gate::cswap(static_cast<int>(node - 1),
                                   static_cast<int>((left << k) - 1),
                                   static_cast<int>((right << k) - 1)));
    }
}

}  // namespace

std::pair<Circuit, ForkingLayout> fork_transform(const AngleTable& table,
                                                 const ForkOptions& options) {
    const int n = table.num_qubits;
    if (n < 1 || n > kMaxForkQubits) {
        throw std::invalid_argument("fork transform supports 1 to " +
                                    std::to_string(kMaxForkQubits) + " logical qubits");
    }
    if (table.theta.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("angle table is incomplete");
    }

    ForkingLayout layout;
    layout.num_qubits = n;
    layout.tree_size = (std::uint64_t{1} << n) - 1;
    layout.node_to_qubit.resize(layout.tree_size);
    for (std::uint64_t t = 1; t <= layout.tree_size; ++t) {
        layout.node_to_qubit[t - 1] = static_cast<int>(t - 1);
    }
    layout.output_register.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        // Left spine of the root: heap nodes 1, 2, 4, ...
        layout.output_register[k] = (1 << k) - 1;
    }
    if (options.include_control_qubit) {
        layout.has_control_qubit = true;
        layout.control_qubit = static_cast<int>(layout.tree_size);
    }

    Circuit circuit(static_cast<int>(layout.tree_size) + (layout.has_control_qubit ? 1 : 0));
    circuit.metadata().builder = "forking";
    if (table.grid) {
        circuit.metadata().grid = table.grid->describe();
    }

    // Rotation layer: every tree node on its own qubit, depth 1. The heap
    // walks the path pattern most-significant-choice first, the angle index
    // reads it least-significant first, hence the bit reversal.
    for (int level = 0; level < n; ++level) {
        for (std::uint64_t p = 0; p < (std::uint64_t{1} << level); ++p) {
            const std::uint64_t node = (std::uint64_t{1} << level) + p;
            const std::uint64_t pattern = reverse_bits(p, level);
            const double angle = table.theta[static_cast<std::size_t>(n - level - 1)][pattern];
            circuit.append(Gate::ry(angle, static_cast<int>(node - 1)));
        }
    }
    emit_routing(circuit, 1, 0, n);
    return {std::move(circuit), std::move(layout)};
}

ForkDepthReport fork_depth_report(const Circuit& circuit, const ForkingLayout& layout) {
    ForkDepthReport report;
    const CircuitStats stats = depth_and_counts(circuit);
    report.depth = stats.depth;
    report.cswap_count = stats.counts.cswap;

    // The rotation layer is the run of leading uncontrolled rotations.
    Circuit prefix(circuit.num_qubits());
    for (const Gate& gate : circuit.gates()) {
        if (gate.kind != GateKind::Ry || !gate.controls.empty()) {
            break;
        }
        prefix.append(gate);
    }
    report.rotation_layer_depth = depth_and_counts(prefix).depth;

    const double n = static_cast<double>(layout.num_qubits);
    report.depth_over_n_squared = static_cast<double>(report.depth) / (n * n);
    report.reference_cswap_count = layout.tree_size - 1;
    report.matches_reference_count = report.cswap_count == report.reference_cswap_count;
    return report;
}

std::string forking_layout_to_json(const ForkingLayout& layout) {
    nlohmann::json inner;
    inner["n"] = layout.num_qubits;
    inner["d"] = layout.tree_size;
    inner["output_register"] = layout.output_register;
    if (layout.has_control_qubit) {
        inner["control_qubit"] = layout.control_qubit;
    }
    nlohmann::json j;
    j["layout"] = std::move(inner);
    return j.dump(2) + "\n";
}

}  // namespace qprep
