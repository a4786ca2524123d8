#include "qprep/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qprep {

Gate Gate::ry(double angle, int target, std::vector<Control> controls) {
    Gate g;
    g.kind = GateKind::Ry;
    g.angle = angle;
    g.targets = {target};
    g.controls = std::move(controls);
    return g;
}

Gate Gate::h(int target) {
    Gate g;
    g.kind = GateKind::H;
    g.targets = {target};
    return g;
}

Gate Gate::x(int target) {
    Gate g;
    g.kind = GateKind::X;
    g.targets = {target};
    return g;
}

Gate Gate::cnot(int control, int target) {
    Gate g;
    g.kind = GateKind::X;
    g.targets = {target};
    g.controls = {{control, true}};
    return g;
}

Gate Gate::swap(int a, int b) {
    Gate g;
    g.kind = GateKind::Swap;
    g.targets = {a, b};
    return g;
}

Gate Gate::cswap(int control, int a, int b) {
    Gate g;
    g.kind = GateKind::Cswap;
    g.targets = {a, b};
    g.controls = {{control, true}};
    return g;
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) {
        throw std::invalid_argument("circuit needs at least 1 qubit");
    }
}

void Circuit::append(Gate gate) {
    const std::size_t expected_targets = (gate.kind == GateKind::Swap || gate.kind == GateKind::Cswap) ? 2 : 1;
    if (gate.targets.size() != expected_targets) {
        throw std::invalid_argument("gate has the wrong number of targets");
    }
    switch (gate.kind) {
        case GateKind::Ry:
            if (!std::isfinite(gate.angle)) {
                throw std::invalid_argument("rotation angle must be finite");
            }
            break;
        case GateKind::H:
        case GateKind::Swap:
            if (!gate.controls.empty()) {
                throw std::invalid_argument("gate kind does not take controls");
            }
            break;
        case GateKind::X:
            if (gate.controls.size() > 1 ||
                (gate.controls.size() == 1 && !gate.controls[0].positive)) {
                throw std::invalid_argument("x takes at most one positive control");
            }
            break;
        case GateKind::Cswap:
            if (gate.controls.size() != 1 || !gate.controls[0].positive) {
                throw std::invalid_argument("cswap takes exactly one positive control");
            }
            break;
    }
    std::vector<int> qubits = gate.targets;
    for (const Control& c : gate.controls) {
        qubits.push_back(c.qubit);
    }
    for (int q : qubits) {
        if (q < 0 || q >= num_qubits_) {
            throw std::out_of_range("gate references qubit " + std::to_string(q) +
                                    " outside register of size " + std::to_string(num_qubits_));
        }
    }
    std::sort(qubits.begin(), qubits.end());
    if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
        throw std::invalid_argument("gate targets and controls must be pairwise distinct");
    }
    gates_.push_back(std::move(gate));
}

Circuit build_upsampling_circuit(const AngleTable& table) {
    const int n = table.num_qubits;
    if (n < 1 || table.theta.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("angle table is incomplete");
    }
    for (int level = 1; level <= n; ++level) {
        if (table.theta[static_cast<std::size_t>(level - 1)].size() !=
            (std::uint64_t{1} << (n - level))) {
            throw std::invalid_argument("angle table level " + std::to_string(level) +
                                        " is mis-sized");
        }
    }
    Circuit circuit(n);
    circuit.metadata().builder = "upsampling";
    if (table.grid) {
        circuit.metadata().grid = table.grid->describe();
    }
    for (int k = 0; k < n; ++k) {
        // Target q_k consumes level n-k; the controls read the bits of the
        // pattern index off the already-rotated lower qubits.
        const auto& level = table.theta[static_cast<std::size_t>(n - k - 1)];
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << k); ++i) {
            std::vector<Control> controls;
            controls.reserve(static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j) {
                controls.push_back({j, ((i >> j) & 1u) != 0});
            }
            circuit.append(Gate::ry(level[i], k, std::move(controls)));
        }
    }
    return circuit;
}

Circuit build_discrete_circuit(const std::vector<double>& thetas, int num_qubits) {
    if (num_qubits < 2) {
        throw std::invalid_argument("discrete circuit needs at least 2 qubits");
    }
    if (thetas.size() != (std::uint64_t{1} << (num_qubits - 1))) {
        throw std::invalid_argument("discrete circuit needs 2^(n-1) angles");
    }
    Circuit circuit(num_qubits);
    circuit.metadata().builder = "discrete";
    for (int q = 0; q < num_qubits - 1; ++q) {
        circuit.append(Gate::h(q));
    }
    const int target = num_qubits - 1;
    for (std::uint64_t i = 0; i < thetas.size(); ++i) {
        std::vector<Control> controls;
        controls.reserve(static_cast<std::size_t>(num_qubits - 1));
        for (int j = 0; j < num_qubits - 1; ++j) {
            controls.push_back({j, ((i >> j) & 1u) != 0});
        }
        circuit.append(Gate::ry(thetas[i], target, std::move(controls)));
    }
    return circuit;
}

namespace {

// Gray-code multiplexor expansion of one controlled rotation. After the
// negative controls are X-conjugated the active pattern is all-ones, so the
// fractional angles only depend on the parity of the gray code.
void emit_controlled_ry(Circuit& out, const Gate& gate) {
    const int k = static_cast<int>(gate.controls.size());
    const int target = gate.targets[0];
    for (const Control& c : gate.controls) {
        if (!c.positive) {
            out.append(Gate::x(c.qubit));
        }
    }
    const std::uint64_t steps = std::uint64_t{1} << k;
    const double fraction = gate.angle / static_cast<double>(steps);
    for (std::uint64_t j = 0; j < steps; ++j) {
        const std::uint64_t gray = j ^ (j >> 1);
        const double sign = (std::popcount(gray) % 2 == 0) ? 1.0 : -1.0;
        out.append(Gate::ry(sign * fraction, target));
        const int control_bit =
            (j + 1 == steps) ? k - 1 : std::countr_zero(static_cast<std::uint64_t>(j + 1));
        out.append(Gate::cnot(gate.controls[static_cast<std::size_t>(control_bit)].qubit, target));
    }
    for (const Control& c : gate.controls) {
        if (!c.positive) {
            out.append(Gate::x(c.qubit));
        }
    }
}

}  // namespace

Circuit lower_to_basis(const Circuit& circuit) {
    Circuit out(circuit.num_qubits());
    out.metadata() = circuit.metadata();
    for (const Gate& gate : circuit.gates()) {
        switch (gate.kind) {
            case GateKind::H:
            case GateKind::X:
            case GateKind::Cswap:
                out.append(gate);
                break;
            case GateKind::Swap:
                out.append(Gate::cnot(gate.targets[0], gate.targets[1]));
                out.append(Gate::cnot(gate.targets[1], gate.targets[0]));
                out.append(Gate::cnot(gate.targets[0], gate.targets[1]));
                break;
            case GateKind::Ry:
                if (gate.controls.empty()) {
                    out.append(gate);
                } else {
                    emit_controlled_ry(out, gate);
                }
                break;
        }
    }
    return out;
}

CircuitStats depth_and_counts(const Circuit& circuit) {
    CircuitStats stats;
    std::vector<std::size_t> frontier(static_cast<std::size_t>(circuit.num_qubits()), 0);
    for (const Gate& gate : circuit.gates()) {
        switch (gate.kind) {
            case GateKind::Ry:
                ++(gate.controls.empty() ? stats.counts.ry : stats.counts.controlled_ry);
                break;
            case GateKind::H:
                ++stats.counts.h;
                break;
            case GateKind::X:
                ++(gate.controls.empty() ? stats.counts.x : stats.counts.cnot);
                break;
            case GateKind::Swap:
                ++stats.counts.swap;
                break;
            case GateKind::Cswap:
                ++stats.counts.cswap;
                break;
        }
        std::size_t level = 0;
        for (int q : gate.targets) {
            level = std::max(level, frontier[static_cast<std::size_t>(q)]);
        }
        for (const Control& c : gate.controls) {
            level = std::max(level, frontier[static_cast<std::size_t>(c.qubit)]);
        }
        ++level;
        for (int q : gate.targets) {
            frontier[static_cast<std::size_t>(q)] = level;
        }
        for (const Control& c : gate.controls) {
            frontier[static_cast<std::size_t>(c.qubit)] = level;
        }
        stats.depth = std::max(stats.depth, level);
    }
    return stats;
}

}  // namespace qprep
