#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qprep/angles.hpp"

namespace qprep {

enum class GateKind { Ry, H, X, Swap, Cswap };

/// One control vertex: closed (positive) fires on |1>, open (negative) on |0>.
struct Control {
    int qubit;
    bool positive;

    friend bool operator==(const Control&, const Control&) = default;
};

struct Gate {
    GateKind kind = GateKind::Ry;
    double angle = 0.0;  // Ry only
    std::vector<int> targets;
    std::vector<Control> controls;

    static Gate ry(double angle, int target, std::vector<Control> controls = {});
    static Gate h(int target);
    static Gate x(int target);
    static Gate cnot(int control, int target);
    static Gate swap(int a, int b);
    static Gate cswap(int control, int a, int b);

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct CircuitMetadata {
    std::string builder;
    std::string distribution;
    std::string grid;

    friend bool operator==(const CircuitMetadata&, const CircuitMetadata&) = default;
};

/**
 * Ordered gate list over a fixed qubit register. The list order is execution
 * order (applied left to right to |0...0>). Gates are validated on append;
 * circuits are immutable once built and safe to read concurrently.
 */
class Circuit {
public:
    explicit Circuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t num_gates() const { return gates_.size(); }

    void append(Gate gate);

    CircuitMetadata& metadata() { return metadata_; }
    const CircuitMetadata& metadata() const { return metadata_; }

private:
    int num_qubits_;
    std::vector<Gate> gates_;
    CircuitMetadata metadata_;
};

/**
 * Multiplexed-rotation synthesis circuit: qubit q_k receives 2^k rotations
 * by the level-(n-k) angles, each selected by the bit pattern of the lower
 * qubits (control on q_j positive iff bit j of the pattern is set). Exactly
 * 2^n - 1 rotation gates, nothing else.
 */
Circuit build_upsampling_circuit(const AngleTable& table);

/**
 * Discrete-distribution circuit: Hadamards on q_0..q_{n-2}, then one rotation
 * per pattern targeting q_{n-1}. thetas must have 2^(n-1) entries, n >= 2.
 */
Circuit build_discrete_circuit(const std::vector<double>& thetas, int num_qubits);

/**
 * Rewrites a builder circuit over {RY, H, X, CNOT, CSWAP} with no negative
 * and no multi-controls: negative controls become X conjugations, controlled
 * rotations expand into the gray-code multiplexor form (2^k rotations plus
 * 2^k CNOTs for k controls). Unitarily equivalent to the input.
 */
Circuit lower_to_basis(const Circuit& circuit);

struct GateCounts {
    std::size_t ry = 0;  // uncontrolled
    std::size_t controlled_ry = 0;
    std::size_t h = 0;
    std::size_t x = 0;
    std::size_t cnot = 0;
    std::size_t swap = 0;
    std::size_t cswap = 0;

    std::size_t total() const { return ry + controlled_ry + h + x + cnot + swap + cswap; }
};

struct CircuitStats {
    GateCounts counts;
    std::size_t depth = 0;  // two gates conflict iff they share any qubit
};

CircuitStats depth_and_counts(const Circuit& circuit);

}  // namespace qprep
