#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qprep/angles.hpp"
#include "qprep/circuit.hpp"

namespace qprep {

/// Synthesis ceiling for the forked form (2^12 - 1 tree qubits).
inline constexpr int kMaxForkQubits = 12;

/**
 * Layout of the forked circuit: one qubit per node of a complete binary tree
 * in heap order (root = node 1, children 2t and 2t+1), d = 2^n - 1 nodes.
 * output_register lists the qubits whose joint marginal carries the prepared
 * distribution, least significant logical qubit first (the root's left spine).
 */
struct ForkingLayout {
    int num_qubits = 0;                // logical register size n
    std::uint64_t tree_size = 0;       // d = 2^n - 1
    std::vector<int> node_to_qubit;    // heap node t sits on qubit node_to_qubit[t-1]
    std::vector<int> output_register;  // n entries
    bool has_control_qubit = false;
    int control_qubit = -1;
};

struct ForkOptions {
    /// Reserve a distinguished control qubit alongside the tree. The routed
    /// preparation itself never touches it; the flag only widens the register.
    bool include_control_qubit = false;
};

/**
 * Rewrites the sequential multiplexor synthesis as a forked circuit: a single
 * layer of uncontrolled rotations, one per tree node (level L node with path
 * pattern i rotates by the level-(n-L) angle for i), followed by a
 * controlled-swap routing network that moves the selected branch onto the
 * output register. Depth grows as O(n^2) instead of O(2^n); the price is
 * 2^n - 1 qubits. The output-register marginal equals the sequential
 * circuit's distribution.
 */
std::pair<Circuit, ForkingLayout> fork_transform(const AngleTable& table,
                                                 const ForkOptions& options = {});

struct ForkDepthReport {
    std::size_t depth = 0;
    std::size_t cswap_count = 0;
    std::size_t rotation_layer_depth = 0;  // must be 1
    double depth_over_n_squared = 0.0;
    std::uint64_t reference_cswap_count = 0;  // the d - 1 figure quoted for this construction
    bool matches_reference_count = false;
};

ForkDepthReport fork_depth_report(const Circuit& circuit, const ForkingLayout& layout);

/// {"layout":{"n":...,"d":...,"output_register":[...]}}
std::string forking_layout_to_json(const ForkingLayout& layout);

}  // namespace qprep
