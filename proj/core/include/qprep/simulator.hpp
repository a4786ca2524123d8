#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qprep/angles.hpp"
#include "qprep/circuit.hpp"

namespace qprep {

/// Dense-simulation ceiling: 2^24 complex amplitudes.
inline constexpr int kMaxSimQubits = 24;

/**
 * Dense statevector with little-endian basis indexing: bit m of a basis index
 * is the state of qubit q_m, so q_{n-1} is the most significant. Gate
 * application walks index pairs selected by the polarity-annotated control
 * mask; each pair is owned by exactly one step, so results are deterministic.
 */
class StateVector {
public:
    explicit StateVector(int num_qubits);

    static StateVector basis(int num_qubits, std::uint64_t index);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t size() const { return amps_.size(); }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

    void apply(const Gate& gate);
    void apply(const Circuit& circuit);

    std::vector<double> probabilities() const;
    double norm() const;

private:
    int num_qubits_;
    std::vector<std::complex<double>> amps_;
};

/// Applies the circuit to |0...0>.
StateVector simulate(const Circuit& circuit);

/**
 * Direct amplitude product built from the angle table: the amplitude of basis
 * index i is the product over levels of cos(theta/2) or sin(theta/2) picked
 * by the bit of i the level's target qubit owns. Independent of the gate
 * simulation path.
 */
std::vector<double> oracle_amplitudes(const AngleTable& table);

/**
 * Amplitudes straight from the density: sqrt(delta_x_norm * S(x_i, window))
 * with S the periodic image sum. Their squares must sum to 1 on their own
 * (that equality is a theorem, not a normalization step); a violation beyond
 * 1e-12 throws.
 */
std::vector<double> oracle_xi(const DistributionSpec& spec, const SamplingGrid& grid,
                              double tol = 1e-14);

/// Distribution over the listed qubits (list order = output bit order).
std::vector<double> marginal(const StateVector& sv, const std::vector<int>& qubits);

/// Distribution over the remaining qubits after conditioning `qubit` on `bit`.
std::vector<double> postselect(const StateVector& sv, int qubit, int bit);

/// (1/2) * sum |p_i - q_i|.
double total_variation_distance(const std::vector<double>& p, const std::vector<double>& q);

/// Largest |imag| over all amplitudes; builder circuits must keep this at rounding level.
double max_imaginary_magnitude(const StateVector& sv);

}  // namespace qprep
