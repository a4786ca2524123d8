#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qprep/distribution.hpp"
#include "qprep/grid.hpp"

namespace qprep {

/**
 * Rotation-angle table for an n-qubit synthesis run.
 *
 * Level m (1-based) holds 2^(n-m) angles; entry theta[m-1][i] is the rotation
 * selected when the integer formed by the already-prepared low qubits equals
 * i. Level m drives target qubit q_{n-m}, so level 1 is the widest. Entries
 * are written once at construction and the table is immutable afterwards;
 * every entry is independent of every other.
 */
struct AngleTable {
    int num_qubits = 0;
    std::vector<std::vector<double>> theta;
    double delta_x_norm = 0.0;
    std::optional<SamplingGrid> grid;  // provenance; absent for discrete tables

    /// (level, index) pairs whose branch carried no probability mass.
    std::vector<std::pair<int, std::uint64_t>> degenerate;
};

/**
 * Normalization factor: reciprocal of the image sum of the density over the
 * full sample lattice (period = grid spacing, anchored at the origin).
 * Converges to the grid spacing as n grows.
 */
double compute_delta_x(const DistributionSpec& spec, const SamplingGrid& grid, double tol = 1e-14);

/**
 * Single rotation angle for level m in [1, n] and index i in [0, 2^(n-m)):
 * 2*acos(sqrt(S(x_i, w/2^(m-1)) / S(x_i, w/2^m))) with S the periodic image
 * sum. The quotient is clamped into [0,1]; excursions beyond 1e-9 outside the
 * interval indicate a truncation failure and throw.
 */
double compute_theta(const DistributionSpec& spec, const SamplingGrid& grid, int level,
                     std::uint64_t index, double tol = 1e-14);

/// Full table over all levels plus the normalization factor; 2^n - 1 angles.
AngleTable build_angle_table(const DistributionSpec& spec, const SamplingGrid& grid,
                             double tol = 1e-14);

/// Angles 2*acos(sqrt(P(i))) for each discrete probability.
std::vector<double> discrete_theta(const DiscreteSpec& probs);

/**
 * Angle table realizing a discrete distribution on n qubits: level 1 carries
 * the 2^(n-1) probability angles, all higher levels are pi/2. Requires
 * probs.size() == 2^(n-1) and n >= 2.
 */
AngleTable discrete_angle_table(const DiscreteSpec& probs, int num_qubits);

/**
 * Rotation angle of a discrete distribution evaluated through the smoothed
 * route: each probability spike is widened into a Gaussian of width eps on a
 * unit window and the continuous angle quotient is formed from the smoothed
 * density. As eps -> 0 this converges to 2*acos(sqrt(P(i))) for level 1 and
 * pi/2 for every higher level. Throws if eps is too small for the smoothing
 * kernel to be representable.
 */
double discrete_theta_numeric(const DiscreteSpec& probs, int num_qubits, int level,
                              std::uint64_t index, double eps);

/// JSON round-trip: {"n":..., "delta_x_norm":..., "theta":[[...],...]}.
std::string angle_table_to_json(const AngleTable& table);
AngleTable angle_table_from_json(const std::string& text);

}  // namespace qprep
