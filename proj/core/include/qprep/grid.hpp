#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qprep {

/// Largest register this artifact will build grids for (2^24 sample points).
inline constexpr int kMaxGridQubits = 24;

/**
 * Uniform sampling window over the real line: 2^n points spaced window/2^n
 * apart. The window sits around `center`, shifted right by zeta*window/2 with
 * 0 <= zeta < 1/2^(n-1); nonzero zeta decorrelates the sample sets of grids
 * built at different resolutions. Pure value type, freely shareable.
 */
class SamplingGrid {
public:
    SamplingGrid(int num_qubits, double window, double zeta, double center);

    int num_qubits() const { return num_qubits_; }
    double window() const { return window_; }
    double zeta() const { return zeta_; }
    double center() const { return center_; }

    /// First sample point: center + window*(zeta - 1)/2.
    double origin() const { return origin_; }
    /// Sample spacing window/2^n.
    double spacing() const { return spacing_; }
    /// Resolution limit 1/(2*spacing).
    double nyquist() const { return nyquist_; }
    /// Number of sample points, 2^n.
    std::uint64_t size() const { return std::uint64_t{1} << num_qubits_; }

    /// Sample point for index i in [0, 2^n): origin + spacing*i.
    double index_to_x(std::uint64_t i) const;

    /// Deterministic one-line description for provenance records.
    std::string describe() const;

private:
    int num_qubits_;
    double window_;
    double zeta_;
    double center_;
    double origin_;
    double spacing_;
    double nyquist_;
};

/// Little-endian bit vector of `value`; bits[num_bits-1] is the most significant.
std::vector<int> bit_decompose(std::uint64_t value, int num_bits);

}  // namespace qprep
