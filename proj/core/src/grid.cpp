#include "qprep/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qprep {

SamplingGrid::SamplingGrid(int num_qubits, double window, double zeta, double center)
    : num_qubits_(num_qubits), window_(window), zeta_(zeta), center_(center) {
    if (num_qubits < 1 || num_qubits > kMaxGridQubits) {
        throw std::invalid_argument("grid qubit count must lie in [1, " +
                                    std::to_string(kMaxGridQubits) + "]");
    }
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw std::invalid_argument("grid window must be positive and finite");
    }
    if (!std::isfinite(center)) {
        throw std::invalid_argument("grid center must be finite");
    }
    const double zeta_limit = std::ldexp(1.0, -(num_qubits - 1));
    if (!(zeta >= 0.0) || zeta >= zeta_limit) {
        throw std::invalid_argument("zeta must lie in [0, 1/2^(n-1))");
    }
    spacing_ = std::ldexp(window, -num_qubits);
    origin_ = center + window * (zeta - 1.0) / 2.0;
    nyquist_ = 1.0 / (2.0 * spacing_);
}

double SamplingGrid::index_to_x(std::uint64_t i) const {
    if (i >= size()) {
        throw std::out_of_range("grid index " + std::to_string(i) + " out of range [0, 2^" +
                                std::to_string(num_qubits_) + ")");
    }
    return origin_ + spacing_ * static_cast<double>(i);
}

std::string SamplingGrid::describe() const {
    char buf[140];
    std::snprintf(buf, sizeof(buf), "grid(n=%d,window=%.17g,zeta=%.17g,center=%.17g)",
                  num_qubits_, window_, zeta_, center_);
    return buf;
}

std::vector<int> bit_decompose(std::uint64_t value, int num_bits) {
    if (num_bits < 1 || num_bits > 63) {
        throw std::invalid_argument("bit count must lie in [1, 63]");
    }
    if (value >= (std::uint64_t{1} << num_bits)) {
        throw std::out_of_range("value does not fit in " + std::to_string(num_bits) + " bits");
    }
    std::vector<int> bits(static_cast<std::size_t>(num_bits));
    for (int m = 0; m < num_bits; ++m) {
        bits[m] = static_cast<int>((value >> m) & 1u);
    }
    return bits;
}

}  // namespace qprep
