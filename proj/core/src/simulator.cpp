#include "qprep/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qprep {

namespace {

constexpr double kPi = std::numbers::pi;

struct ControlMask {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;
};

ControlMask control_mask(const Gate& gate) {
    ControlMask cm;
    for (const Control& c : gate.controls) {
        cm.mask |= std::uint64_t{1} << c.qubit;
        if (c.positive) {
            cm.value |= std::uint64_t{1} << c.qubit;
        }
    }
    return cm;
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxSimQubits) {
        throw std::invalid_argument("statevector qubit count must lie in [1, " +
                                    std::to_string(kMaxSimQubits) + "]");
    }
    amps_.assign(std::uint64_t{1} << num_qubits, {0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
    StateVector sv(num_qubits);
    if (index >= sv.size()) {
        throw std::out_of_range("basis index out of range");
    }
    sv.amps_[0] = 0.0;
    sv.amps_[index] = 1.0;
    return sv;
}

void StateVector::apply(const Gate& gate) {
    for (int q : gate.targets) {
        if (q < 0 || q >= num_qubits_) {
            throw std::out_of_range("gate target outside register");
        }
    }
    for (const Control& c : gate.controls) {
        if (c.qubit < 0 || c.qubit >= num_qubits_) {
            throw std::out_of_range("gate control outside register");
        }
    }
    const auto [cmask, cval] = control_mask(gate);
    const std::uint64_t dim = size();

    switch (gate.kind) {
        case GateKind::Ry: {
            const double c = std::cos(0.5 * gate.angle);
            const double s = std::sin(0.5 * gate.angle);
            const std::uint64_t tmask = std::uint64_t{1} << gate.targets[0];
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & tmask) != 0 || (i & cmask) != cval) {
                    continue;
                }
                const auto a0 = amps_[i];
                const auto a1 = amps_[i | tmask];
                amps_[i] = c * a0 - s * a1;
                amps_[i | tmask] = s * a0 + c * a1;
            }
            break;
        }
        case GateKind::H: {
            const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
            const std::uint64_t tmask = std::uint64_t{1} << gate.targets[0];
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & tmask) != 0 || (i & cmask) != cval) {
                    continue;
                }
                const auto a0 = amps_[i];
                const auto a1 = amps_[i | tmask];
                amps_[i] = inv_sqrt2 * (a0 + a1);
                amps_[i | tmask] = inv_sqrt2 * (a0 - a1);
            }
            break;
        }
        case GateKind::X: {
            const std::uint64_t tmask = std::uint64_t{1} << gate.targets[0];
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & tmask) != 0 || (i & cmask) != cval) {
                    continue;
                }
                std::swap(amps_[i], amps_[i | tmask]);
            }
            break;
        }
        case GateKind::Swap:
        case GateKind::Cswap: {
            const std::uint64_t amask = std::uint64_t{1} << gate.targets[0];
            const std::uint64_t bmask = std::uint64_t{1} << gate.targets[1];
            for (std::uint64_t i = 0; i < dim; ++i) {
                // Visit each pair once through its (a=1, b=0) member.
                if ((i & amask) == 0 || (i & bmask) != 0 || (i & cmask) != cval) {
                    continue;
                }
                std::swap(amps_[i], amps_[i ^ amask ^ bmask]);
            }
            break;
        }
    }
}

void StateVector::apply(const Circuit& circuit) {
    if (circuit.num_qubits() != num_qubits_) {
        throw std::invalid_argument("circuit and statevector register sizes differ");
    }
    for (const Gate& gate : circuit.gates()) {
        apply(gate);
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> probs(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        probs[i] = std::norm(amps_[i]);
    }
    return probs;
}

double StateVector::norm() const {
    double total = 0.0;
    for (const auto& a : amps_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

StateVector simulate(const Circuit& circuit) {
    StateVector sv(circuit.num_qubits());
    sv.apply(circuit);
    return sv;
}

std::vector<double> oracle_amplitudes(const AngleTable& table) {
    const int n = table.num_qubits;
    if (n < 1 || table.theta.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("angle table is incomplete");
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<double> amps(dim);
    for (std::uint64_t i = 0; i < dim; ++i) {
        double product = 1.0;
        for (int level = 1; level <= n; ++level) {
            const int bit_pos = n - level;
            const std::uint64_t pattern = i & ((std::uint64_t{1} << bit_pos) - 1);
            const double theta = table.theta[static_cast<std::size_t>(level - 1)][pattern];
            const double bit = static_cast<double>((i >> bit_pos) & 1u);
            product *= std::cos(-0.5 * kPi * bit + 0.5 * theta);
        }
        amps[i] = product;
    }
    return amps;
}

std::vector<double> oracle_xi(const DistributionSpec& spec, const SamplingGrid& grid, double tol) {
    const double delta_x = compute_delta_x(spec, grid, tol);
    std::vector<double> amps(grid.size());
    double total = 0.0;
    for (std::uint64_t i = 0; i < grid.size(); ++i) {
        const double wrapped = periodic_sum(spec, grid.index_to_x(i), grid.window(), tol);
        const double squared = delta_x * wrapped;
        amps[i] = std::sqrt(squared);
        total += squared;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::runtime_error("oracle amplitudes do not square-sum to 1 (got " +
                                 std::to_string(total) + "); image-sum truncation failure");
    }
    return amps;
}

std::vector<double> marginal(const StateVector& sv, const std::vector<int>& qubits) {
    if (qubits.empty() || qubits.size() > static_cast<std::size_t>(sv.num_qubits())) {
        throw std::invalid_argument("marginal qubit list has a bad size");
    }
    std::uint64_t seen = 0;
    for (int q : qubits) {
        if (q < 0 || q >= sv.num_qubits()) {
            throw std::out_of_range("marginal qubit outside register");
        }
        if ((seen >> q) & 1u) {
            throw std::invalid_argument("marginal qubits must be distinct");
        }
        seen |= std::uint64_t{1} << q;
    }
    std::vector<double> probs(std::uint64_t{1} << qubits.size(), 0.0);
    const auto& amps = sv.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        std::uint64_t outcome = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            outcome |= ((i >> qubits[j]) & 1u) << j;
        }
        probs[outcome] += std::norm(amps[i]);
    }
    return probs;
}

std::vector<double> postselect(const StateVector& sv, int qubit, int bit) {
    if (qubit < 0 || qubit >= sv.num_qubits()) {
        throw std::out_of_range("postselect qubit outside register");
    }
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("postselect bit must be 0 or 1");
    }
    if (sv.num_qubits() < 2) {
        throw std::invalid_argument("postselect needs at least 2 qubits");
    }
    const std::uint64_t qmask = std::uint64_t{1} << qubit;
    const std::uint64_t low = qmask - 1;
    const auto& amps = sv.amplitudes();
    std::vector<double> probs(amps.size() >> 1, 0.0);
    double branch = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (((i >> qubit) & 1u) != static_cast<std::uint64_t>(bit)) {
            continue;
        }
        const double p = std::norm(amps[i]);
        branch += p;
        probs[(i & low) | ((i >> 1) & ~low)] += p;
    }
    if (branch <= 1e-15) {
        throw std::runtime_error("postselected branch has vanishing probability");
    }
    for (double& p : probs) {
        p /= branch;
    }
    return probs;
}

double total_variation_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("distributions have different sizes");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::abs(p[i] - q[i]);
    }
    return 0.5 * sum;
}

double max_imaginary_magnitude(const StateVector& sv) {
    double worst = 0.0;
    for (const auto& a : sv.amplitudes()) {
        worst = std::max(worst, std::abs(a.imag()));
    }
    return worst;
}

}  // namespace qprep
