#include "qprep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qprep {

namespace {

std::vector<double> circuit_distribution(const Circuit& circuit, const VerifyOptions& options,
                                         std::uint64_t expected_size, double* max_imag) {
    const StateVector sv = simulate(circuit);
    *max_imag = max_imaginary_magnitude(sv);
    std::vector<double> probs =
        options.layout ? marginal(sv, options.layout->output_register) : sv.probabilities();
    if (probs.size() != expected_size) {
        throw std::invalid_argument("circuit register does not match the verification target");
    }
    return probs;
}

void fill_divergences(VerificationReport& report, const std::vector<double>& circuit_probs,
                      const std::vector<double>& oracle_probs) {
    report.tvd = total_variation_distance(circuit_probs, oracle_probs);
    for (std::size_t i = 0; i < circuit_probs.size(); ++i) {
        const double abs_err = std::abs(circuit_probs[i] - oracle_probs[i]);
        report.max_abs_err = std::max(report.max_abs_err, abs_err);
        if (oracle_probs[i] > 1e-300) {
            report.max_rel_err = std::max(report.max_rel_err, abs_err / oracle_probs[i]);
        }
    }
}

}  // namespace

VerificationReport verify(const DistributionSpec& spec, const SamplingGrid& grid,
                          const Circuit& circuit, const VerifyOptions& options) {
    VerificationReport report;
    const std::vector<double> circuit_probs =
        circuit_distribution(circuit, options, grid.size(), &report.max_imag);

    const std::vector<double> xi = oracle_xi(spec, grid, options.tol);
    const double delta_x = compute_delta_x(spec, grid, options.tol);

    report.rows.reserve(grid.size());
    std::vector<double> oracle_probs(grid.size());
    for (std::uint64_t i = 0; i < grid.size(); ++i) {
        const double x = grid.index_to_x(i);
        oracle_probs[i] = xi[i] * xi[i];
        const double pdf_delta = pdf_at(spec, x) * delta_x;
        report.rows.push_back({i, x, circuit_probs[i], oracle_probs[i], pdf_delta});
        report.wrap_error_estimate += std::abs(oracle_probs[i] - pdf_delta);
    }
    fill_divergences(report, circuit_probs, oracle_probs);

    const CircuitStats stats = depth_and_counts(circuit);
    report.gate_counts = stats.counts;
    report.depth = stats.depth;
    return report;
}

VerificationReport verify(const DiscreteSpec& probs, int num_qubits, const Circuit& circuit,
                          const VerifyOptions& options) {
    if (num_qubits < 2) {
        throw std::invalid_argument("discrete verification needs at least 2 qubits");
    }
    const std::uint64_t half = std::uint64_t{1} << (num_qubits - 1);
    if (probs.size() != half) {
        throw std::invalid_argument("probability count must equal 2^(n-1)");
    }

    VerificationReport report;
    const std::vector<double> full =
        circuit_distribution(circuit, options, half << 1, &report.max_imag);

    // Condition on the most significant qubit directly on the distribution;
    // this works for both the sequential circuit and a forked marginal.
    double keep_mass = 0.0;
    double drop_mass = 0.0;
    for (std::uint64_t i = 0; i < half; ++i) {
        keep_mass += full[i];
        drop_mass += full[i | half];
    }
    if (keep_mass <= 1e-15) {
        throw std::runtime_error("postselected branch has vanishing probability");
    }

    std::vector<double> selected(half);
    std::vector<double> oracle_probs(half);
    report.rows.reserve(half);
    for (std::uint64_t i = 0; i < half; ++i) {
        selected[i] = full[i] / keep_mass;
        oracle_probs[i] = probs[i];
        report.rows.push_back(
            {i, static_cast<double>(i), selected[i], oracle_probs[i], oracle_probs[i]});
    }
    fill_divergences(report, selected, oracle_probs);

    if (drop_mass > 1e-15 && half > 1) {
        const double denom = static_cast<double>(half) - 1.0;
        for (std::uint64_t i = 0; i < half; ++i) {
            const double complement = full[i | half] / drop_mass;
            const double expected = (1.0 - probs[i]) / denom;
            report.complement_max_abs_err =
                std::max(report.complement_max_abs_err, std::abs(complement - expected));
        }
    }

    report.wrap_error_estimate = 0.0;
    const CircuitStats stats = depth_and_counts(circuit);
    report.gate_counts = stats.counts;
    report.depth = stats.depth;
    return report;
}

std::string report_to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["tvd"] = report.tvd;
    j["max_abs_err"] = report.max_abs_err;
    j["max_rel_err"] = report.max_rel_err;
    j["wrap_error_estimate"] = report.wrap_error_estimate;
    j["max_imag"] = report.max_imag;
    j["complement_max_abs_err"] = report.complement_max_abs_err;
    j["depth"] = report.depth;
    j["gate_counts"] = {
        {"ry", report.gate_counts.ry},       {"controlled_ry", report.gate_counts.controlled_ry},
        {"h", report.gate_counts.h},         {"x", report.gate_counts.x},
        {"cnot", report.gate_counts.cnot},   {"swap", report.gate_counts.swap},
        {"cswap", report.gate_counts.cswap},
    };
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const VerificationRow& row : report.rows) {
        rows.push_back({{"index", row.index},
                        {"x", row.x},
                        {"prob_circuit", row.prob_circuit},
                        {"prob_oracle", row.prob_oracle},
                        {"pdf_delta", row.pdf_times_delta_x}});
    }
    return j.dump(2) + "\n";
}

std::string report_to_csv(const VerificationReport& report) {
    std::string out = "index,x,prob_circuit,prob_oracle,pdf_delta,abs_err\n";
    char buf[192];
    for (const VerificationRow& row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%llu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(row.index), row.x, row.prob_circuit,
                      row.prob_oracle, row.pdf_times_delta_x,
                      std::abs(row.prob_circuit - row.prob_oracle));
        out += buf;
    }
    return out;
}

}  // namespace qprep
