#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qprep/circuit.hpp"
#include "qprep/forking.hpp"
#include "qprep/simulator.hpp"

namespace qprep {

struct VerificationRow {
    std::uint64_t index;
    double x;
    double prob_circuit;
    double prob_oracle;
    double pdf_times_delta_x;
};

/**
 * Simulation-versus-oracle comparison. tvd/max_abs_err/max_rel_err compare
 * the circuit distribution against the image-sum oracle; wrap_error_estimate
 * measures how far the wrapped density is from the bare density times the
 * normalization factor (the quality of the window choice), independent of
 * the circuit.
 */
struct VerificationReport {
    std::vector<VerificationRow> rows;
    double tvd = 0.0;
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    double wrap_error_estimate = 0.0;
    double max_imag = 0.0;
    double complement_max_abs_err = 0.0;  // discrete runs only
    GateCounts gate_counts;
    std::size_t depth = 0;
};

struct VerifyOptions {
    double tol = 1e-14;
    /// Present when the circuit is a forked form; the comparison then runs on
    /// the output-register marginal.
    std::optional<ForkingLayout> layout;
};

/// Continuous route: circuit distribution vs the image-sum oracle vs P(x)*delta_x.
VerificationReport verify(const DistributionSpec& spec, const SamplingGrid& grid,
                          const Circuit& circuit, const VerifyOptions& options = {});

/**
 * Discrete route: the distribution conditioned on the most significant qubit
 * being |0> must reproduce the probabilities exactly; the |1> branch must
 * carry the complement weights. Row x values are the discrete support points
 * 0..2^(n-1)-1 and the wrap error is identically zero.
 */
VerificationReport verify(const DiscreteSpec& probs, int num_qubits, const Circuit& circuit,
                          const VerifyOptions& options = {});

std::string report_to_json(const VerificationReport& report);
/// Columns: index, x, prob_circuit, prob_oracle, pdf_delta, abs_err.
std::string report_to_csv(const VerificationReport& report);

}  // namespace qprep
