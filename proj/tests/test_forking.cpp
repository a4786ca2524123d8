#include <doctest.h>

#include <set>

#include "qprep/forking.hpp"
#include "qprep/simulator.hpp"

using namespace qprep;

namespace {

AngleTable gaussian_table(int n) {
    const auto gauss = DistributionSpec::gaussian(0.0, 1.0);
    return build_angle_table(gauss, SamplingGrid(n, 12.0, 0.0, 0.0));
}

double forked_vs_sequential_tvd(const AngleTable& table) {
    const auto sequential = simulate(build_upsampling_circuit(table)).probabilities();
    const auto [forked, layout] = fork_transform(table);
    const auto routed = marginal(simulate(forked), layout.output_register);
    return total_variation_distance(routed, sequential);
}

}  // namespace

TEST_SUITE_BEGIN("forking");

TEST_CASE("degenerate single-qubit tree") {
    AngleTable table;
    table.num_qubits = 1;
    table.theta = {{0.7}};
    const auto [circuit, layout] = fork_transform(table);
    CHECK(circuit.num_qubits() == 1);
    REQUIRE(circuit.num_gates() == 1);
    CHECK(circuit.gates()[0].kind == GateKind::Ry);
    CHECK(layout.tree_size == 1);
    CHECK(layout.output_register == std::vector<int>{0});
}

TEST_CASE("two-qubit tree structure") {
    const auto table = gaussian_table(2);
    const auto [circuit, layout] = fork_transform(table);
    CHECK(circuit.num_qubits() == 3);
    const auto stats = depth_and_counts(circuit);
    CHECK(stats.counts.ry == 3);
    CHECK(stats.counts.cswap == 1);
    CHECK(layout.output_register == std::vector<int>{0, 1});

    CHECK(forked_vs_sequential_tvd(table) <= 1e-10);
}

TEST_CASE("forked distribution equals the sequential one") {
    CHECK(forked_vs_sequential_tvd(gaussian_table(1)) <= 1e-10);
    for (int n = 2; n <= 4; ++n) {
        CHECK(forked_vs_sequential_tvd(gaussian_table(n)) <= 1e-10);

        const auto laplace = DistributionSpec::laplace(0.0, 1.0);
        const auto ltable = build_angle_table(laplace, SamplingGrid(n, 12.0, 0.0, 0.0));
        CHECK(forked_vs_sequential_tvd(ltable) <= 1e-10);
    }
}

TEST_CASE("forked discrete distribution equals the sequential one") {
    const int lengths[] = {1, 3, 7};
    for (int l : lengths) {
        const auto probs = make_binomial(l, 0.4);
        int n = 1;
        while ((std::size_t{1} << (n - 1)) < probs.size()) {
            ++n;
        }
        const auto table = discrete_angle_table(probs, n);
        CHECK(forked_vs_sequential_tvd(table) <= 1e-10);
    }
}

TEST_CASE("rotation layer acts on pairwise distinct qubits") {
    const auto table = gaussian_table(4);
    const auto [circuit, layout] = fork_transform(table);
    std::set<int> seen;
    std::size_t rotations = 0;
    for (const Gate& gate : circuit.gates()) {
        if (gate.kind != GateKind::Ry) {
            break;
        }
        CHECK(gate.controls.empty());
        CHECK(seen.insert(gate.targets[0]).second);
        ++rotations;
    }
    CHECK(rotations == layout.tree_size);

    const auto report = fork_depth_report(circuit, layout);
    CHECK(report.rotation_layer_depth == 1);
}

TEST_CASE("width and depth laws") {
    // Depth pins measured at the first verified build: 1 + n(n-1)/2.
    const std::size_t expected_depth[] = {0, 1, 2, 4, 7};
    const std::size_t expected_cswaps[] = {0, 0, 1, 4, 11};
    for (int n = 1; n <= 4; ++n) {
        const auto table = gaussian_table(n);
        const auto [circuit, layout] = fork_transform(table);
        CHECK(circuit.num_qubits() == (1 << n) - 1);

        const auto report = fork_depth_report(circuit, layout);
        CHECK(report.depth == expected_depth[n]);
        CHECK(report.cswap_count == expected_cswaps[n]);
        if (n >= 2) {
            CHECK(report.depth_over_n_squared <= 0.5);
        }

        // This construction crosses fewer swaps than the d - 1 figure quoted
        // for the layout family; the report keeps both numbers visible.
        CHECK(report.reference_cswap_count == layout.tree_size - 1);
        CHECK(report.matches_reference_count == (report.cswap_count == layout.tree_size - 1));
    }
}

TEST_CASE("optional control qubit only widens the register") {
    const auto table = gaussian_table(3);
    const auto [plain, plain_layout] = fork_transform(table);
    const auto [wide, wide_layout] = fork_transform(table, {.include_control_qubit = true});
    CHECK(wide.num_qubits() == plain.num_qubits() + 1);
    CHECK(wide_layout.has_control_qubit);
    CHECK(wide_layout.control_qubit == plain.num_qubits());
    CHECK(wide.num_gates() == plain.num_gates());

    const auto routed = marginal(simulate(wide), wide_layout.output_register);
    const auto sequential = simulate(build_upsampling_circuit(table)).probabilities();
    CHECK(total_variation_distance(routed, sequential) <= 1e-10);
}

TEST_CASE("layout serialization") {
    const auto table = gaussian_table(3);
    const auto [circuit, layout] = fork_transform(table);
    const std::string json = forking_layout_to_json(layout);
    CHECK(json.find("\"n\": 3") != std::string::npos);
    CHECK(json.find("\"d\": 7") != std::string::npos);
    CHECK(json.find("\"output_register\"") != std::string::npos);
}

TEST_CASE("synthesis cap") {
    AngleTable table;
    table.num_qubits = 13;
    table.theta.resize(13);
    CHECK_THROWS_AS(fork_transform(table), std::invalid_argument);
}

TEST_SUITE_END();
