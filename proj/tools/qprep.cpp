// qprep: synthesize, simulate, verify, fork, and sweep state-preparation
// circuits for continuous and discrete probability distributions.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 qubit budget
// exceeded, 4 verification tolerance failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qprep/angles.hpp"
#include "qprep/circuit.hpp"
#include "qprep/circuit_io.hpp"
#include "qprep/distribution.hpp"
#include "qprep/forking.hpp"
#include "qprep/grid.hpp"
#include "qprep/simulator.hpp"
#include "qprep/verify.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitTolerance = 4;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AnySpec = std::variant<qprep::DistributionSpec, qprep::DiscreteSpec>;

int qubit_budget() {
    int budget = qprep::kMaxSimQubits;
    if (const char* env = std::getenv("QPREP_MAX_QUBITS")) {
        try {
            budget = std::min(budget, std::stoi(env));
        } catch (const std::exception&) {
            throw std::invalid_argument("QPREP_MAX_QUBITS is not an integer");
        }
        if (budget < 1) {
            throw std::invalid_argument("QPREP_MAX_QUBITS must be at least 1");
        }
    }
    return budget;
}

void require_known_keys(const nlohmann::json& j, std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : keys) {
            known = known || key == k;
        }
        if (!known) {
            throw std::invalid_argument("unknown field \"" + key + "\" in distribution spec");
        }
    }
}

struct ParsedDist {
    AnySpec spec;
    std::string description;
};

ParsedDist parse_distribution(const std::string& arg) {
    std::string text = arg;
    if (!text.empty() && text.front() != '{') {
        std::ifstream file(arg);
        if (!file.good()) {
            throw std::invalid_argument("cannot read distribution file: " + arg);
        }
        std::stringstream buffer;
        buffer << file.rdbuf();
        text = buffer.str();
    }
    const auto j = nlohmann::json::parse(text);
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "gaussian") {
        require_known_keys(j, {"kind", "mu", "sigma"});
        auto spec = qprep::DistributionSpec::gaussian(j.at("mu").get<double>(),
                                                      j.at("sigma").get<double>());
        std::string description = spec.describe();
        return {spec, std::move(description)};
    }
    if (kind == "laplace") {
        require_known_keys(j, {"kind", "mu", "b"});
        auto spec = qprep::DistributionSpec::laplace(j.at("mu").get<double>(),
                                                     j.at("b").get<double>());
        std::string description = spec.describe();
        return {spec, std::move(description)};
    }
    if (kind == "cauchy") {
        require_known_keys(j, {"kind", "x0", "gamma"});
        auto spec = qprep::DistributionSpec::cauchy(j.at("x0").get<double>(),
                                                    j.at("gamma").get<double>());
        std::string description = spec.describe();
        return {spec, std::move(description)};
    }
    if (kind == "studentt" || kind == "student_t") {
        require_known_keys(j, {"kind", "nu"});
        auto spec = qprep::DistributionSpec::student_t(j.at("nu").get<double>());
        std::string description = spec.describe();
        return {spec, std::move(description)};
    }
    if (kind == "discrete") {
        require_known_keys(j, {"kind", "probs"});
        qprep::DiscreteSpec spec(j.at("probs").get<std::vector<double>>());
        std::string description = "discrete(" + std::to_string(spec.size()) + ")";
        return {spec, std::move(description)};
    }
    if (kind == "binomial") {
        require_known_keys(j, {"kind", "l", "p"});
        char description[48];
        std::snprintf(description, sizeof(description), "binomial(l=%d,p=%.17g)",
                      j.at("l").get<int>(), j.at("p").get<double>());
        return {qprep::make_binomial(j.at("l").get<int>(), j.at("p").get<double>()), description};
    }
    throw std::invalid_argument("unknown distribution kind \"" + kind + "\"");
}

struct RunConfig {
    std::string dist;
    int qubits = 0;
    std::string window = "auto";
    double zeta = 0.0;
    bool zeta_given = false;
    std::uint64_t zeta_seed = 0;
    std::optional<double> center_override;
    double tol = 1e-14;
    bool fork = false;
    bool lower = false;
    bool qasm_xconj = false;
    double tvd_tol = 1e-10;
    double discrete_tol = 1e-12;
    std::string qasm_path;
    std::string json_path;
    std::string csv_path;
    std::string angles_path;
    int n_min = 2;
    int n_max = 10;
};

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--dist", cfg.dist, "Distribution as inline JSON or a path to a JSON file")
        ->required();
    cmd->add_option("--qubits", cfg.qubits,
                    "Register size n (derived from the length for discrete specs)");
    cmd->add_option("--window", cfg.window, "Window width in distribution units, or \"auto\"");
    cmd->add_option("--zeta", cfg.zeta, "Window shift in [0, 1/2^(n-1))")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--zeta-seed", cfg.zeta_seed,
                    "Draw zeta from this seed; 0 keeps the window centered");
    cmd->add_option("--center-override", cfg.center_override,
                    "Center the window here instead of at the distribution mode");
    cmd->add_option("--tol", cfg.tol, "Relative tolerance of the image sums");
    cmd->add_flag("--fork", cfg.fork, "Rewrite into the forked (tree) form");
    cmd->add_flag("--lower", cfg.lower, "Lower to the {ry,h,x,cnot,cswap} basis");
    cmd->add_flag("--qasm-xconj", cfg.qasm_xconj,
                  "Emit negative controls as x conjugations instead of negctrl");
    cmd->add_option("--qasm", cfg.qasm_path, "Write OpenQASM 3 here");
    cmd->add_option("--json", cfg.json_path, "Write the primary JSON artifact here");
    cmd->add_option("--csv", cfg.csv_path, "Write CSV output here");
    cmd->add_option("--emit-angles", cfg.angles_path, "Write the angle table JSON here");
}

double resolve_zeta(const RunConfig& cfg, int n) {
    if (cfg.zeta_given) {
        return cfg.zeta;
    }
    if (cfg.zeta_seed != 0) {
        std::mt19937_64 rng(cfg.zeta_seed);
        std::uniform_real_distribution<double> dist(0.0, std::ldexp(1.0, -(n - 1)));
        return dist(rng);
    }
    return 0.0;
}

double resolve_window(const RunConfig& cfg, const qprep::DistributionSpec& spec, bool* loose) {
    if (cfg.window == "auto") {
        const auto choice = qprep::default_window(spec, cfg.qubits);
        *loose = choice.loose_tail;
        return choice.width;
    }
    *loose = false;
    return std::stod(cfg.window);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << content;
}

struct Synthesis {
    qprep::AngleTable table;
    qprep::Circuit circuit;
    std::optional<qprep::ForkingLayout> layout;
    std::optional<qprep::SamplingGrid> grid;
    int qubits;
};

Synthesis synthesize(const RunConfig& cfg, const ParsedDist& parsed) {
    Synthesis result{.table = {}, .circuit = qprep::Circuit(1), .layout = {}, .grid = {}, .qubits = 0};
    const AnySpec& spec = parsed.spec;

    if (const auto* continuous = std::get_if<qprep::DistributionSpec>(&spec)) {
        if (cfg.qubits < 1) {
            throw std::invalid_argument("--qubits is required for continuous distributions");
        }
        bool loose = false;
        const double window = resolve_window(cfg, *continuous, &loose);
        const double center = cfg.center_override.value_or(qprep::mode(*continuous));
        const qprep::SamplingGrid grid(cfg.qubits, window, resolve_zeta(cfg, cfg.qubits), center);
        if (loose) {
            std::fprintf(stderr,
                         "note: heavy-tailed distribution; the window wraps only loosely\n");
        }
        result.table = qprep::build_angle_table(*continuous, grid, cfg.tol);
        result.grid = grid;
        result.qubits = cfg.qubits;
    } else {
        const auto& discrete = std::get<qprep::DiscreteSpec>(spec);
        int n = 1;
        while ((std::size_t{1} << (n - 1)) < discrete.size()) {
            ++n;
        }
        if (cfg.qubits != 0 && cfg.qubits != n) {
            throw std::invalid_argument("--qubits " + std::to_string(cfg.qubits) +
                                        " does not match the discrete length (needs " +
                                        std::to_string(n) + ")");
        }
        if (n < 2) {
            throw std::invalid_argument("discrete synthesis needs at least 2 probabilities");
        }
        result.table = qprep::discrete_angle_table(discrete, n);
        result.qubits = n;
    }

    if (cfg.fork) {
        auto [forked, layout] = qprep::fork_transform(result.table);
        result.circuit = std::move(forked);
        result.layout = std::move(layout);
    } else if (result.grid) {
        result.circuit = qprep::build_upsampling_circuit(result.table);
    } else {
        const auto& discrete = std::get<qprep::DiscreteSpec>(spec);
        result.circuit = qprep::build_discrete_circuit(qprep::discrete_theta(discrete),
                                                       result.qubits);
    }
    if (cfg.lower) {
        result.circuit = qprep::lower_to_basis(result.circuit);
    }
    result.circuit.metadata().distribution = parsed.description;
    return result;
}

void check_budget(int qubits) {
    if (qubits > qubit_budget()) {
        throw BudgetExceeded("simulating " + std::to_string(qubits) +
                             " qubits exceeds the budget of " + std::to_string(qubit_budget()));
    }
}

std::string circuit_document(const Synthesis& synth) {
    std::string doc = qprep::circuit_to_json(synth.circuit);
    if (synth.layout) {
        // Merge the layout object into the circuit document.
        auto j = nlohmann::json::parse(doc);
        j["layout"] = nlohmann::json::parse(qprep::forking_layout_to_json(*synth.layout))["layout"];
        doc = j.dump(2) + "\n";
    }
    return doc;
}

int cmd_synth(const RunConfig& cfg) {
    const Synthesis synth = synthesize(cfg, parse_distribution(cfg.dist));
    if (!cfg.json_path.empty()) {
        write_file(cfg.json_path, circuit_document(synth));
    }
    if (!cfg.qasm_path.empty()) {
        write_file(cfg.qasm_path,
                   qprep::export_qasm(synth.circuit, {.use_negctrl = !cfg.qasm_xconj}));
    }
    if (!cfg.angles_path.empty()) {
        write_file(cfg.angles_path, qprep::angle_table_to_json(synth.table));
    }
    const auto stats = qprep::depth_and_counts(synth.circuit);
    std::printf("synthesized %d-qubit circuit: %zu gates, depth %zu\n", synth.circuit.num_qubits(),
                stats.counts.total(), stats.depth);
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    const Synthesis synth = synthesize(cfg, parse_distribution(cfg.dist));
    check_budget(synth.circuit.num_qubits());
    const qprep::StateVector sv = qprep::simulate(synth.circuit);
    const std::vector<double> probs =
        synth.layout ? qprep::marginal(sv, synth.layout->output_register) : sv.probabilities();

    std::string csv = "index,x,prob\n";
    char line[96];
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double x = synth.grid ? synth.grid->index_to_x(i) : static_cast<double>(i);
        std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g\n", i, x, probs[i]);
        csv += line;
    }
    if (!cfg.csv_path.empty()) {
        write_file(cfg.csv_path, csv);
    }
    if (!cfg.json_path.empty()) {
        nlohmann::json j;
        j["probabilities"] = probs;
        write_file(cfg.json_path, j.dump(2) + "\n");
    }
    if (cfg.csv_path.empty() && cfg.json_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const ParsedDist parsed = parse_distribution(cfg.dist);
    const AnySpec& spec = parsed.spec;
    const Synthesis synth = synthesize(cfg, parsed);
    check_budget(synth.circuit.num_qubits());

    qprep::VerifyOptions options;
    options.tol = cfg.tol;
    options.layout = synth.layout;

    qprep::VerificationReport report;
    bool pass = false;
    if (const auto* continuous = std::get_if<qprep::DistributionSpec>(&spec)) {
        report = qprep::verify(*continuous, *synth.grid, synth.circuit, options);
        pass = report.tvd <= cfg.tvd_tol;
    } else {
        report = qprep::verify(std::get<qprep::DiscreteSpec>(spec), synth.qubits, synth.circuit,
                               options);
        pass = report.max_abs_err <= cfg.discrete_tol;
    }

    if (!cfg.json_path.empty()) {
        write_file(cfg.json_path, qprep::report_to_json(report));
    }
    if (!cfg.csv_path.empty()) {
        write_file(cfg.csv_path, qprep::report_to_csv(report));
    }
    // Success is silent; the reports carry the numbers.
    if (!pass) {
        std::fprintf(stderr, "tolerance failure: tvd %.3e, max abs err %.3e, wrap error %.3e\n",
                     report.tvd, report.max_abs_err, report.wrap_error_estimate);
        return kExitTolerance;
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const ParsedDist parsed = parse_distribution(cfg.dist);
    const auto* continuous = std::get_if<qprep::DistributionSpec>(&parsed.spec);
    if (continuous == nullptr) {
        throw std::invalid_argument("sweep requires a continuous distribution");
    }
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) {
        throw std::invalid_argument("sweep needs 1 <= n-min <= n-max");
    }
    check_budget(cfg.n_max);

    // The shift is held fixed across the sweep, so a seeded draw must respect
    // the tightest (largest-n) validity range.
    const double zeta = resolve_zeta(cfg, cfg.n_max);

    std::string csv = "n,delta_x,f_nyquist,delta_x_norm,tvd,wrap_error\n";
    char line[160];
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        bool loose = false;
        RunConfig local = cfg;
        local.qubits = n;
        const double window = resolve_window(local, *continuous, &loose);
        const double center = cfg.center_override.value_or(qprep::mode(*continuous));
        const qprep::SamplingGrid grid(n, window, zeta, center);
        const auto table = qprep::build_angle_table(*continuous, grid, cfg.tol);
        const auto report = qprep::verify(*continuous, grid,
                                          qprep::build_upsampling_circuit(table), {cfg.tol, {}});
        std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, grid.spacing(),
                      grid.nyquist(), table.delta_x_norm, report.tvd, report.wrap_error_estimate);
        csv += line;
    }
    if (!cfg.csv_path.empty()) {
        write_file(cfg.csv_path, csv);
    } else {
        std::fputs(csv.c_str(), stdout);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"State-preparation circuit synthesis and verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto* synth = app.add_subcommand("synth", "Build a circuit and write its artifacts");
    add_common_options(synth, cfg);
    auto* simulate = app.add_subcommand("simulate", "Build and simulate, emitting probabilities");
    add_common_options(simulate, cfg);
    auto* verify = app.add_subcommand("verify", "Simulate and compare against the oracles");
    add_common_options(verify, cfg);
    verify->add_option("--tvd-tol", cfg.tvd_tol, "Largest acceptable total variation distance");
    verify->add_option("--max-abs-tol", cfg.discrete_tol,
                       "Largest acceptable per-entry error for discrete runs");
    auto* fork = app.add_subcommand("fork", "Synthesize directly in the forked form");
    add_common_options(fork, cfg);
    auto* sweep = app.add_subcommand("sweep", "Resolution sweep at fixed window and shift");
    add_common_options(sweep, cfg);
    sweep->add_option("--n-min", cfg.n_min, "First register size");
    sweep->add_option("--n-max", cfg.n_max, "Last register size");

    CLI11_PARSE(app, argc, argv);
    cfg.zeta_given = synth->count("--zeta") || simulate->count("--zeta") ||
                     verify->count("--zeta") || fork->count("--zeta") || sweep->count("--zeta");

    try {
        if (synth->parsed()) {
            return cmd_synth(cfg);
        }
        if (simulate->parsed()) {
            return cmd_simulate(cfg);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg);
        }
        if (fork->parsed()) {
            RunConfig forked = cfg;
            forked.fork = true;
            return cmd_synth(forked);
        }
        if (sweep->parsed()) {
            return cmd_sweep(cfg);
        }
    } catch (const BudgetExceeded& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitBudget;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitConfig;
    }
    return 0;
}
