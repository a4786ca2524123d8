#include "qprep/angles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qprep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeadZoneFloor = 1e-300;
constexpr double kRatioSlack = 1e-9;

void check_level_index(int num_qubits, int level, std::uint64_t index) {
    if (level < 1 || level > num_qubits) {
        throw std::invalid_argument("angle level must lie in [1, n]");
    }
    if (index >= (std::uint64_t{1} << (num_qubits - level))) {
        throw std::out_of_range("angle index out of range for level");
    }
}

struct ThetaResult {
    double angle;
    bool degenerate;
};

ThetaResult theta_impl(const DistributionSpec& spec, const SamplingGrid& grid, int level,
                       std::uint64_t index, double tol) {
    check_level_index(grid.num_qubits(), level, index);
    const double x = grid.index_to_x(index);
    const double coarse = periodic_sum(spec, x, std::ldexp(grid.window(), -(level - 1)), tol);
    const double fine = periodic_sum(spec, x, std::ldexp(grid.window(), -level), tol);
    if (fine < kDeadZoneFloor) {
        // Branch carries no probability; any angle is unobservable, 0 keeps
        // the amplitude on the |0> child deterministically.
        return {0.0, true};
    }
    const double ratio = coarse / fine;
    if (ratio < -kRatioSlack || ratio > 1.0 + kRatioSlack) {
        throw std::runtime_error("angle quotient " + std::to_string(ratio) +
                                 " leaves [0,1] beyond rounding; image-sum truncation failure");
    }
    return {2.0 * std::acos(std::sqrt(std::clamp(ratio, 0.0, 1.0))), false};
}

}  // namespace

double compute_delta_x(const DistributionSpec& spec, const SamplingGrid& grid, double tol) {
    const double lattice_sum = periodic_sum(spec, grid.origin(), grid.spacing(), tol);
    if (!(lattice_sum > 0.0) || !std::isfinite(lattice_sum)) {
        throw std::runtime_error("normalization image sum is not positive and finite");
    }
    return 1.0 / lattice_sum;
}

double compute_theta(const DistributionSpec& spec, const SamplingGrid& grid, int level,
                     std::uint64_t index, double tol) {
    return theta_impl(spec, grid, level, index, tol).angle;
}

AngleTable build_angle_table(const DistributionSpec& spec, const SamplingGrid& grid, double tol) {
    const int n = grid.num_qubits();
    AngleTable table;
    table.num_qubits = n;
    table.grid = grid;
    table.theta.resize(static_cast<std::size_t>(n));
    for (int level = 1; level <= n; ++level) {
        auto& row = table.theta[static_cast<std::size_t>(level - 1)];
        row.resize(std::size_t{1} << (n - level));
        for (std::uint64_t i = 0; i < row.size(); ++i) {
            const ThetaResult r = theta_impl(spec, grid, level, i, tol);
            row[i] = r.angle;
            if (r.degenerate) {
                table.degenerate.emplace_back(level, i);
            }
        }
    }
    table.delta_x_norm = compute_delta_x(spec, grid, tol);
    return table;
}

std::vector<double> discrete_theta(const DiscreteSpec& probs) {
    std::vector<double> angles(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        angles[i] = 2.0 * std::acos(std::sqrt(std::clamp(probs[i], 0.0, 1.0)));
    }
    return angles;
}

AngleTable discrete_angle_table(const DiscreteSpec& probs, int num_qubits) {
    if (num_qubits < 2 || num_qubits > kMaxGridQubits) {
        throw std::invalid_argument("discrete table needs at least 2 qubits");
    }
    if (probs.size() != (std::size_t{1} << (num_qubits - 1))) {
        throw std::invalid_argument("discrete table needs 2^(n-1) probabilities");
    }
    AngleTable table;
    table.num_qubits = num_qubits;
    table.theta.resize(static_cast<std::size_t>(num_qubits));
    table.theta[0] = discrete_theta(probs);
    for (int level = 2; level <= num_qubits; ++level) {
        table.theta[static_cast<std::size_t>(level - 1)]
            .assign(std::size_t{1} << (num_qubits - level), kPi / 2.0);
    }
    table.delta_x_norm = 1.0;
    return table;
}

double discrete_theta_numeric(const DiscreteSpec& probs, int num_qubits, int level,
                              std::uint64_t index, double eps) {
    if (num_qubits < 2) {
        throw std::invalid_argument("smoothed discrete angles need at least 2 qubits");
    }
    if (probs.size() != (std::size_t{1} << (num_qubits - 1))) {
        throw std::invalid_argument("probability count must equal 2^(n-1)");
    }
    check_level_index(num_qubits, level, index);
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("eps must be positive and finite");
    }

    // Unit window centered at 0; spike k sits at x(k), its complement partner
    // at x(k + 2^(n-1)).
    const double window = 1.0;
    const double spacing = std::ldexp(window, -num_qubits);
    const double origin = -window / 2.0;
    const double peak = 1.0 / (std::sqrt(2.0 * kPi) * eps);
    if (!std::isfinite(peak)) {
        throw std::domain_error("eps too small: smoothing kernel is not representable, "
                                "use a larger eps");
    }
    const std::uint64_t half = std::uint64_t{1} << (num_qubits - 1);

    const auto smoothed_pdf = [&](double x) {
        double acc = 0.0;
        for (std::uint64_t k = 0; k < half; ++k) {
            const double z0 = (x - (origin + spacing * static_cast<double>(k))) / eps;
            const double z1 = (x - (origin + spacing * static_cast<double>(k + half))) / eps;
            acc += probs[k] * std::exp(-0.5 * z0 * z0) +
                   (1.0 - probs[k]) * std::exp(-0.5 * z1 * z1);
        }
        return acc * peak / static_cast<double>(half);
    };
    // All spikes live inside [-w/2, w/2); images beyond one window of margin
    // cannot contribute.
    const auto image_sum = [&](double x, double period) {
        const auto j_lo = static_cast<long>(std::ceil((-1.5 * window - x) / period));
        const auto j_hi = static_cast<long>(std::floor((1.5 * window - x) / period));
        double acc = 0.0;
        for (long j = j_lo; j <= j_hi; ++j) {
            acc += smoothed_pdf(x + static_cast<double>(j) * period);
        }
        return acc;
    };

    const double x = origin + spacing * static_cast<double>(index);
    const double coarse = image_sum(x, std::ldexp(window, -(level - 1)));
    const double fine = image_sum(x, std::ldexp(window, -level));
    if (!(fine > 0.0) || !std::isfinite(fine) || !std::isfinite(coarse)) {
        throw std::domain_error("smoothed image sums degenerate; use a larger eps");
    }
    return 2.0 * std::acos(std::sqrt(std::clamp(coarse / fine, 0.0, 1.0)));
}

std::string angle_table_to_json(const AngleTable& table) {
    nlohmann::json j;
    j["n"] = table.num_qubits;
    j["delta_x_norm"] = table.delta_x_norm;
    j["theta"] = table.theta;
    if (!table.degenerate.empty()) {
        auto& tags = j["degenerate"] = nlohmann::json::array();
        for (const auto& [level, index] : table.degenerate) {
            tags.push_back({level, index});
        }
    }
    return j.dump(2) + "\n";
}

AngleTable angle_table_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    AngleTable table;
    table.num_qubits = j.at("n").get<int>();
    table.delta_x_norm = j.at("delta_x_norm").get<double>();
    table.theta = j.at("theta").get<std::vector<std::vector<double>>>();
    if (table.num_qubits < 1 || table.num_qubits > kMaxGridQubits ||
        table.theta.size() != static_cast<std::size_t>(table.num_qubits)) {
        throw std::invalid_argument("angle table JSON has inconsistent level count");
    }
    for (int level = 1; level <= table.num_qubits; ++level) {
        if (table.theta[static_cast<std::size_t>(level - 1)].size() !=
            (std::size_t{1} << (table.num_qubits - level))) {
            throw std::invalid_argument("angle table JSON has a mis-sized level");
        }
    }
    if (j.contains("degenerate")) {
        for (const auto& tag : j.at("degenerate")) {
            table.degenerate.emplace_back(tag.at(0).get<int>(), tag.at(1).get<std::uint64_t>());
        }
    }
    return table;
}

}  // namespace qprep
