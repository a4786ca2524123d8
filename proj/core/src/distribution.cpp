#include "qprep/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>

namespace qprep {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

void require_positive(double v, const char* what) {
    require_finite(v, what);
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Upper-tail mass from X to infinity; X must lie at or beyond the mode.
double tail_mass(const DistributionSpec& spec, double x) {
    return std::visit(
        Overloaded{
            [&](const Gaussian& g) {
                return 0.5 * std::erfc((x - g.mu) / (g.sigma * std::numbers::sqrt2));
            },
            [&](const Laplace& l) { return 0.5 * std::exp(-(x - l.mu) / l.b); },
            [&](const Cauchy& c) { return std::atan(c.gamma / (x - c.x0)) / kPi; },
            [&](const StudentT& t) {
                boost::math::students_t_distribution<double> dist(t.nu);
                return boost::math::cdf(boost::math::complement(dist, x));
            },
        },
        spec.kind());
}

// |P'(x)|, used to bound the error of replacing a tail sum by an integral.
double pdf_slope(const DistributionSpec& spec, double x) {
    const double p = pdf_at(spec, x);
    return std::visit(
        Overloaded{
            [&](const Gaussian& g) { return p * std::abs(x - g.mu) / (g.sigma * g.sigma); },
            [&](const Laplace& l) { return p / l.b; },
            [&](const Cauchy& c) {
                const double d = x - c.x0;
                return p * 2.0 * std::abs(d) / (d * d + c.gamma * c.gamma);
            },
            [&](const StudentT& t) {
                return p * (t.nu + 1.0) * std::abs(x) / (t.nu + x * x);
            },
        },
        spec.kind());
}

}  // namespace

DistributionSpec::DistributionSpec(Gaussian g) : kind_(g) {
    require_finite(g.mu, "gaussian mu");
    require_positive(g.sigma, "gaussian sigma");
    norm_ = 1.0 / (g.sigma * std::sqrt(2.0 * kPi));
}

DistributionSpec::DistributionSpec(Laplace l) : kind_(l) {
    require_finite(l.mu, "laplace mu");
    require_positive(l.b, "laplace b");
    norm_ = 0.5 / l.b;
}

DistributionSpec::DistributionSpec(Cauchy c) : kind_(c) {
    require_finite(c.x0, "cauchy x0");
    require_positive(c.gamma, "cauchy gamma");
    norm_ = 1.0 / (kPi * c.gamma);
}

DistributionSpec::DistributionSpec(StudentT t) : kind_(t) {
    require_positive(t.nu, "student-t nu");
    norm_ = std::exp(std::lgamma(0.5 * (t.nu + 1.0)) - std::lgamma(0.5 * t.nu)) /
            std::sqrt(t.nu * kPi);
}

std::string DistributionSpec::name() const {
    return std::visit(Overloaded{
                          [](const Gaussian&) { return std::string("gaussian"); },
                          [](const Laplace&) { return std::string("laplace"); },
                          [](const Cauchy&) { return std::string("cauchy"); },
                          [](const StudentT&) { return std::string("student_t"); },
                      },
                      kind_);
}

std::string DistributionSpec::describe() const {
    return std::visit(
        Overloaded{
            [](const Gaussian& g) {
                return "gaussian(mu=" + format_value(g.mu) + ",sigma=" + format_value(g.sigma) + ")";
            },
            [](const Laplace& l) {
                return "laplace(mu=" + format_value(l.mu) + ",b=" + format_value(l.b) + ")";
            },
            [](const Cauchy& c) {
                return "cauchy(x0=" + format_value(c.x0) + ",gamma=" + format_value(c.gamma) + ")";
            },
            [](const StudentT& t) { return "student_t(nu=" + format_value(t.nu) + ")"; },
        },
        kind_);
}

double DistributionSpec::scale() const {
    return std::visit(Overloaded{
                          [](const Gaussian& g) { return g.sigma; },
                          [](const Laplace& l) { return l.b; },
                          [](const Cauchy& c) { return c.gamma; },
                          [](const StudentT&) { return 1.0; },
                      },
                      kind_);
}

bool DistributionSpec::heavy_tailed() const {
    return std::holds_alternative<Cauchy>(kind_) || std::holds_alternative<StudentT>(kind_);
}

double pdf_at(const DistributionSpec& spec, double x) {
    return std::visit(
        Overloaded{
            [&](const Gaussian& g) {
                const double z = (x - g.mu) / g.sigma;
                return spec.norm_ * std::exp(-0.5 * z * z);
            },
            [&](const Laplace& l) { return spec.norm_ * std::exp(-std::abs(x - l.mu) / l.b); },
            [&](const Cauchy& c) {
                const double z = (x - c.x0) / c.gamma;
                return spec.norm_ / (1.0 + z * z);
            },
            [&](const StudentT& t) {
                return spec.norm_ * std::exp(-0.5 * (t.nu + 1.0) * std::log1p(x * x / t.nu));
            },
        },
        spec.kind());
}

double mode(const DistributionSpec& spec) {
    return std::visit(Overloaded{
                          [](const Gaussian& g) { return g.mu; },
                          [](const Laplace& l) { return l.mu; },
                          [](const Cauchy& c) { return c.x0; },
                          [](const StudentT&) { return 0.0; },
                      },
                      spec.kind());
}

double periodic_sum(const DistributionSpec& spec, double x, double period, double tol) {
    require_finite(x, "x");
    require_positive(period, "period");
    require_positive(tol, "tol");

    constexpr long kMaxShells = 1'000'000;
    const double center = mode(spec);

    // Kahan-compensated accumulation; shells are nonnegative but the sum can
    // span many orders of magnitude when the period is small.
    double sum = pdf_at(spec, x);
    double comp = 0.0;
    const auto add = [&](double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };

    double shell = 0.0;
    double tail_err = 0.0;
    for (long j = 1; j <= kMaxShells; ++j) {
        const double hi = x + static_cast<double>(j) * period;
        const double lo = x - static_cast<double>(j) * period;
        shell = pdf_at(spec, hi) + pdf_at(spec, lo);
        add(shell);

        // The remainder beyond the last shell is folded in as a tail
        // integral, so the stopping rule bounds the midpoint-rule error of
        // that integral rather than the shell size itself; a pure shell
        // criterion can never certify power-law tails within the cap. Both
        // cut points must clear the mode for the tails to be tails, and at
        // least three shells are always examined.
        if (j < 3 || hi <= center || lo >= center) {
            continue;
        }
        const double cut_hi = hi + 0.5 * period;
        const double cut_lo = lo - 0.5 * period;
        tail_err = (period / 24.0) * (pdf_slope(spec, cut_hi) + pdf_slope(spec, cut_lo));
        if (tail_err > 0.5 * tol * sum) {
            continue;
        }
        const double tail = (tail_mass(spec, cut_hi) + tail_mass(spec, 2.0 * center - cut_lo)) / period;
        add(tail);
        return sum;
    }

    const double achieved =
        sum > 0.0 ? (shell + tail_err) / sum : std::numeric_limits<double>::infinity();
    throw TruncationError("periodic_sum: " + spec.describe() + " did not converge to tol=" +
                              format_value(tol) + " within 10^6 shells (achieved " +
                              format_value(achieved) + ")",
                          achieved);
}

WindowChoice default_window(const DistributionSpec& spec, int /*num_qubits*/) {
    if (spec.heavy_tailed()) {
        return {40.0 * spec.scale(), true};
    }
    return {12.0 * spec.scale(), false};
}

DiscreteSpec::DiscreteSpec(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw std::invalid_argument("discrete spec needs at least one probability");
    }
    double sum = 0.0;
    for (double& p : probs_) {
        if (!std::isfinite(p) || p < -1e-9 || p > 1.0 + 1e-9) {
            throw std::invalid_argument("discrete probability outside [0,1]");
        }
        p = std::clamp(p, 0.0, 1.0);
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("discrete probabilities must sum to 1 (got " +
                                    format_value(sum) + ")");
    }
    std::size_t padded = 1;
    while (padded < probs_.size()) {
        padded <<= 1;
    }
    probs_.resize(padded, 0.0);
}

DiscreteSpec make_binomial(int l, double p) {
    if (l < 0) {
        throw std::invalid_argument("binomial l must be nonnegative");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("binomial p must lie in [0,1]");
    }
    std::vector<double> probs(static_cast<std::size_t>(l) + 1, 0.0);
    if (p == 0.0) {
        probs.front() = 1.0;
    } else if (p == 1.0) {
        probs.back() = 1.0;
    } else {
        const double log_p = std::log(p);
        const double log_q = std::log1p(-p);
        const double lg_n = std::lgamma(static_cast<double>(l) + 1.0);
        for (int k = 0; k <= l; ++k) {
            probs[k] = std::exp(lg_n - std::lgamma(static_cast<double>(k) + 1.0) -
                                std::lgamma(static_cast<double>(l - k) + 1.0) + k * log_p +
                                (l - k) * log_q);
        }
    }
    return DiscreteSpec(std::move(probs));
}

std::pair<std::vector<double>, std::vector<double>>
map_lognormal_support(const std::vector<double>& xs, double delta_x) {
    std::vector<double> points(xs.size());
    std::vector<double> widths(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        points[i] = std::exp(xs[i]);
        widths[i] = points[i] * delta_x;
    }
    return {std::move(points), std::move(widths)};
}

}  // namespace qprep
