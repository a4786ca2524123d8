#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qprep {

// Parametric continuous densities supported on the whole real line.
struct Gaussian {
    double mu;
    double sigma;
};
struct Laplace {
    double mu;
    double b;
};
struct Cauchy {
    double x0;
    double gamma;
};
struct StudentT {
    double nu;
};

/**
 * A validated, immutable continuous distribution. All operations on it are
 * pure functions; instances can be shared freely across threads.
 */
class DistributionSpec {
public:
    using Kind = std::variant<Gaussian, Laplace, Cauchy, StudentT>;

    explicit DistributionSpec(Gaussian g);
    explicit DistributionSpec(Laplace l);
    explicit DistributionSpec(Cauchy c);
    explicit DistributionSpec(StudentT t);

    static DistributionSpec gaussian(double mu, double sigma) { return DistributionSpec(Gaussian{mu, sigma}); }
    static DistributionSpec laplace(double mu, double b) { return DistributionSpec(Laplace{mu, b}); }
    static DistributionSpec cauchy(double x0, double gamma) { return DistributionSpec(Cauchy{x0, gamma}); }
    static DistributionSpec student_t(double nu) { return DistributionSpec(StudentT{nu}); }

    const Kind& kind() const { return kind_; }

    /// Lowercase kind name, e.g. "gaussian".
    std::string name() const;
    /// Deterministic one-line description, e.g. "gaussian(mu=0,sigma=1)".
    std::string describe() const;

    /// Characteristic width: sigma, b, gamma, or 1 for Student's t.
    double scale() const;
    /// True for kinds whose tails decay polynomially (Cauchy, Student's t).
    bool heavy_tailed() const;

private:
    Kind kind_;
    double norm_;  // cached normalization constant of the density

    friend double pdf_at(const DistributionSpec& spec, double x);
};

/// Density value P(x); nonnegative and finite for all finite x.
double pdf_at(const DistributionSpec& spec, double x);

/// Location of the density maximum.
double mode(const DistributionSpec& spec);

/// Thrown when an image sum hits the shell cap before reaching its tolerance.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double achieved_bound)
        : std::runtime_error(what), achieved_bound_(achieved_bound) {}

    /// Relative bound actually reached when the cap was hit.
    double achieved_bound() const { return achieved_bound_; }

private:
    double achieved_bound_;
};

/**
 * Periodic image sum: sum over all integers j of P(x + j*period).
 *
 * Shells j = 0, +-1, +-2, ... are accumulated until the neglected remainder
 * is below tol relative to the accumulated value; the remainder beyond the
 * last shell is folded in as a closed-form tail integral so that heavy-tailed
 * kinds converge too. Throws TruncationError if 10^6 shells are not enough.
 */
double periodic_sum(const DistributionSpec& spec, double x, double period, double tol = 1e-14);

struct WindowChoice {
    double width;
    bool loose_tail;  // set when the wrap-around of the window is only loosely suppressed
};

/// Default capture window: 12*scale for Gaussian/Laplace, 40*scale (flagged) for heavy tails.
WindowChoice default_window(const DistributionSpec& spec, int num_qubits);

/**
 * A normalized vector of probabilities with power-of-two length. Shorter
 * inputs are zero-padded at the high-index end.
 */
class DiscreteSpec {
public:
    explicit DiscreteSpec(std::vector<double> probs);

    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }

private:
    std::vector<double> probs_;
};

/// Binomial probabilities for l trials with success probability p, zero-padded.
DiscreteSpec make_binomial(int l, double p);

/// Exponential support map: points y_i = e^{x_i} with widths e^{x_i} * delta_x.
std::pair<std::vector<double>, std::vector<double>>
map_lognormal_support(const std::vector<double>& xs, double delta_x);

}  // namespace qprep
