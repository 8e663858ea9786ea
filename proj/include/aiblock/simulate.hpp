#pragma once

// Seeded samplers for the generative models: positive-stable frailties,
// outer-power Clayton copulas, nested outer-power Clayton (AI-block) models,
// logistic extreme-value copulas, and the random-repetition process.
//
// All copula samplers use the Marshall-Olkin frailty construction. For a
// Laplace transform psi, draw a frailty V with E[exp(-tV)] = psi(t) and iid
// E_j ~ Exp(1); then U_j = psi(E_j / V) has copula with generator psi.
//
// Outer-power Clayton, psi(t) = (1 + t^(1/beta))^(-1/theta):
//   V = G^beta * S, G ~ Gamma(1/theta, 1), S positive stable with index 1/beta,
// since E[exp(-t G^beta S)] = E[exp(-t^(1/beta) G)] = (1 + t^(1/beta))^(-1/theta).
//
// Nested model with common theta, outer beta0, inner beta_g >= beta0:
//   psi0^{-1}(psi_g(t)) = ((1 + t^(1/beta_g)) - 1)^beta0 = t^(beta0/beta_g),
// so the inner frailty given V0 has Laplace transform exp(-V0 t^alpha) with
// alpha = beta0/beta_g, i.e. V_g = V0^(1/alpha) * S_g, S_g stable(alpha).
// Sampling is exact; there is no rejection step.
//
// Logistic (Gumbel-Hougaard) extreme-value copula, psi(t) = exp(-t^(1/beta)):
//   V stable(1/beta) and U_j = exp(-(E_j / V)^(1/beta)).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "aiblock/core.hpp"
#include "aiblock/random.hpp"

namespace aiblock {

namespace detail {

// log S for S with Laplace transform exp(-t^alpha), 0 < alpha < 1
// (Kanter's representation of the Chambers-Mallows-Stuck sampler).
inline double log_positive_stable(double alpha, Rng& rng) {
    const double u = std::numbers::pi * uniform_open(rng);
    const double e = standard_exponential(rng);
    return std::log(std::sin(alpha * u)) - std::log(std::sin(u)) / alpha +
           (1.0 - alpha) / alpha * (std::log(std::sin((1.0 - alpha) * u)) - std::log(e));
}

inline void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidAlpha("stable index must lie in (0, 1]");
}

inline void check_theta_beta(double theta, double beta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw InvalidParam("theta must be > 0");
    if (!(beta >= 1.0) || !std::isfinite(beta)) throw InvalidParam("beta must be >= 1");
}

// (1 + (e/V)^(1/beta))^(-1/theta) with log V supplied.
inline double outer_power_clayton_inverse(double e, double log_v, double theta, double beta) {
    const double w = std::exp((std::log(e) - log_v) / beta);
    return std::exp(-std::log1p(w) / theta);
}

}  // namespace detail

/// Positive stable variate with Laplace transform exp(-t^alpha). alpha = 1
/// returns 1 without consuming randomness.
inline double sample_positive_stable(double alpha, Rng& rng) {
    detail::check_alpha(alpha);
    if (alpha == 1.0) return 1.0;
    return std::exp(detail::log_positive_stable(alpha, rng));
}

/// n x dim uniforms from the outer-power Clayton copula D(.; theta, beta).
inline Matrix sample_outer_power_clayton(double theta, double beta, Index dim, Index n, Rng& rng) {
    detail::check_theta_beta(theta, beta);
    if (dim < 1) throw InvalidParam("dimension must be positive");
    Matrix out(n, dim);
    const double alpha = 1.0 / beta;
    for (Index i = 0; i < n; ++i) {
        double log_v = beta * std::log(standard_gamma(1.0 / theta, rng));
        if (alpha < 1.0) log_v += detail::log_positive_stable(alpha, rng);
        for (Index j = 0; j < dim; ++j)
            out(i, j) = detail::outer_power_clayton_inverse(standard_exponential(rng), log_v, theta, beta);
    }
    return out;
}

/// Outer-power Clayton copula of outer-power Clayton blocks with a common theta.
/// Groups are contiguous, in the order of `group_sizes`.
struct NestedModel {
    double theta = 1.0;
    double beta0 = 1.0;
    std::vector<double> group_betas;
    std::vector<Index> group_sizes;

    NestedModel(double theta_, double beta0_, std::vector<double> betas, std::vector<Index> sizes)
        : theta(theta_), beta0(beta0_), group_betas(std::move(betas)), group_sizes(std::move(sizes)) {
        validate();
    }

    void validate() const {
        detail::check_theta_beta(theta, beta0);
        if (group_betas.empty() || group_betas.size() != group_sizes.size())
            throw InvalidParam("need one beta per group and at least one group");
        for (double b : group_betas)
            if (!(b >= beta0) || !std::isfinite(b))
                throw InvalidParam("group betas must be >= beta0");
        for (Index s : group_sizes)
            if (s < 1) throw InvalidParam("group sizes must be positive");
    }

    Index dimension() const {
        Index d = 0;
        for (Index s : group_sizes) d += s;
        return d;
    }

    Partition partition() const { return Partition::from_sizes(group_sizes); }
};

/// One draw of the nested model written to `row` (length d).
template <typename RowRef>
void sample_nested_row(const NestedModel& model, Rng& rng, RowRef&& row) {
    double log_v0 = model.beta0 * std::log(standard_gamma(1.0 / model.theta, rng));
    if (model.beta0 > 1.0) log_v0 += detail::log_positive_stable(1.0 / model.beta0, rng);
    Index j = 0;
    for (Index g = 0; g < model.group_sizes.size(); ++g) {
        const double beta = model.group_betas[g];
        const double alpha = model.beta0 / beta;
        double log_v = log_v0 / alpha;
        if (alpha < 1.0) log_v += detail::log_positive_stable(alpha, rng);
        for (Index s = 0; s < model.group_sizes[g]; ++s, ++j)
            row(j) = detail::outer_power_clayton_inverse(standard_exponential(rng), log_v,
                                                         model.theta, beta);
    }
}

inline Matrix sample_nested(const NestedModel& model, Index n, Rng& rng) {
    model.validate();
    Matrix out(n, model.dimension());
    for (Index i = 0; i < n; ++i) sample_nested_row(model, rng, out.row(i));
    return out;
}

/// n x dim uniforms from the logistic extreme-value copula with shape beta.
inline Matrix sample_logistic_ev(double beta, Index dim, Index n, Rng& rng) {
    detail::check_theta_beta(1.0, beta);
    if (dim < 1) throw InvalidParam("dimension must be positive");
    Matrix out(n, dim);
    const double alpha = 1.0 / beta;
    for (Index i = 0; i < n; ++i) {
        const double log_v = alpha < 1.0 ? detail::log_positive_stable(alpha, rng) : 0.0;
        for (Index j = 0; j < dim; ++j) {
            const double e = standard_exponential(rng);
            out(i, j) = std::exp(-std::exp((std::log(e) - log_v) / beta));
        }
    }
    return out;
}

enum class Margins { uniform, frechet };

struct RepetitionConfig {
    double p = 1.0;
    Index n = 0;
    NestedModel model;
    Margins margins = Margins::uniform;

    void validate() const {
        if (!(p > 0.0 && p <= 1.0)) throw InvalidParam("innovation probability p must lie in (0, 1]");
        if (n < 1) throw InvalidParam("series length must be positive");
        model.validate();
    }
};

/// Unit Frechet quantile of a uniform, clamped away from 0 and 1.
inline double to_unit_frechet(double u) {
    u = std::clamp(u, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
    return -1.0 / std::log(u);
}

/// Z_0 ~ model; for t >= 1, Z_t is a fresh draw with probability p and a copy
/// of Z_{t-1} otherwise.
inline SeriesMatrix repetition_process(const RepetitionConfig& cfg, Rng& rng) {
    cfg.validate();
    const Index d = cfg.model.dimension();
    Matrix z(cfg.n, d);
    sample_nested_row(cfg.model, rng, z.row(0));
    for (Index t = 1; t < cfg.n; ++t) {
        if (uniform_open(rng) < cfg.p)
            sample_nested_row(cfg.model, rng, z.row(t));
        else
            z.row(t) = z.row(t - 1);
    }
    if (cfg.margins == Margins::frechet) z = z.unaryExpr([](double u) { return to_unit_frechet(u); });
    if (!z.array().isFinite().all()) throw SamplerError("repetition process produced non-finite values");
    return SeriesMatrix(std::move(z));
}

enum class Experiment { E1, E2, E3 };

struct ExperimentModel {
    NestedModel model;
    Partition truth;
};

namespace detail {

// Five group sizes ~ Multinomial(d; 1/2, 1/4, 1/8, 1/16, 1/16), redrawn until
// all are positive.
inline std::vector<Index> five_block_sizes(Index d, Rng& rng) {
    const double q[5] = {0.5, 0.25, 0.125, 0.0625, 0.0625};
    std::vector<Index> sizes(5);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Index left = d;
        double mass = 1.0;
        for (int g = 0; g < 4; ++g) {
            const double prob = std::min(1.0, q[g] / mass);
            std::binomial_distribution<long long> draw(static_cast<long long>(left), prob);
            sizes[g] = static_cast<Index>(draw(rng));
            left -= sizes[g];
            mass -= q[g];
        }
        sizes[4] = left;
        if (std::all_of(sizes.begin(), sizes.end(), [](Index s) { return s > 0; })) return sizes;
    }
    throw SamplerError("could not draw five nonempty groups");
}

}  // namespace detail

/// Generating model and ground-truth partition for the simulation experiments.
/// E1: two equal blocks (d even). E2: five blocks with multinomial sizes
/// (d >= 5). E3: E2 on d - 5 variables plus five trailing singletons
/// (d >= 10). theta = 1 and beta0 = 1 throughout.
inline ExperimentModel build_experiment_model(Experiment experiment, Index d, double beta, Rng& rng) {
    if (!(beta >= 1.0)) throw InvalidParam("beta must be >= 1");
    std::vector<Index> sizes;
    switch (experiment) {
        case Experiment::E1:
            if (d < 2 || d % 2 != 0) throw IncompatibleDimension("E1 needs an even d >= 2");
            sizes = {d / 2, d / 2};
            break;
        case Experiment::E2:
            if (d < 5) throw IncompatibleDimension("E2 needs d >= 5");
            sizes = detail::five_block_sizes(d, rng);
            break;
        case Experiment::E3:
            if (d < 10) throw IncompatibleDimension("E3 needs d >= 10");
            sizes = detail::five_block_sizes(d - 5, rng);
            sizes.insert(sizes.end(), 5, Index{1});
            break;
    }
    NestedModel model(1.0, 1.0, std::vector<double>(sizes.size(), beta), sizes);
    Partition truth = model.partition();
    return {std::move(model), std::move(truth)};
}

inline std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::E1: return "E1";
        case Experiment::E2: return "E2";
        case Experiment::E3: return "E3";
    }
    return "?";
}

inline Experiment parse_experiment(const std::string& s) {
    if (s == "E1") return Experiment::E1;
    if (s == "E2") return Experiment::E2;
    if (s == "E3") return Experiment::E3;
    throw InputError("unknown experiment '" + s + "' (expected E1, E2 or E3)");
}

}  // namespace aiblock
