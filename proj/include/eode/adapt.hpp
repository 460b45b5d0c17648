#pragma once

#include "eode/core.hpp"

#include <span>
#include <vector>

namespace eode {

/// A parameter vector that produced an improving trial, with the gain it earned.
struct Success {
    Vec value;
    double delta_f = 0.0;
};

/// Per-species mutation factors and crossover rates, one component per
/// dimension, plus the successes collected during the current generation.
struct AdaptiveState {
    Vec f1;
    Vec f2;
    Vec cr;
    std::vector<Success> f1_successes;
    std::vector<Success> f2_successes;
    std::vector<Success> cr_successes;

    /// Components drawn uniformly from (0, 1).
    static AdaptiveState random(int dim, Rng& rng);

    bool empty() const { return f1.size() == 0; }

    /// Records the current vectors as successful with gain `delta_f` > 0.
    void record_success(double delta_f);
};

/// w_k = df_k / sum(df).
std::vector<double> success_weights(std::span<const double> delta_fs);

/// ((1/|S|) * sum w_k s_k)^(1/1.5). Note the 1/|S| factor on top of
/// normalized weights: this is not an interpolating mean.
double weighted_power_mean(std::span<const double> values, std::span<const double> weights);

/// sum w_k s_k^2 / sum w_k s_k.
double weighted_lehmer_mean(std::span<const double> values, std::span<const double> weights);

enum class MutationFactor { F1, F2 };

/// Lower clamp applied to updated mutation factors.
inline constexpr double kMinMutationFactor = 0.01;

/// Blends the previous factor with the species extent, the remaining budget
/// fraction and (if any) the weighted mean of this generation's successes.
/// Clears the matching success set and stores the result in `state`.
Vec update_mutation_factor(AdaptiveState& state, MutationFactor which, const Vec& species_min,
                           const Vec& species_max, const Vec& fn_lb, const Vec& fn_ub, long fes,
                           long max_fes, Rng& rng);

/// CR = wf * CR_old + (1 - wf) * power mean of successes, wf in [0.9, 1].
Vec update_crossover_rate(AdaptiveState& state, Rng& rng);

}  // namespace eode
