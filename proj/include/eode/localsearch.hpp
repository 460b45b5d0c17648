#pragma once

#include "eode/bench.hpp"
#include "eode/core.hpp"

#include <optional>
#include <span>

namespace eode {

struct Species;

struct NicheMoments {
    Vec mean;
    Vec std;
};

/// Componentwise sample mean and (M-1)-denominator standard deviation.
/// Throws TooFewMembers for fewer than two members.
NicheMoments niche_mean_std(std::span<const Individual> members);

/// Sample covariance of the genomes, (M-1) denominator.
/// Throws TooFewMembers for fewer than two members.
Mat covariance_matrix(std::span<const Individual> members);

/// Draw from N(mean, cov). Singular or indefinite matrices get a 1e-12
/// diagonal jitter and negative eigenvalues are clipped.
Vec sample_gaussian(const Vec& mean, const Mat& cov, Rng& rng);

/// The `count` fittest members, best first.
Population best_members(std::span<const Individual> members, std::size_t count);

struct LocalSearchState {
    Individual localbest;
    std::optional<Vec> dirvec;
    Vec vars;
    int evaluations = 0;
};

inline constexpr int kLocalSearchIterations = 10;

/// Refines `localbest` by alternating directed steps along the last
/// improving direction with Gaussian samples shaped by the species' best
/// members. Only improvements are accepted; budget exhaustion ends early.
LocalSearchState run_local_search(Individual localbest, const Species& species, FitnessBudget& budget,
                                  const ProblemSpec& spec, Rng& rng,
                                  int iterations = kLocalSearchIterations);

Individual local_search(Individual localbest, const Species& species, FitnessBudget& budget,
                        const ProblemSpec& spec, Rng& rng);

}  // namespace eode
