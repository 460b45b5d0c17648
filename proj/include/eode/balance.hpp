#pragma once

#include "eode/bench.hpp"
#include "eode/core.hpp"
#include "eode/niching.hpp"

#include <vector>

namespace eode {

struct SpeciesStats {
    double variance = 0.0;  // trace of the covariance
    Mat covariance;
};

/// Spread of the t = max(size / gen, 10) best members (clamped to the
/// species size). Fewer than two members give a zero covariance.
SpeciesStats species_spread(const Species& species, int gen);

/// Target species size: round(delta * np / count), at least 1.
int balanced_size(int np, double delta, std::size_t count);

/// Tiny species (size <= dim or <= 10) first gain max(dim - size, 10)
/// members around their seed. Species above the target size lose their
/// worst members; those below are refilled from N(seed, covariance), the
/// widest species first. Every new member is evaluated. If the budget runs
/// out the partially balanced list is returned.
std::vector<Species> balance_species(std::vector<Species> species, int np, double delta, int gen,
                                     FitnessBudget& budget, const ProblemSpec& spec, Rng& rng);

}  // namespace eode
