#pragma once

#include "eode/adapt.hpp"
#include "eode/bench.hpp"
#include "eode/core.hpp"

#include <span>
#include <vector>

namespace eode {

/// A sub-population evolved independently, with its own parameter state.
struct Species {
    Population members;
    AdaptiveState state;

    /// Index of the fittest member (lowest index on ties).
    std::size_t seed_index() const;
    const Individual& seed() const { return members[seed_index()]; }
    std::size_t size() const { return members.size(); }
};

/// Every individual points at its nearest strictly better neighbour.
/// "Better" is higher fitness, with the lower population index winning ties,
/// so the order is total and there is exactly one root.
struct NearestBetterTree {
    static constexpr int kNone = -1;

    std::vector<int> parent;          // leader of each node, kNone for the root
    std::vector<double> edge_length;  // distance to the leader, 0 for the root
    std::vector<int> follow;          // subtree sizes
    int root = kNone;
    double mean_distance = 0.0;

    std::size_t size() const { return parent.size(); }
};

NearestBetterTree build_tree(std::span<const Individual> population);

/// min(5 + gen/2, max(10, 3*dim)).
int minsize_schedule(int gen, int dim);

struct CutStats {
    int valley_checks = 0;
    int cuts = 0;
};

/// NBC-minsize: visit edges longest first and cut those that are long,
/// leave at least `minsize` nodes on both sides, and cross a valley (the
/// midpoint between the follower and its subtree root is worse than both).
/// Each valley test costs one evaluation. If the budget runs out, the
/// components found so far are returned.
std::vector<Species> cut_species(std::span<const Individual> population, NearestBetterTree tree,
                                 double phi, int minsize, FitnessBudget& budget, const ProblemSpec& spec,
                                 CutStats* stats = nullptr);

struct SpeciationParams {
    double phi1 = 1.0;
    double phi2 = 1.0;
    int minsize1 = -1;  // -1: follow minsize_schedule
    int minsize2 = 5;
};

/// First-level cut over the whole population, then a second-level cut inside
/// every species with at least 2 * minsize2 members.
std::vector<Species> two_level_speciation(std::span<const Individual> population,
                                          const SpeciationParams& params, int gen,
                                          FitnessBudget& budget, const ProblemSpec& spec);

}  // namespace eode
