#include "eode/balance.hpp"

#include "eode/engine.hpp"
#include "eode/localsearch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eode {

SpeciesStats species_spread(const Species& species, int gen) {
    if (species.members.empty()) throw SpeciesTooSmall("species_spread needs a non-empty species");
    const std::size_t size = species.size();
    const std::size_t per_gen = size / static_cast<std::size_t>(std::max(gen, 1));
    const std::size_t t = std::min(size, std::max<std::size_t>(per_gen, 10));

    SpeciesStats stats;
    const Eigen::Index dim = species.members.front().genome.size();
    if (t < 2) {
        stats.covariance = Mat::Zero(dim, dim);
        return stats;
    }
    stats.covariance = covariance_matrix(best_members(species.members, t));
    stats.variance = std::max(0.0, stats.covariance.trace());
    return stats;
}

int balanced_size(int np, double delta, std::size_t count) {
    if (count == 0) return 0;
    const double avg = static_cast<double>(np) / static_cast<double>(count);
    return std::max(1, static_cast<int>(std::lround(delta * avg)));
}

namespace {

Vec diagonal_spread(const Species& s, const ProblemSpec& spec) {
    const Vec fallback = 0.01 * (spec.upper_bounds - spec.lower_bounds);
    if (s.size() < 2) return fallback;
    Vec sd = niche_mean_std(s.members).std;
    for (int d = 0; d < spec.dim; ++d)
        if (!(sd[d] > 0.0)) sd[d] = fallback[d];
    return sd;
}

void add_member(Species& s, Vec x, FitnessBudget& budget, const ProblemSpec& spec) {
    x = repair_bounds(std::move(x), spec.lower_bounds, spec.upper_bounds);
    s.members.push_back(make_individual(spec, std::move(x), budget));
}

}  // namespace

std::vector<Species> balance_species(std::vector<Species> species, int np, double delta, int gen,
                                     FitnessBudget& budget, const ProblemSpec& spec, Rng& rng) {
    if (species.empty()) return species;
    const int target = balanced_size(np, delta, species.size());

    try {
        for (auto& s : species) {
            if (s.members.empty()) continue;
            const int size = static_cast<int>(s.size());
            if (size > spec.dim && size > 10) continue;
            const int c = std::max(spec.dim - size, 10);
            const Vec sd = diagonal_spread(s, spec);
            const Vec seed = s.seed().genome;
            for (int k = 0; k < c; ++k) {
                Vec x(spec.dim);
                for (int d = 0; d < spec.dim; ++d) x[d] = rng.normal(seed[d], sd[d]);
                add_member(s, std::move(x), budget, spec);
            }
        }
    } catch (const BudgetExhausted&) {
        return species;
    }

    for (auto& s : species) {
        if (static_cast<int>(s.size()) <= target) continue;
        s.members = best_members(s.members, static_cast<std::size_t>(target));
    }

    std::vector<std::size_t> under;
    std::vector<double> variance(species.size(), 0.0);
    std::vector<Mat> cov(species.size());
    for (std::size_t i = 0; i < species.size(); ++i) {
        if (species[i].members.empty() || static_cast<int>(species[i].size()) >= target) continue;
        SpeciesStats st = species_spread(species[i], gen);
        variance[i] = st.variance;
        cov[i] = std::move(st.covariance);
        under.push_back(i);
    }
    std::stable_sort(under.begin(), under.end(),
                     [&](std::size_t a, std::size_t b) { return variance[a] > variance[b]; });

    try {
        for (std::size_t i : under) {
            Species& s = species[i];
            const Vec seed = s.seed().genome;
            while (static_cast<int>(s.size()) < target) add_member(s, sample_gaussian(seed, cov[i], rng), budget, spec);
        }
    } catch (const BudgetExhausted&) {
    }
    return species;
}

}  // namespace eode
