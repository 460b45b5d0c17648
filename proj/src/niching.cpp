#include "eode/niching.hpp"

#include "eode/engine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace eode {

std::size_t Species::seed_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i)
        if (members[i].fitness > members[best].fitness) best = i;
    return best;
}

namespace {

bool better(std::span<const Individual> pop, std::size_t a, std::size_t b) {
    if (pop[a].fitness != pop[b].fitness) return pop[a].fitness > pop[b].fitness;
    return a < b;
}

}  // namespace

NearestBetterTree build_tree(std::span<const Individual> population) {
    const std::size_t n = population.size();
    if (n < 2) throw PopulationTooSmall("nearest-better tree needs at least two individuals");

    NearestBetterTree tree;
    tree.parent.assign(n, NearestBetterTree::kNone);
    tree.edge_length.assign(n, 0.0);
    tree.follow.assign(n, 1);

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        int leader = NearestBetterTree::kNone;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !better(population, j, i)) continue;
            const double d = (population[i].genome - population[j].genome).squaredNorm();
            if (d < nearest) {  // ascending j: the lowest index wins distance ties
                nearest = d;
                leader = static_cast<int>(j);
            }
        }
        if (leader == NearestBetterTree::kNone) {
            tree.root = static_cast<int>(i);
        } else {
            tree.parent[i] = leader;
            tree.edge_length[i] = std::sqrt(nearest);
            total += tree.edge_length[i];
        }
    }
    tree.mean_distance = total / static_cast<double>(n - 1);

    // Subtree sizes: push counts to leaders, worst individuals first.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return better(population, b, a); });
    for (std::size_t i : order)
        if (tree.parent[i] != NearestBetterTree::kNone)
            tree.follow[static_cast<std::size_t>(tree.parent[i])] += tree.follow[i];
    return tree;
}

int minsize_schedule(int gen, int dim) { return std::min(5 + gen / 2, std::max(10, 3 * dim)); }

std::vector<Species> cut_species(std::span<const Individual> population, NearestBetterTree tree,
                                 double phi, int minsize, FitnessBudget& budget, const ProblemSpec& spec,
                                 CutStats* stats) {
    const std::size_t n = population.size();
    std::vector<char> cut(n, 0);

    std::vector<std::size_t> edges;
    for (std::size_t i = 0; i < n; ++i)
        if (tree.parent[i] != NearestBetterTree::kNone) edges.push_back(i);
    std::stable_sort(edges.begin(), edges.end(),
                     [&](std::size_t a, std::size_t b) { return tree.edge_length[a] > tree.edge_length[b]; });

    auto subtree_root = [&](std::size_t x) {
        while (tree.parent[x] != NearestBetterTree::kNone && !cut[x]) x = static_cast<std::size_t>(tree.parent[x]);
        return x;
    };

    const double threshold = phi * tree.mean_distance;
    for (std::size_t f : edges) {
        if (!(tree.edge_length[f] > threshold)) break;
        const std::size_t r = subtree_root(f);
        if (tree.follow[f] < minsize || tree.follow[r] - tree.follow[f] < minsize) continue;

        const Vec mid = repair_bounds(0.5 * (population[f].genome + population[r].genome),
                                      spec.lower_bounds, spec.upper_bounds);
        double mid_fitness;
        try {
            mid_fitness = evaluate(spec, mid, budget);
        } catch (const BudgetExhausted&) {
            break;
        }
        if (stats) ++stats->valley_checks;
        if (!(mid_fitness < population[r].fitness && mid_fitness < population[f].fitness)) continue;

        cut[f] = 1;
        if (stats) ++stats->cuts;
        for (auto x = static_cast<std::size_t>(tree.parent[f]);; x = static_cast<std::size_t>(tree.parent[x])) {
            tree.follow[x] -= tree.follow[f];
            if (x == r) break;
        }
    }

    // Group by component root, species ordered by first member index.
    std::vector<int> species_of(n, -1);
    std::vector<Species> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = subtree_root(i);
        if (species_of[r] < 0) {
            species_of[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(species_of[r])].members.push_back(population[i]);
    }
    return out;
}

std::vector<Species> two_level_speciation(std::span<const Individual> population,
                                          const SpeciationParams& params, int gen,
                                          FitnessBudget& budget, const ProblemSpec& spec) {
    if (population.size() < 2) {
        std::vector<Species> single(1);
        single[0].members.assign(population.begin(), population.end());
        return single;
    }
    const int minsize1 = params.minsize1 < 0 ? minsize_schedule(gen, spec.dim) : params.minsize1;
    auto first = cut_species(population, build_tree(population), params.phi1, minsize1, budget, spec);

    std::vector<Species> out;
    for (auto& s : first) {
        if (static_cast<int>(s.size()) >= 2 * params.minsize2 && !budget.exhausted()) {
            auto sub = cut_species(s.members, build_tree(s.members), params.phi2, params.minsize2, budget, spec);
            for (auto& t : sub) out.push_back(std::move(t));
        } else {
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace eode
