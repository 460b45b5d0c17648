#include "eode/engine.hpp"

#include "eode/niching.hpp"

#include <algorithm>
#include <numeric>

namespace eode {

std::string to_string(MutationMode mode) {
    switch (mode) {
        case MutationMode::Eode: return "eode";
        case MutationMode::EodeR: return "eode-r";
        case MutationMode::EodeB: return "eode-b";
        case MutationMode::EodeRB: return "eode-rb";
    }
    return "?";
}

std::string to_string(JumpWindow window) {
    switch (window) {
        case JumpWindow::Late: return "late";
        case JumpWindow::Early: return "early";
        case JumpWindow::Full: return "full";
    }
    return "?";
}

MutationMode parse_mutation_mode(const std::string& s) {
    for (auto m : {MutationMode::Eode, MutationMode::EodeR, MutationMode::EodeB, MutationMode::EodeRB})
        if (to_string(m) == s) return m;
    throw Error("unknown mutation mode '" + s + "'");
}

JumpWindow parse_jump_window(const std::string& s) {
    for (auto w : {JumpWindow::Late, JumpWindow::Early, JumpWindow::Full})
        if (to_string(w) == s) return w;
    throw Error("unknown jumping-rate window '" + s + "'");
}

bool jump_active(JumpWindow window, double jr) {
    switch (window) {
        case JumpWindow::Late: return jr > kExploitStageStart && jr <= 1.0;
        case JumpWindow::Early: return jr >= 0.0 && jr <= 0.5;
        case JumpWindow::Full: return jr >= 0.0 && jr <= 1.0;
    }
    return false;
}

int default_max_gen(int dim) { return dim <= 10 ? 40 : 60; }

namespace {

enum class Operator { Rand1, Rand2, BestHalf, TopThree, Best1, Best2 };

// Random-sample operators draw four distinct partners besides the target.
constexpr std::size_t kMinSizeForSampling = 6;

/// Member indices sorted best first (ties: lower index first).
std::vector<std::size_t> ranking(const Population& members) {
    std::vector<std::size_t> order(members.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return members[a].fitness > members[b].fitness;
    });
    return order;
}

Operator pick_operator(MutationMode mode, double pr, Rng& rng) {
    switch (mode) {
        case MutationMode::Eode:
            if (pr <= kExploreStageEnd) return rng.uniform() <= 0.75 ? Operator::Rand1 : Operator::Rand2;
            if (pr <= kExploitStageStart) return Operator::BestHalf;
            return Operator::TopThree;
        case MutationMode::EodeR: return rng.uniform() < 0.5 ? Operator::Rand1 : Operator::Rand2;
        case MutationMode::EodeB: return rng.uniform() < 0.5 ? Operator::Best1 : Operator::Best2;
        case MutationMode::EodeRB: {
            static constexpr Operator kAll[] = {Operator::Rand1, Operator::Rand2, Operator::Best1, Operator::Best2};
            return kAll[rng.index(4)];
        }
    }
    return Operator::TopThree;
}

}  // namespace

Vec select_donor(const Species& species, std::size_t member, double pr, const Vec& f1, const Vec& f2,
                 MutationMode mode, Rng& rng) {
    const Population& pop = species.members;
    const std::size_t n = pop.size();
    Operator op = pick_operator(mode, pr, rng);

    const bool sampling = op == Operator::Rand1 || op == Operator::Rand2 || op == Operator::Best1 ||
                          op == Operator::Best2;
    if (sampling && n < kMinSizeForSampling) op = Operator::TopThree;
    if (op == Operator::BestHalf && n / 2 < 2) op = Operator::TopThree;

    const auto x = [&](std::size_t i) -> const Vec& { return pop[i].genome; };

    switch (op) {
        case Operator::Rand1:
        case Operator::Rand2: {
            const auto r = rng.distinct(n, 4, member);
            Vec v = x(r[0]) + f1.cwiseProduct(x(r[1]) - x(r[2]));
            if (op == Operator::Rand2) v += f2.cwiseProduct(x(r[2]) - x(r[3]));
            return v;
        }
        case Operator::Best1:
        case Operator::Best2: {
            const std::size_t fb = species.seed_index();
            const auto r = rng.distinct(n, 4, member);
            Vec v = x(fb) + f1.cwiseProduct(x(r[0]) - x(r[1]));
            if (op == Operator::Best2) v += f2.cwiseProduct(x(r[2]) - x(r[3]));
            return v;
        }
        case Operator::BestHalf: {
            const auto order = ranking(pop);
            const auto k = rng.distinct(n / 2, 2, n / 2);
            return x(order[0]) + f1.cwiseProduct(x(order[k[0]]) - x(order[k[1]]));
        }
        case Operator::TopThree: {
            const auto order = ranking(pop);
            const std::size_t fb = order[0];
            const std::size_t sb = order[std::min<std::size_t>(1, n - 1)];
            const std::size_t tb = order[std::min<std::size_t>(2, n - 1)];
            return x(fb) + f1.cwiseProduct(x(sb) - x(tb));
        }
    }
    return x(member);
}

Vec binomial_crossover(const Vec& target, const Vec& donor, const Vec& cr, Eigen::Index j_rand, Rng& rng) {
    Vec trial = target;
    for (Eigen::Index j = 0; j < target.size(); ++j)
        if (rng.uniform() <= cr[j] || j == j_rand) trial[j] = donor[j];
    return trial;
}

Vec binomial_crossover(const Vec& target, const Vec& donor, const Vec& cr, Rng& rng) {
    const auto j_rand = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(target.size())));
    return binomial_crossover(target, donor, cr, j_rand, rng);
}

Vec repair_bounds(Vec v, const Vec& lb, const Vec& ub) {
    for (Eigen::Index d = 0; d < v.size(); ++d) {
        if (v[d] < lb[d]) {
            v[d] = std::min(ub[d], 2.0 * lb[d] - v[d]);
        } else if (v[d] > ub[d]) {
            v[d] = std::max(lb[d], 2.0 * ub[d] - v[d]);
        }
    }
    return v;
}

namespace {

void species_box(const Population& members, Vec& lo, Vec& hi) {
    lo = members.front().genome;
    hi = members.front().genome;
    for (const auto& m : members) {
        lo = lo.cwiseMin(m.genome);
        hi = hi.cwiseMax(m.genome);
    }
}

}  // namespace

bool opposition_jump(Species& species, int gen, int max_gen, JumpWindow window, Rng& rng,
                     FitnessBudget& budget, const ProblemSpec& spec) {
    if (max_gen <= 0 || species.members.empty()) return false;
    const double jr = static_cast<double>(gen) / static_cast<double>(max_gen);
    if (!jump_active(window, jr)) return false;

    Vec lo, hi;
    species_box(species.members, lo, hi);

    const std::size_t n = species.members.size();
    Population merged = species.members;
    merged.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec op(spec.dim);
        if (rng.uniform() < 0.33) {
            op = mirror(species.members[i].genome, lo, hi);
        } else {
            for (int d = 0; d < spec.dim; ++d) op[d] = lo[d] + rng.uniform() * (hi[d] - lo[d]);
        }
        try {
            merged.push_back(make_individual(spec, std::move(op), budget));
        } catch (const BudgetExhausted&) {
            return false;
        }
    }
    std::stable_sort(merged.begin(), merged.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; });
    merged.resize(n);
    species.members = std::move(merged);
    return true;
}

int restart_stagnant(Species& species, int k, Rng& rng, FitnessBudget& budget, const ProblemSpec& spec) {
    if (species.members.empty()) return 0;
    const std::size_t best = species.seed_index();
    int restarted = 0;
    for (std::size_t i = 0; i < species.members.size(); ++i) {
        Individual& m = species.members[i];
        if (i == best || m.stagnation < k) continue;
        Vec x(spec.dim);
        for (int d = 0; d < spec.dim; ++d) x[d] = rng.uniform(spec.lower_bounds[d], spec.upper_bounds[d]);
        try {
            m = make_individual(spec, std::move(x), budget);
        } catch (const BudgetExhausted&) {
            break;
        }
        ++restarted;
    }
    return restarted;
}

Individual evolve_species(Species& species, const ProblemSpec& spec, FitnessBudget& budget,
                          const EngineParams& params, Rng& rng) {
    if (species.members.empty()) throw SpeciesTooSmall("cannot evolve an empty species");
    if (species.state.empty()) species.state = AdaptiveState::random(spec.dim, rng);
    AdaptiveState& state = species.state;

    for (int gen = 0; gen < params.max_gen && !budget.exhausted(); ++gen) {
        const double pr = static_cast<double>(gen) / static_cast<double>(params.max_gen);

        for (std::size_t i = 0; i < species.members.size(); ++i) {
            const Vec donor = select_donor(species, i, pr, state.f1, state.f2, params.mode, rng);
            Individual& parent = species.members[i];
            Vec trial = repair_bounds(binomial_crossover(parent.genome, donor, state.cr, rng),
                                      spec.lower_bounds, spec.upper_bounds);
            double fitness;
            try {
                fitness = evaluate(spec, trial, budget);
            } catch (const BudgetExhausted&) {
                return species.seed();
            }
            if (fitness > parent.fitness) {
                state.record_success(fitness - parent.fitness);
                parent.genome = std::move(trial);
                parent.fitness = fitness;
                parent.stagnation = 0;
            } else {
                ++parent.stagnation;
            }
        }

        opposition_jump(species, gen, params.max_gen, params.jump_window, rng, budget, spec);
        restart_stagnant(species, params.stagnation_k, rng, budget, spec);

        Vec lo, hi;
        species_box(species.members, lo, hi);
        update_mutation_factor(state, MutationFactor::F1, lo, hi, spec.lower_bounds, spec.upper_bounds,
                               budget.used(), budget.cap(), rng);
        update_mutation_factor(state, MutationFactor::F2, lo, hi, spec.lower_bounds, spec.upper_bounds,
                               budget.used(), budget.cap(), rng);
        update_crossover_rate(state, rng);
    }
    return species.seed();
}

}  // namespace eode
