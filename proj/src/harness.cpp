#include "eode/harness.hpp"

#include "eode/balance.hpp"
#include "eode/localsearch.hpp"
#include "eode/niching.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

namespace eode {

void validate(const RunConfig& c) {
    if (c.problem < 1 || c.problem > 20) throw UnknownProblem(c.problem);
    if (c.runs < 1) throw Error("runs must be at least 1");
    if (c.np == 0 || c.np < -1) throw Error("np must be positive");
    if (c.max_fes == 0 || c.max_fes < -1) throw Error("max_fes must be positive");
    if (!(c.phi1 > 0.0) || !(c.phi2 > 0.0)) throw Error("phi1 and phi2 must be positive");
    if (!(c.delta > 0.0)) throw Error("delta must be positive");
    if (c.minsize1 < -1 || c.minsize1 == 0) throw Error("minsize1 must be -1 or positive");
    if (c.minsize2 < 1) throw Error("minsize2 must be positive");
    if (c.max_gen < -1) throw Error("max_gen must be -1 or non-negative");
    if (c.stagnation_k < 1) throw Error("stagnation_k must be positive");
    if (c.epsilons.empty()) throw Error("at least one epsilon is required");
    for (double e : c.epsilons)
        if (!(e > 0.0)) throw Error("epsilons must be positive");
}

namespace {

/// Seeds of the components left after cutting every long edge. Used only
/// when a run ends before any species reached the archive.
Population cluster_seeds(const Population& pop, double phi) {
    if (pop.size() < 2) return pop;
    const NearestBetterTree tree = build_tree(pop);
    Population seeds;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const int p = tree.parent[i];
        if (p == NearestBetterTree::kNone || tree.edge_length[i] > phi * tree.mean_distance) seeds.push_back(pop[i]);
    }
    return seeds;
}

}  // namespace

RunResult run_eode(const ProblemSpec& spec, const RunConfig& config, std::uint64_t seed) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    const int np = config.np > 0 ? config.np : spec.default_np;
    FitnessBudget budget(config.max_fes > 0 ? config.max_fes : spec.max_fes);
    Rng rng(seed);

    SpeciationParams speciation{config.phi1, config.phi2, config.minsize1, config.minsize2};
    EngineParams engine{config.mode, config.max_gen >= 0 ? config.max_gen : default_max_gen(spec.dim),
                        config.jr_window, config.stagnation_k};

    RunResult result;
    result.problem = spec.index;
    result.seed = seed;

    Population pop;
    pop.reserve(static_cast<std::size_t>(np));
    try {
        for (int i = 0; i < np; ++i) {
            Vec x(spec.dim);
            for (int d = 0; d < spec.dim; ++d) x[d] = rng.uniform(spec.lower_bounds[d], spec.upper_bounds[d]);
            pop.push_back(make_individual(spec, std::move(x), budget));
        }
    } catch (const BudgetExhausted&) {
    }
    if (config.dump_generations) result.snapshots.push_back({0, pop});

    PeakArchive& archive = result.archive;
    int gen = 0;
    while (!budget.exhausted() && pop.size() >= 2) {
        auto species = two_level_speciation(pop, speciation, gen, budget, spec);
        species = balance_species(std::move(species), np, config.delta, gen + 1, budget, spec, rng);

        Population next;
        next.reserve(pop.size());
        for (auto& s : species) {
            if (!s.members.empty() && !budget.exhausted()) {
                s.state = AdaptiveState::random(spec.dim, rng);
                Individual best = evolve_species(s, spec, budget, engine, rng);
                Individual refined = local_search(best, s, budget, spec, rng);
                if (refined.fitness > best.fitness) s.members[s.seed_index()] = refined;
                archive.merge(refined, budget, spec);
            }
            next.insert(next.end(), s.members.begin(), s.members.end());
        }
        pop = std::move(next);
        ++gen;
        if (config.dump_generations) result.snapshots.push_back({gen, pop});
    }

    if (archive.empty())
        for (const auto& s : cluster_seeds(pop, config.phi1)) archive.insert({s.genome, s.fitness});

    result.generations = gen;
    result.fes_used = budget.used();
    const Population found = archive.as_population();
    for (double eps : config.epsilons) result.peaks_found.push_back(count_found_peaks(spec, found, eps));
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

RunResult run_eode(const RunConfig& config, std::uint64_t seed) {
    validate(config);
    const ProblemSpec spec = config.data_dir.empty() ? problem_spec(config.problem)
                                                     : problem_spec(config.problem, config.data_dir);
    return run_eode(spec, config, seed);
}

std::vector<PrSr> aggregate(const std::vector<RunResult>& runs, int nkp, std::size_t epsilons) {
    std::vector<PrSr> out;
    if (runs.empty()) return out;
    for (std::size_t e = 0; e < epsilons; ++e) {
        std::vector<int> found;
        for (const auto& r : runs) found.push_back(r.peaks_found.at(e));
        out.push_back(aggregate_pr_sr(found, nkp));
    }
    return out;
}

ExperimentResult run_experiment(const RunConfig& config) {
    validate(config);
    const ProblemSpec spec = config.data_dir.empty() ? problem_spec(config.problem)
                                                     : problem_spec(config.problem, config.data_dir);
    ExperimentResult out;
    out.config = config;
    out.nkp = spec.num_known_peaks;
    for (int r = 0; r < config.runs; ++r)
        out.runs.push_back(run_eode(spec, config, config.base_seed + static_cast<std::uint64_t>(r)));
    out.aggregate = aggregate(out.runs, out.nkp, config.epsilons.size());
    return out;
}

std::string to_string(AblationKind kind) {
    switch (kind) {
        case AblationKind::Mutation: return "mutation";
        case AblationKind::Phi: return "phi";
        case AblationKind::Jr: return "jr";
    }
    return "?";
}

AblationKind parse_ablation_kind(const std::string& s) {
    for (auto k : {AblationKind::Mutation, AblationKind::Phi, AblationKind::Jr})
        if (to_string(k) == s) return k;
    throw Error("unknown ablation kind '" + s + "'");
}

std::vector<AblationVariant> ablation_variants(AblationKind kind, const RunConfig& base) {
    std::vector<AblationVariant> out;
    switch (kind) {
        case AblationKind::Mutation:
            for (auto m : {MutationMode::Eode, MutationMode::EodeR, MutationMode::EodeB, MutationMode::EodeRB}) {
                RunConfig c = base;
                c.mode = m;
                out.push_back({to_string(m), c});
            }
            break;
        case AblationKind::Phi:
            for (auto [p1, p2, label] : {std::tuple{1.0, 1.0, "1/1"}, std::tuple{0.6, 0.6, "0.6/0.6"},
                                         std::tuple{2.0, 1.0, "2/1"}}) {
                RunConfig c = base;
                c.phi1 = p1;
                c.phi2 = p2;
                out.push_back({label, c});
            }
            break;
        case AblationKind::Jr:
            for (auto w : {JumpWindow::Late, JumpWindow::Early, JumpWindow::Full}) {
                RunConfig c = base;
                c.jr_window = w;
                out.push_back({to_string(w), c});
            }
            break;
    }
    return out;
}

std::vector<AblationRow> run_ablation(AblationKind kind, const RunConfig& base, const std::vector<int>& problems) {
    std::vector<AblationRow> rows;
    for (int p : problems) {
        RunConfig cfg = base;
        cfg.problem = p;
        for (const auto& v : ablation_variants(kind, cfg)) {
            const ExperimentResult r = run_experiment(v.config);
            rows.push_back({v.label, p, r.aggregate});
        }
    }
    return rows;
}

std::vector<int> best_counts(const std::vector<AblationRow>& rows, const std::vector<std::string>& variants,
                             std::size_t epsilon_index) {
    std::vector<int> wins(variants.size(), 0);
    std::vector<int> problems;
    for (const auto& r : rows)
        if (std::find(problems.begin(), problems.end(), r.problem) == problems.end()) problems.push_back(r.problem);

    for (int p : problems) {
        std::vector<double> pr(variants.size(), -1.0);
        for (const auto& r : rows) {
            if (r.problem != p) continue;
            const auto it = std::find(variants.begin(), variants.end(), r.variant);
            if (it != variants.end()) pr[static_cast<std::size_t>(it - variants.begin())] = r.scores.at(epsilon_index).pr;
        }
        const double top = *std::max_element(pr.begin(), pr.end());
        for (std::size_t v = 0; v < variants.size(); ++v)
            if (pr[v] >= 0.0 && pr[v] == top) ++wins[v];
    }
    return wins;
}

}  // namespace eode
