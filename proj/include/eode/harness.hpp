#pragma once

#include "eode/archive.hpp"
#include "eode/bench.hpp"
#include "eode/engine.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace eode {

inline const std::vector<double> kDefaultEpsilons{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};

struct RunConfig {
    int problem = 1;
    int np = -1;       // -1: problem default
    long max_fes = -1; // -1: problem default
    int runs = 10;
    std::uint64_t base_seed = 1;
    double phi1 = 1.0;
    double phi2 = 1.0;
    int minsize1 = -1;
    int minsize2 = 5;
    double delta = 1.0;
    MutationMode mode = MutationMode::Eode;
    JumpWindow jr_window = JumpWindow::Late;
    int max_gen = -1;  // -1: 40 up to 10 dimensions, 60 above
    std::vector<double> epsilons = kDefaultEpsilons;
    int stagnation_k = 10;
    bool dump_generations = false;
    std::string data_dir;  // empty: default_data_dir()
};

/// Throws Error on out-of-range fields.
void validate(const RunConfig& config);

struct Snapshot {
    int generation;
    Population population;
};

struct RunResult {
    int problem = 0;
    std::uint64_t seed = 0;
    std::vector<int> peaks_found;  // one per epsilon
    long fes_used = 0;
    int generations = 0;
    double wall_seconds = 0.0;
    PeakArchive archive;
    std::vector<Snapshot> snapshots;  // generation 0 is the initial population
};

struct ExperimentResult {
    RunConfig config;
    int nkp = 0;
    std::vector<RunResult> runs;
    std::vector<PrSr> aggregate;  // one per epsilon
};

/// One EODE run on `spec`, seeded with `seed`.
RunResult run_eode(const ProblemSpec& spec, const RunConfig& config, std::uint64_t seed);
RunResult run_eode(const RunConfig& config, std::uint64_t seed);

/// config.runs runs with seeds base_seed, base_seed + 1, ...
ExperimentResult run_experiment(const RunConfig& config);

std::vector<PrSr> aggregate(const std::vector<RunResult>& runs, int nkp, std::size_t epsilons);

enum class AblationKind { Mutation, Phi, Jr };

std::string to_string(AblationKind kind);
AblationKind parse_ablation_kind(const std::string& s);

struct AblationVariant {
    std::string label;
    RunConfig config;
};

/// The variants compared by an ablation, derived from `base`.
std::vector<AblationVariant> ablation_variants(AblationKind kind, const RunConfig& base);

struct AblationRow {
    std::string variant;
    int problem;
    std::vector<PrSr> scores;  // one per epsilon
};

std::vector<AblationRow> run_ablation(AblationKind kind, const RunConfig& base, const std::vector<int>& problems);

/// Per problem and epsilon, the variants reaching the top PR each get one win.
/// Returns the win count of every variant, in variant order.
std::vector<int> best_counts(const std::vector<AblationRow>& rows, const std::vector<std::string>& variants,
                             std::size_t epsilon_index);

}  // namespace eode
