#pragma once

#include "eode/adapt.hpp"
#include "eode/bench.hpp"
#include "eode/core.hpp"

#include <string>

namespace eode {

struct Species;

/// Mutation operator families. Eode switches operator by evolution stage;
/// the others are the fixed mixes used for comparison.
enum class MutationMode {
    Eode,    // stage-wise rand -> best-half -> top-three
    EodeR,   // rand/1, rand/2
    EodeB,   // best/1, best/2
    EodeRB,  // all four
};

/// Generation-fraction window in which opposite populations are produced.
enum class JumpWindow {
    Late,   // (0.67, 1]
    Early,  // [0, 0.5]
    Full,   // [0, 1]
};

std::string to_string(MutationMode mode);
std::string to_string(JumpWindow window);
MutationMode parse_mutation_mode(const std::string& s);
JumpWindow parse_jump_window(const std::string& s);

/// Stage boundaries for the Eode schedule.
inline constexpr double kExploreStageEnd = 0.33;
inline constexpr double kExploitStageStart = 0.67;

bool jump_active(JumpWindow window, double jr);

/// Inner generations per species: 40 up to 10 dimensions, 60 above.
int default_max_gen(int dim);

struct EngineParams {
    MutationMode mode = MutationMode::Eode;
    int max_gen = 40;
    JumpWindow jump_window = JumpWindow::Late;
    int stagnation_k = 10;
};

/// Donor vector for member `member` at progress `pr` = gen / max_gen.
/// Falls back to the top-three operator with whatever distinct members exist
/// when the species is too small for the requested operator.
Vec select_donor(const Species& species, std::size_t member, double pr, const Vec& f1, const Vec& f2,
                 MutationMode mode, Rng& rng);

/// Binomial crossover; component `j_rand` always comes from the donor.
Vec binomial_crossover(const Vec& target, const Vec& donor, const Vec& cr, Eigen::Index j_rand, Rng& rng);
Vec binomial_crossover(const Vec& target, const Vec& donor, const Vec& cr, Rng& rng);

/// Reflects out-of-range components back inside, clamped to the box.
Vec repair_bounds(Vec v, const Vec& lb, const Vec& ub);

/// lo + hi - x.
inline Vec mirror(const Vec& x, const Vec& lo, const Vec& hi) { return lo + hi - x; }

/// Opposite population over the species' bounding box: mirrored with
/// probability 0.33, otherwise uniform in the box. Survivors are the best
/// |species| of the union. Returns false (species untouched) when the window
/// is inactive or the budget runs out.
bool opposition_jump(Species& species, int gen, int max_gen, JumpWindow window, Rng& rng,
                     FitnessBudget& budget, const ProblemSpec& spec);

/// Replaces members stuck for at least k generations with uniform random
/// points. The species' best member is never restarted. Returns the count.
int restart_stagnant(Species& species, int k, Rng& rng, FitnessBudget& budget, const ProblemSpec& spec);

/// Runs up to params.max_gen generations of the modified opposition DE and
/// returns the species' best member. Stops early when the budget runs out.
Individual evolve_species(Species& species, const ProblemSpec& spec, FitnessBudget& budget,
                          const EngineParams& params, Rng& rng);

}  // namespace eode
