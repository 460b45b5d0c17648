#include "support.hpp"

#include "eode/engine.hpp"
#include "eode/niching.hpp"

using namespace eode;
using eode::test::ind;
using eode::test::vec;

namespace {

Species species_of(Population members) {
    Species s;
    s.members = std::move(members);
    return s;
}

bool in_bounds(const ProblemSpec& spec, const Population& pop) {
    for (const auto& m : pop)
        if ((m.genome.array() < spec.lower_bounds.array()).any() || (m.genome.array() > spec.upper_bounds.array()).any())
            return false;
    return true;
}

}  // namespace

TEST_CASE("mode and window names round-trip") {
    for (auto m : {MutationMode::Eode, MutationMode::EodeR, MutationMode::EodeB, MutationMode::EodeRB})
        CHECK(parse_mutation_mode(to_string(m)) == m);
    for (auto w : {JumpWindow::Late, JumpWindow::Early, JumpWindow::Full}) CHECK(parse_jump_window(to_string(w)) == w);
    CHECK_THROWS_AS(parse_mutation_mode("de"), Error);
    CHECK_THROWS_AS(parse_jump_window("middle"), Error);
}

TEST_CASE("jump windows") {
    CHECK_FALSE(jump_active(JumpWindow::Late, 0.67));
    CHECK(jump_active(JumpWindow::Late, 0.68));
    CHECK(jump_active(JumpWindow::Late, 1.0));
    CHECK(jump_active(JumpWindow::Early, 0.0));
    CHECK(jump_active(JumpWindow::Early, 0.5));
    CHECK_FALSE(jump_active(JumpWindow::Early, 0.51));
    CHECK(jump_active(JumpWindow::Full, 0.0));
    CHECK(jump_active(JumpWindow::Full, 1.0));
    CHECK(default_max_gen(10) == 40);
    CHECK(default_max_gen(20) == 60);
}

TEST_CASE("select_donor") {
    Rng rng(1);
    Population pop;
    for (int i = 0; i < 10; ++i) pop.push_back(ind({double(i), double(2 * i)}, double(i)));
    const Species s = species_of(pop);
    const Vec zero = Vec::Zero(2);

    SUBCASE("zero factors return a member") {
        for (double pr : {0.1, 0.5, 0.9}) {
            const Vec v = select_donor(s, 0, pr, zero, zero, MutationMode::Eode, rng);
            bool is_member = false;
            for (const auto& m : pop) is_member = is_member || m.genome == v;
            CHECK(is_member);
        }
        // Past the first stage the base is the best member.
        CHECK(select_donor(s, 0, 0.5, zero, zero, MutationMode::Eode, rng) == pop[9].genome);
        CHECK(select_donor(s, 0, 0.9, zero, zero, MutationMode::Eode, rng) == pop[9].genome);
    }
    SUBCASE("late stage on three members") {
        const Species three = species_of({ind({1.0, 1.0}, 3.0), ind({4.0, 0.0}, 1.0), ind({2.0, 5.0}, 2.0)});
        const Vec f1 = vec({0.5, 0.25});
        // FB = (1,1), SB = (2,5), TB = (4,0): (1 + 0.5*(2-4), 1 + 0.25*(5-0)).
        const Vec v = select_donor(three, 1, 0.9, f1, f1, MutationMode::Eode, rng);
        CHECK(v[0] == doctest::Approx(0.0));
        CHECK(v[1] == doctest::Approx(2.25));
    }
    SUBCASE("identical best half") {
        Population p = pop;
        for (int i = 5; i < 10; ++i) p[i].genome = vec({7.0, 7.0});
        const Vec one = Vec::Ones(2);
        CHECK(select_donor(species_of(p), 0, 0.5, one, one, MutationMode::Eode, rng) == vec({7.0, 7.0}));
    }
    SUBCASE("small species fall back") {
        const Species two = species_of({ind({0.0, 0.0}, 1.0), ind({1.0, 1.0}, 0.0)});
        const Vec one = Vec::Ones(2);
        for (auto m : {MutationMode::Eode, MutationMode::EodeR, MutationMode::EodeB, MutationMode::EodeRB})
            CHECK_NOTHROW(select_donor(two, 1, 0.1, one, one, m, rng));
    }
}

TEST_CASE("binomial_crossover") {
    Rng rng(2);
    const Vec t = vec({1, 2, 3});
    const Vec d = vec({7, 8, 9});
    CHECK(binomial_crossover(t, d, Vec::Ones(3), rng) == d);
    for (Eigen::Index j = 0; j < 3; ++j) {
        Vec expect = t;
        expect[j] = d[j];
        CHECK(binomial_crossover(t, d, Vec::Zero(3), j, rng) == expect);
    }
    CHECK(binomial_crossover(t, d, vec({1, 0, 0}), 1, rng) == vec({7, 8, 3}));
    for (int i = 0; i < 50; ++i) CHECK((binomial_crossover(t, d, Vec::Zero(3), rng).array() != t.array()).count() == 1);
}

TEST_CASE("repair_bounds") {
    const Vec lb = vec({0.0});
    const Vec ub = vec({10.0});
    CHECK(repair_bounds(vec({-2}), lb, ub)[0] == 2.0);
    CHECK(repair_bounds(vec({25}), lb, ub)[0] == 0.0);
    CHECK(repair_bounds(vec({4.5}), lb, ub)[0] == 4.5);

    Rng rng(3);
    const Vec l3 = vec({-1, 0, 5});
    const Vec u3 = vec({1, 0.5, 6});
    for (int i = 0; i < 1000; ++i) {
        const Vec v = vec({rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)});
        const Vec r = repair_bounds(v, l3, u3);
        CHECK((r.array() >= l3.array()).all());
        CHECK((r.array() <= u3.array()).all());
        CHECK(repair_bounds(r, l3, u3) == r);
    }
}

TEST_CASE("mirror") {
    CHECK(mirror(vec({3}), vec({2}), vec({8}))[0] == 7.0);
    CHECK(mirror(vec({5}), vec({2}), vec({8}))[0] == 5.0);
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const Vec lo = vec({rng.uniform(-5, 0), rng.uniform(-5, 0)});
        const Vec hi = vec({rng.uniform(0, 5), rng.uniform(0, 5)});
        const Vec x = vec({rng.uniform(-5, 5), rng.uniform(-5, 5)});
        CHECK((mirror(mirror(x, lo, hi), lo, hi) - x).norm() < 1e-12);
    }
}

TEST_CASE("opposition_jump") {
    const auto spec = problem_spec(4);
    Rng rng(5);
    Species s = species_of(test::cloud(spec, vec({0, 0}), 2.0, 12, rng));

    SUBCASE("inactive window is free") {
        FitnessBudget budget(100);
        CHECK_FALSE(opposition_jump(s, 1, 10, JumpWindow::Late, rng, budget, spec));
        CHECK(budget.used() == 0);
        CHECK_FALSE(opposition_jump(s, 1, 0, JumpWindow::Full, rng, budget, spec));
    }
    SUBCASE("truncation keeps the best half of the union") {
        std::vector<double> before;
        for (const auto& m : s.members) before.push_back(m.fitness);
        std::sort(before.rbegin(), before.rend());
        FitnessBudget budget(100);
        CHECK(opposition_jump(s, 9, 10, JumpWindow::Late, rng, budget, spec));
        CHECK(budget.used() == 12);
        REQUIRE(s.size() == 12);
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.members[i].fitness >= before[i]);
        CHECK(in_bounds(spec, s.members));
    }
    SUBCASE("budget shortfall leaves the species alone") {
        const Population before = s.members;
        FitnessBudget budget(5);
        CHECK_FALSE(opposition_jump(s, 10, 10, JumpWindow::Late, rng, budget, spec));
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.members[i].genome == before[i].genome);
    }
}

TEST_CASE("restart_stagnant") {
    const auto spec = problem_spec(4);
    Rng rng(6);
    Species s = species_of(test::cloud(spec, vec({0, 0}), 2.0, 8, rng));
    FitnessBudget budget(100);

    CHECK(restart_stagnant(s, 10, rng, budget, spec) == 0);
    CHECK(budget.used() == 0);

    for (auto& m : s.members) m.stagnation = 9;
    CHECK(restart_stagnant(s, 10, rng, budget, spec) == 0);

    const std::size_t best = s.seed_index();
    const std::size_t victim = best == 0 ? 1 : 0;
    const Vec old = s.members[victim].genome;
    s.members[victim].stagnation = 10;
    s.members[best].stagnation = 50;
    CHECK(restart_stagnant(s, 10, rng, budget, spec) == 1);
    CHECK(budget.used() == 1);
    CHECK(s.members[victim].genome != old);
    CHECK(s.members[victim].stagnation == 0);
    CHECK(s.members[victim].fitness == spec.raw(s.members[victim].genome));
}

TEST_CASE("evolve_species") {
    SUBCASE("zero generations") {
        const auto spec = problem_spec(3);
        Rng rng(7);
        Species s = species_of(test::cloud(spec, vec({0.5}), 0.5, 10, rng));
        const Individual seed = s.seed();
        FitnessBudget budget(100);
        EngineParams p;
        p.max_gen = 0;
        const Individual out = evolve_species(s, spec, budget, p, rng);
        CHECK(out.genome == seed.genome);
        CHECK(budget.used() == 0);
    }
    SUBCASE("F3 reaches its single peak") {
        const auto spec = problem_spec(3);
        Rng rng(8);
        Species s = species_of(test::cloud(spec, vec({0.5}), 0.5, 20, rng));
        FitnessBudget budget(50000);
        const Individual best = evolve_species(s, spec, budget, {}, rng);
        CHECK(best.fitness >= 1.0 - 1e-4);
    }
    SUBCASE("F5 species converges inside its basin") {
        const auto spec = problem_spec(5);
        Rng rng(9);
        Species s = species_of(test::cloud(spec, test::kF5OptimumA, 0.2, 20, rng));
        FitnessBudget budget(50000);
        const Individual best = evolve_species(s, spec, budget, {}, rng);
        CHECK(best.fitness >= spec.peak_height - 1e-4);
        CHECK(distance(best.genome, test::kF5OptimumA) < 0.01);
    }
    SUBCASE("replacement needs a strict improvement") {
        auto spec = test::custom_spec(2, -1, 1, [](const Vec&) { return 1.0; });
        Rng rng(10);
        Species s = species_of(test::cloud(spec, vec({0, 0}), 1.0, 10, rng));
        const Population before = s.members;
        FitnessBudget budget(1000);
        EngineParams p;
        p.max_gen = 5;
        p.stagnation_k = 100;
        evolve_species(s, spec, budget, p, rng);
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.members[i].genome == before[i].genome);
        CHECK(s.state.cr_successes.empty());
    }
    SUBCASE("elitism, bounds and per-generation cost") {
        const auto spec = problem_spec(6);
        Rng rng(11);
        Species s = species_of(test::cloud(spec, vec({0, 0}), 10.0, 15, rng));
        auto [cspec, counter] = test::counted(spec);
        FitnessBudget budget(100000);
        for (auto window : {JumpWindow::Late, JumpWindow::Full}) {
            EngineParams p;
            p.max_gen = 1;
            p.jump_window = window;
            p.stagnation_k = 1000;
            double best = s.seed().fitness;
            for (int g = 0; g < 20; ++g) {
                const long used = budget.used();
                evolve_species(s, cspec, budget, p, rng);
                // Only generation 0 runs, so the late window never opens.
                const long expect = window == JumpWindow::Full ? 30 : 15;
                CHECK(budget.used() - used == expect);
                CHECK(s.seed().fitness >= best);
                best = s.seed().fitness;
                CHECK(in_bounds(spec, s.members));
            }
        }
        CHECK(counter->calls == budget.used());
    }
    SUBCASE("budget exhaustion returns the current best") {
        const auto spec = problem_spec(4);
        Rng rng(12);
        Species s = species_of(test::cloud(spec, vec({0, 0}), 3.0, 10, rng));
        FitnessBudget budget(25);
        const Individual best = evolve_species(s, spec, budget, {}, rng);
        CHECK(budget.used() == 25);
        CHECK(best.fitness == s.seed().fitness);
    }
}
