#pragma once

#include "eode/bench.hpp"
#include "eode/core.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <memory>

namespace eode::test {

inline Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline Individual ind(std::initializer_list<double> xs, double fitness) { return {vec(xs), fitness, 0}; }

/// Wraps an objective and counts raw calls.
class CountingObjective final : public Objective {
public:
    explicit CountingObjective(std::shared_ptr<const Objective> inner) : inner_(std::move(inner)) {}
    double operator()(const Vec& x) const override {
        ++calls;
        return (*inner_)(x);
    }
    mutable long calls = 0;

private:
    std::shared_ptr<const Objective> inner_;
};

class LambdaObjective final : public Objective {
public:
    explicit LambdaObjective(std::function<double(const Vec&)> f) : f_(std::move(f)) {}
    double operator()(const Vec& x) const override { return f_(x); }

private:
    std::function<double(const Vec&)> f_;
};

/// Copy of `spec` whose objective counts calls; the counter is returned too.
inline std::pair<ProblemSpec, std::shared_ptr<CountingObjective>> counted(ProblemSpec spec) {
    auto counter = std::make_shared<CountingObjective>(spec.objective);
    spec.objective = counter;
    return {std::move(spec), counter};
}

/// A box-bounded problem around an arbitrary function.
inline ProblemSpec custom_spec(int dim, double lo, double hi, std::function<double(const Vec&)> f) {
    ProblemSpec s;
    s.index = 0;
    s.dim = dim;
    s.lower_bounds = Vec::Constant(dim, lo);
    s.upper_bounds = Vec::Constant(dim, hi);
    s.num_known_peaks = 1;
    s.peak_height = 0.0;
    s.niche_radius = 0.01;
    s.max_fes = 100000;
    s.default_np = 50;
    s.objective = std::make_shared<LambdaObjective>(std::move(f));
    return s;
}

/// `n` evaluated points drawn uniformly from a box around `center`.
inline Population cloud(const ProblemSpec& spec, const Vec& center, double half_width, int n, Rng& rng) {
    Population pop;
    for (int i = 0; i < n; ++i) {
        Vec x(spec.dim);
        for (int d = 0; d < spec.dim; ++d)
            x[d] = std::clamp(center[d] + rng.uniform(-half_width, half_width), spec.lower_bounds[d],
                              spec.upper_bounds[d]);
        pop.push_back({x, spec.raw(x), 0});
    }
    return pop;
}

// Global optima located by the grid oracle (see test_bench for the check).
inline const Vec kF5OptimumA = vec({0.089842014841, -0.712656402039});
inline const Vec kF5OptimumB = vec({-0.089842014841, 0.712656403517});
inline const Vec kF4Optimum = vec({3.000000008069, 2.000000006411});

}  // namespace eode::test
