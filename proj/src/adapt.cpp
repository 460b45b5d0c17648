#include "eode/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eode {

AdaptiveState AdaptiveState::random(int dim, Rng& rng) {
    AdaptiveState s;
    auto draw = [&] {
        Vec v(dim);
        for (int d = 0; d < dim; ++d) {
            double u;
            do {
                u = rng.uniform();
            } while (u == 0.0);
            v[d] = u;
        }
        return v;
    };
    s.f1 = draw();
    s.f2 = draw();
    s.cr = draw();
    return s;
}

void AdaptiveState::record_success(double delta_f) {
    f1_successes.push_back({f1, delta_f});
    f2_successes.push_back({f2, delta_f});
    cr_successes.push_back({cr, delta_f});
}

std::vector<double> success_weights(std::span<const double> delta_fs) {
    if (delta_fs.empty()) throw EmptySuccessSet();
    const double total = std::accumulate(delta_fs.begin(), delta_fs.end(), 0.0);
    std::vector<double> w(delta_fs.size());
    if (!(total > 0.0)) {
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(w.size()));
        return w;
    }
    std::transform(delta_fs.begin(), delta_fs.end(), w.begin(), [&](double d) { return d / total; });
    return w;
}

double weighted_power_mean(std::span<const double> values, std::span<const double> weights) {
    if (values.empty()) throw EmptySuccessSet();
    double sum = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) sum += weights[k] * values[k];
    return std::pow(sum / static_cast<double>(values.size()), 1.0 / 1.5);
}

double weighted_lehmer_mean(std::span<const double> values, std::span<const double> weights) {
    if (values.empty()) throw EmptySuccessSet();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        num += weights[k] * values[k] * values[k];
        den += weights[k] * values[k];
    }
    return den > 0.0 ? num / den : 0.0;
}

namespace {

using MeanFn = double (*)(std::span<const double>, std::span<const double>);

/// Componentwise mean over the success set.
Vec success_mean(const std::vector<Success>& set, MeanFn mean) {
    std::vector<double> df(set.size());
    std::transform(set.begin(), set.end(), df.begin(), [](const Success& s) { return s.delta_f; });
    const auto w = success_weights(df);
    const Eigen::Index dim = set.front().value.size();
    Vec out(dim);
    std::vector<double> column(set.size());
    for (Eigen::Index d = 0; d < dim; ++d) {
        for (std::size_t k = 0; k < set.size(); ++k) column[k] = set[k].value[d];
        out[d] = mean(column, w);
    }
    return out;
}

}  // namespace

Vec update_mutation_factor(AdaptiveState& state, MutationFactor which, const Vec& species_min,
                           const Vec& species_max, const Vec& fn_lb, const Vec& fn_ub, long fes,
                           long max_fes, Rng& rng) {
    Vec& f = which == MutationFactor::F1 ? state.f1 : state.f2;
    auto& successes = which == MutationFactor::F1 ? state.f1_successes : state.f2_successes;

    const double wf = 0.8 + 0.2 * rng.uniform();
    const double remaining = 1.0 - static_cast<double>(fes) / static_cast<double>(max_fes);
    const Vec extent = ((species_max - species_min).array() / (fn_ub - fn_lb).array()).matrix();
    Vec next = 0.25 * f + 0.25 * extent + Vec::Constant(f.size(), 0.5 * remaining);

    if (!successes.empty()) {
        const Vec m = success_mean(successes, which == MutationFactor::F1 ? weighted_power_mean
                                                                          : weighted_lehmer_mean);
        next = wf * next + (1.0 - wf) * m;
    }
    f = next.cwiseMax(kMinMutationFactor).cwiseMin(1.0);
    successes.clear();
    return f;
}

Vec update_crossover_rate(AdaptiveState& state, Rng& rng) {
    const double wf = 0.9 + 0.1 * rng.uniform();
    if (!state.cr_successes.empty()) {
        const Vec m = success_mean(state.cr_successes, weighted_power_mean);
        state.cr = (wf * state.cr + (1.0 - wf) * m).cwiseMax(0.0).cwiseMin(1.0);
    }
    state.cr_successes.clear();
    return state.cr;
}

}  // namespace eode
