#include "eode/localsearch.hpp"

#include "eode/engine.hpp"
#include "eode/niching.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

namespace eode {

NicheMoments niche_mean_std(std::span<const Individual> members) {
    if (members.size() < 2) throw TooFewMembers("niche statistics need at least two members");
    const Eigen::Index dim = members.front().genome.size();
    Vec mean = Vec::Zero(dim);
    for (const auto& m : members) mean += m.genome;
    mean /= static_cast<double>(members.size());
    Vec sq = Vec::Zero(dim);
    for (const auto& m : members) sq += (m.genome - mean).cwiseAbs2();
    return {mean, (sq / static_cast<double>(members.size() - 1)).cwiseSqrt()};
}

Mat covariance_matrix(std::span<const Individual> members) {
    if (members.size() < 2) throw TooFewMembers("covariance needs at least two members");
    const Eigen::Index dim = members.front().genome.size();
    Vec mean = Vec::Zero(dim);
    for (const auto& m : members) mean += m.genome;
    mean /= static_cast<double>(members.size());
    Mat cov = Mat::Zero(dim, dim);
    for (const auto& m : members) {
        const Vec c = m.genome - mean;
        cov.noalias() += c * c.transpose();
    }
    cov /= static_cast<double>(members.size() - 1);
    return 0.5 * (cov + cov.transpose());
}

Vec sample_gaussian(const Vec& mean, const Mat& cov, Rng& rng) {
    const Eigen::Index dim = mean.size();
    Vec z(dim);
    for (Eigen::Index d = 0; d < dim; ++d) z[d] = rng.normal();

    Eigen::LLT<Mat> llt(cov);
    if (llt.info() == Eigen::Success) {
        const Mat l = llt.matrixL();
        if ((l.diagonal().array() > 0.0).all()) return mean + l * z;
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(cov + 1e-12 * Mat::Identity(dim, dim));
    const Vec scale = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return mean + eig.eigenvectors() * scale.cwiseProduct(z);
}

Population best_members(std::span<const Individual> members, std::size_t count) {
    std::vector<std::size_t> order(members.size());
    std::iota(order.begin(), order.end(), 0);
    count = std::min(count, members.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (members[a].fitness != members[b].fitness)
                              return members[a].fitness > members[b].fitness;
                          return a < b;
                      });
    Population out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(members[order[i]]);
    return out;
}

LocalSearchState run_local_search(Individual localbest, const Species& species, FitnessBudget& budget,
                                  const ProblemSpec& spec, Rng& rng, int iterations) {
    LocalSearchState st;
    st.localbest = std::move(localbest);
    st.vars = Vec(spec.dim);
    for (int d = 0; d < spec.dim; ++d) st.vars[d] = rng.uniform(0.001, 0.01);

    // Sampling distribution of the mbest fittest members; fixed for the call.
    const std::size_t size = species.members.size();
    const std::size_t mbest = std::min(size, std::max<std::size_t>(size / 4, 10));
    const Population elite = best_members(species.members, mbest);
    const Mat cov = elite.size() >= 2 ? covariance_matrix(elite) : Mat::Zero(spec.dim, spec.dim);

    for (int k = 0; k < iterations; ++k) {
        Vec offspring;
        if (st.dirvec && rng.uniform() <= 0.5) {
            offspring = st.localbest.genome + st.vars.cwiseProduct(*st.dirvec);
        } else {
            offspring = sample_gaussian(st.localbest.genome, cov, rng);
        }
        offspring = repair_bounds(std::move(offspring), spec.lower_bounds, spec.upper_bounds);

        double fitness;
        try {
            fitness = evaluate(spec, offspring, budget);
        } catch (const BudgetExhausted&) {
            break;
        }
        ++st.evaluations;

        if (fitness > st.localbest.fitness) {
            st.dirvec = offspring - st.localbest.genome;
            st.localbest.genome = std::move(offspring);
            st.localbest.fitness = fitness;
            st.localbest.stagnation = 0;
        } else {
            for (int d = 0; d < spec.dim; ++d) st.vars[d] += rng.uniform(0.001, 0.01);
        }
    }
    return st;
}

Individual local_search(Individual localbest, const Species& species, FitnessBudget& budget,
                        const ProblemSpec& spec, Rng& rng) {
    return run_local_search(std::move(localbest), species, budget, spec, rng).localbest;
}

}  // namespace eode
