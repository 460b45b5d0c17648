#include "eode/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eode {

namespace {

constexpr double kPeakTolerance = 1e-3;

struct Grid {
    int dim;
    long n;
    Vec lo;
    Vec step;

    long size() const {
        long s = 1;
        for (int d = 0; d < dim; ++d) s *= n;
        return s;
    }

    Vec point(long flat) const {
        Vec x(dim);
        for (int d = 0; d < dim; ++d) {
            x[d] = lo[d] + static_cast<double>(flat % n) * step[d];
            flat /= n;
        }
        return x;
    }
};

/// Shrinking-box grid search around `start`: evaluate an m^D lattice over
/// the box, move to the best point, shrink, repeat.
Vec zoom_refine(const ProblemSpec& spec, Vec best, double best_f, Vec half_width) {
    const int m = spec.dim == 1 ? 41 : (spec.dim == 2 ? 11 : 7);
    const double stop = 1e-13 * (spec.upper_bounds - spec.lower_bounds).maxCoeff();
    long cells = 1;
    for (int d = 0; d < spec.dim; ++d) cells *= m;

    while (half_width.maxCoeff() > stop) {
        const Vec center = best;
        for (long c = 0; c < cells; ++c) {
            Vec x(spec.dim);
            long rest = c;
            for (int d = 0; d < spec.dim; ++d) {
                const double t = static_cast<double>(rest % m) / (m - 1);
                rest /= m;
                x[d] = std::clamp(center[d] - half_width[d] + 2.0 * half_width[d] * t,
                                  spec.lower_bounds[d], spec.upper_bounds[d]);
            }
            const double f = spec.raw(x);
            if (f > best_f) {
                best_f = f;
                best = x;
            }
        }
        // New box spans two lattice spacings on either side.
        half_width *= 4.0 / (m - 1);
    }
    return best;
}

}  // namespace

std::vector<Peak> grid_oracle(const ProblemSpec& spec, long resolution) {
    if (spec.dim > 3) throw DimensionTooHigh("grid oracle supports at most 3 dimensions");
    if (resolution < 3) throw Error("grid oracle needs at least 3 points per dimension");

    Grid grid{spec.dim, resolution, spec.lower_bounds,
              (spec.upper_bounds - spec.lower_bounds) / static_cast<double>(resolution - 1)};
    const long total = grid.size();
    std::vector<double> values(static_cast<std::size_t>(total));
    for (long i = 0; i < total; ++i) values[static_cast<std::size_t>(i)] = spec.raw(grid.point(i));

    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    // Candidates must come within this band of the optimum on the grid; the
    // refinement below closes the remaining gap.
    const double band = std::max(1.0, 0.05 * (*max_it - *min_it));

    std::vector<long> stride(static_cast<std::size_t>(spec.dim));
    stride[0] = 1;
    for (int d = 1; d < spec.dim; ++d) stride[static_cast<std::size_t>(d)] = stride[static_cast<std::size_t>(d - 1)] * resolution;

    long neighbours = 1;
    for (int d = 0; d < spec.dim; ++d) neighbours *= 3;

    // Discrete local maxima, plateaus broken by flat index.
    std::vector<long> candidates;
    for (long i = 0; i < total; ++i) {
        const double v = values[static_cast<std::size_t>(i)];
        if (v < spec.peak_height - band) continue;
        bool is_max = true;
        for (long nb = 0; nb < neighbours && is_max; ++nb) {
            long rest = nb;
            long j = i;
            bool inside = true;
            bool self = true;
            long idx = i;
            for (int d = 0; d < spec.dim; ++d) {
                const long off = rest % 3 - 1;
                rest /= 3;
                const long coord = idx % resolution;
                idx /= resolution;
                if (off != 0) self = false;
                if (coord + off < 0 || coord + off >= resolution) inside = false;
                j += off * stride[static_cast<std::size_t>(d)];
            }
            if (self || !inside) continue;
            const double w = values[static_cast<std::size_t>(j)];
            if (w > v || (w == v && j < i)) is_max = false;
        }
        if (is_max) candidates.push_back(i);
    }

    std::vector<Peak> refined;
    refined.reserve(candidates.size());
    for (long c : candidates) {
        const Vec start = grid.point(c);
        const Vec x = zoom_refine(spec, start, values[static_cast<std::size_t>(c)], 2.0 * grid.step);
        const double f = spec.raw(x);
        if (spec.peak_height - f <= kPeakTolerance) refined.push_back({x, f});
    }

    std::stable_sort(refined.begin(), refined.end(),
                     [](const Peak& a, const Peak& b) { return a.fitness > b.fitness; });
    std::vector<Peak> peaks;
    for (auto& p : refined) {
        const bool fresh = std::none_of(peaks.begin(), peaks.end(), [&](const Peak& q) {
            return distance(p.point, q.point) <= 0.5 * spec.niche_radius;
        });
        if (fresh) peaks.push_back(std::move(p));
    }
    return peaks;
}

}  // namespace eode
