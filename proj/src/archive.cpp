#include "eode/archive.hpp"

#include "eode/engine.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace eode {

std::optional<NearestEntry> PeakArchive::nearest(const Vec& point) const {
    std::optional<NearestEntry> best;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const double d = distance(entries_[i].point, point);
        if (!best || d < best->distance) best = NearestEntry{i, d};
    }
    return best;
}

bool PeakArchive::merge(const Individual& candidate, FitnessBudget& budget, const ProblemSpec& spec) {
    const auto near = nearest(candidate.genome);
    if (!near) {
        entries_.push_back({candidate.genome, candidate.fitness});
        return true;
    }
    Peak& entry = entries_[near->index];
    const Vec mid = repair_bounds(0.5 * (candidate.genome + entry.point), spec.lower_bounds, spec.upper_bounds);
    double mid_fitness;
    try {
        mid_fitness = evaluate(spec, mid, budget);
    } catch (const BudgetExhausted&) {
        return false;
    }

    if (mid_fitness < candidate.fitness && mid_fitness < entry.fitness) {
        entries_.push_back({candidate.genome, candidate.fitness});
        return true;
    }
    if (mid_fitness > candidate.fitness && mid_fitness > entry.fitness) {
        entry = {mid, mid_fitness};
        return true;
    }
    if (candidate.fitness > entry.fitness) {
        entry = {candidate.genome, candidate.fitness};
        return true;
    }
    return false;
}

Population PeakArchive::as_population() const {
    Population out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back({e.point, e.fitness, 0});
    return out;
}

void PeakArchive::write(std::ostream& out) const {
    char buf[32];
    for (const auto& e : entries_) {
        for (Eigen::Index d = 0; d < e.point.size(); ++d) {
            std::snprintf(buf, sizeof buf, "%.17g", e.point[d]);
            out << buf << ',';
        }
        std::snprintf(buf, sizeof buf, "%.17g", e.fitness);
        out << buf << '\n';
    }
}

PeakArchive PeakArchive::read(std::istream& in) {
    PeakArchive archive;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> values;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("malformed archive line: " + line);
            }
        }
        if (values.size() < 2) throw IoError("archive line needs a genome and a fitness: " + line);
        Vec point(static_cast<Eigen::Index>(values.size() - 1));
        for (std::size_t d = 0; d + 1 < values.size(); ++d) point[static_cast<Eigen::Index>(d)] = values[d];
        archive.insert({std::move(point), values.back()});
    }
    return archive;
}

}  // namespace eode
