#pragma once

#include "eode/bench.hpp"
#include "eode/core.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eode {

struct NearestEntry {
    std::size_t index;
    double distance;
};

/// Distinct peaks located during a run.
class PeakArchive {
public:
    const std::vector<Peak>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// Euclidean-nearest entry; the lowest index wins ties.
    std::optional<NearestEntry> nearest(const Vec& point) const;

    /// Inserts `candidate` if a valley separates it from its nearest entry,
    /// otherwise keeps the better representative of the shared peak (the
    /// midpoint, if it beats both). One evaluation unless the archive is
    /// empty. On budget exhaustion the archive is left unchanged.
    /// Returns true if the archive changed.
    bool merge(const Individual& candidate, FitnessBudget& budget, const ProblemSpec& spec);

    void insert(Peak peak) { entries_.push_back(std::move(peak)); }

    Population as_population() const;

    /// One line per entry: genome components then fitness, comma-separated.
    void write(std::ostream& out) const;
    static PeakArchive read(std::istream& in);

private:
    std::vector<Peak> entries_;
};

}  // namespace eode
