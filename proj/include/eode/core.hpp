#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace eode {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A population member. Fitness is in the maximization sense.
struct Individual {
    Vec genome;
    double fitness = 0.0;
    int stagnation = 0;
};

using Population = std::vector<Individual>;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BudgetExhausted : public Error {
public:
    BudgetExhausted() : Error("fitness evaluation budget exhausted") {}
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)) {}
};

class UnknownProblem : public Error {
public:
    explicit UnknownProblem(int index) : Error("unknown problem index " + std::to_string(index)) {}
};

class DimensionTooHigh : public Error {
public:
    using Error::Error;
};

class EmptyRuns : public Error {
public:
    EmptyRuns() : Error("no runs to aggregate") {}
};

class EmptySuccessSet : public Error {
public:
    EmptySuccessSet() : Error("success set is empty") {}
};

class PopulationTooSmall : public Error {
public:
    using Error::Error;
};

class TooFewMembers : public Error {
public:
    using Error::Error;
};

class SpeciesTooSmall : public Error {
public:
    using Error::Error;
};

class DataFileError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Random numbers

/// Seedable generator with platform-independent uniform and Gaussian draws.
/// std:: distributions are implementation-defined; these conversions are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        const std::uint64_t range = n;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % range;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % range);
    }

    /// Standard normal via the Marsaglia polar method.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// k distinct indices from [0, n) excluding `exclude` (pass n to exclude nothing).
    std::vector<std::size_t> distinct(std::size_t n, std::size_t k, std::size_t exclude);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline std::vector<std::size_t> Rng::distinct(std::size_t n, std::size_t k, std::size_t exclude) {
    std::vector<std::size_t> out;
    out.reserve(k);
    while (out.size() < k) {
        const std::size_t c = index(n);
        if (c == exclude) continue;
        bool seen = false;
        for (auto o : out) seen = seen || (o == c);
        if (!seen) out.push_back(c);
    }
    return out;
}

}  // namespace eode
