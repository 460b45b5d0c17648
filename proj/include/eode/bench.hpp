#pragma once

#include "eode/core.hpp"

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace eode {

/// Base functions of the CEC 2013 niching suite. F9..F12 are the
/// composition functions CF1..CF4.
enum class FunctionId { F1 = 1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12 };

std::string to_string(FunctionId id);

class Objective {
public:
    virtual ~Objective() = default;
    virtual double operator()(const Vec& x) const = 0;
};

/// One benchmark problem. Immutable once built; safe to share across runs.
struct ProblemSpec {
    int index = 0;
    FunctionId function = FunctionId::F1;
    int dim = 1;
    Vec lower_bounds;
    Vec upper_bounds;
    int num_known_peaks = 1;
    /// Global optimum value at full precision (rounded in the published table).
    double peak_height = 0.0;
    double niche_radius = 0.01;
    long max_fes = 0;
    int default_np = 0;
    std::shared_ptr<const Objective> objective;

    /// Unbudgeted objective value. Use `evaluate` inside the optimizer.
    double raw(const Vec& x) const { return (*objective)(x); }

    /// "F6(2D)"
    std::string name() const;
};

/// Directory holding optima.dat and the CF*_M_D*.dat rotation files.
/// Honors the EODE_DATA_DIR environment variable, otherwise the bundled set.
std::filesystem::path default_data_dir();

/// Table row `index` (1..20); throws UnknownProblem outside that range.
ProblemSpec problem_spec(int index);
ProblemSpec problem_spec(int index, const std::filesystem::path& data_dir);

/// Counts objective evaluations against a hard cap.
class FitnessBudget {
public:
    explicit FitnessBudget(long cap) : cap_(cap) {}

    long used() const { return used_; }
    long cap() const { return cap_; }
    long remaining() const { return cap_ - used_; }
    bool exhausted() const { return used_ >= cap_; }

    /// Consumes one evaluation or throws BudgetExhausted.
    void charge() {
        if (used_ >= cap_) throw BudgetExhausted();
        ++used_;
    }

private:
    long used_ = 0;
    long cap_;
};

/// Budgeted evaluation: one unit per call, no exceptions.
double evaluate(const ProblemSpec& spec, const Vec& point, FitnessBudget& budget);

/// Evaluates `genome` and wraps it as a fresh Individual.
Individual make_individual(const ProblemSpec& spec, Vec genome, FitnessBudget& budget);

/// Greedy fitness-sorted peak counting with niche-radius deduplication.
/// Consumes no budget; result never exceeds the known peak count.
int count_found_peaks(const ProblemSpec& spec, std::span<const Individual> solutions,
                      double epsilon);

struct PrSr {
    double pr = 0.0;
    double sr = 0.0;
};

/// Peak ratio and success rate over independent runs.
PrSr aggregate_pr_sr(std::span<const int> per_run_found, int nkp);

struct Peak {
    Vec point;
    double fitness = 0.0;
};

/// Brute-force peak finder: grid scan, pattern-search refinement, then
/// keeps the distinct peaks within 1e-3 of the global optimum value.
/// `resolution` is the number of grid points per dimension.
std::vector<Peak> grid_oracle(const ProblemSpec& spec, long resolution);

/// Euclidean distance.
inline double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

// ---------------------------------------------------------------------------
// Raw formulas, exposed for tests and data tools.

namespace functions {

double five_uneven_peak_trap(double x);
double equal_maxima(double x);
double uneven_decreasing_maxima(double x);
double himmelblau(const Vec& x);
double six_hump_camel_back(const Vec& x);
double shubert(const Vec& x);
double vincent(const Vec& x);
double modified_rastrigin(const Vec& x);

// Minimization-sense components of the composition functions.
double sphere(const Vec& z);
double rastrigin(const Vec& z);
double weierstrass(const Vec& z);
double griewank(const Vec& z);
double expanded_griewank_rosenbrock(const Vec& z);

}  // namespace functions

/// Reads a whitespace-separated row-major matrix.
Mat read_matrix(const std::filesystem::path& path);

/// CF1..CF4: weighted blend of shifted, rotated and scaled base functions,
/// negated so every global optimum sits at height 0.
class CompositionFunction final : public Objective {
public:
    using Component = double (*)(const Vec&);

    CompositionFunction(int dim, std::vector<Component> components, std::vector<double> sigma,
                        std::vector<double> lambda, Mat optima, std::vector<Mat> rotations);

    /// Builds CFn (n in 1..4) from the data directory.
    static std::shared_ptr<const CompositionFunction> load(int n, int dim,
                                                           const std::filesystem::path& data_dir);

    double operator()(const Vec& x) const override;

    /// Shift vector of component i (the location of a global optimum).
    Vec optimum(std::size_t i) const { return optima_.row(static_cast<Eigen::Index>(i)).transpose(); }
    std::size_t size() const { return components_.size(); }

private:
    Vec transform(const Vec& x, std::size_t i) const;

    int dim_;
    std::vector<Component> components_;
    std::vector<double> sigma_;
    std::vector<double> lambda_;
    Mat optima_;
    std::vector<Mat> rotations_;
    std::vector<double> fmax_;
};

}  // namespace eode
