#include "eode/bench.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#ifndef EODE_DEFAULT_DATA_DIR
#define EODE_DEFAULT_DATA_DIR "data/cec2013"
#endif

namespace eode {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::string to_string(FunctionId id) { return "F" + std::to_string(static_cast<int>(id)); }

std::string ProblemSpec::name() const {
    return to_string(function) + "(" + std::to_string(dim) + "D)";
}

// ---------------------------------------------------------------------------
// Raw formulas

namespace functions {

double five_uneven_peak_trap(double x) {
    if (x < 0.0) return 0.0;
    if (x < 2.5) return 80.0 * (2.5 - x);
    if (x < 5.0) return 64.0 * (x - 2.5);
    if (x < 7.5) return 64.0 * (7.5 - x);
    if (x < 12.5) return 28.0 * (x - 7.5);
    if (x < 17.5) return 28.0 * (17.5 - x);
    if (x < 22.5) return 32.0 * (x - 17.5);
    if (x < 27.5) return 32.0 * (27.5 - x);
    if (x <= 30.0) return 80.0 * (x - 27.5);
    return 0.0;
}

double equal_maxima(double x) { return std::pow(std::sin(5.0 * kPi * x), 6); }

double uneven_decreasing_maxima(double x) {
    const double envelope = std::exp(-2.0 * std::log(2.0) * std::pow((x - 0.08) / 0.854, 2));
    return envelope * std::pow(std::sin(5.0 * kPi * (std::pow(x, 0.75) - 0.05)), 6);
}

double himmelblau(const Vec& x) {
    const double a = x[0] * x[0] + x[1] - 11.0;
    const double b = x[0] + x[1] * x[1] - 7.0;
    return 200.0 - a * a - b * b;
}

double six_hump_camel_back(const Vec& x) {
    const double x2 = x[0] * x[0];
    const double y2 = x[1] * x[1];
    const double a = (4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2;
    const double b = x[0] * x[1];
    const double c = (4.0 * y2 - 4.0) * y2;
    return -(a + b + c);
}

double shubert(const Vec& x) {
    double result = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double sum = 0.0;
        for (int j = 1; j <= 5; ++j) sum += j * std::cos((j + 1) * x[i] + j);
        result *= sum;
    }
    return -result;
}

double vincent(const Vec& x) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) sum += std::sin(10.0 * std::log(x[i]));
    return sum / static_cast<double>(x.size());
}

double modified_rastrigin(const Vec& x) {
    // k = (3, 4) is the only configuration in the problem table (2D).
    static constexpr std::array<double, 2> k{3.0, 4.0};
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double ki = k[static_cast<std::size_t>(i) % k.size()];
        sum += 10.0 + 9.0 * std::cos(2.0 * kPi * ki * x[i]);
    }
    return -sum;
}

double sphere(const Vec& z) { return z.squaredNorm(); }

double rastrigin(const Vec& z) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i)
        sum += z[i] * z[i] - 10.0 * std::cos(2.0 * kPi * z[i]) + 10.0;
    return sum;
}

namespace {

constexpr int kWeierstrassTerms = 21;  // k = 0..20, a = 0.5, b = 3

struct WeierstrassTables {
    std::array<double, kWeierstrassTerms> a_pow{};
    std::array<double, kWeierstrassTerms> two_pi_b_pow{};
    double offset = 0.0;  // sum_k a^k cos(2 pi b^k 0.5)

    WeierstrassTables() {
        for (int k = 0; k < kWeierstrassTerms; ++k) {
            a_pow[k] = std::pow(0.5, k);
            two_pi_b_pow[k] = 2.0 * kPi * std::pow(3.0, k);
            offset += a_pow[k] * std::cos(two_pi_b_pow[k] * 0.5);
        }
    }
};

const WeierstrassTables& weierstrass_tables() {
    static const WeierstrassTables tables;
    return tables;
}

double griewank_rosenbrock_pair(double x, double y) {
    const double f2 = 100.0 * std::pow(x * x - y, 2) + std::pow(1.0 - x, 2);
    return 1.0 + f2 * f2 / 4000.0 - std::cos(f2);
}

}  // namespace

double weierstrass(const Vec& z) {
    const auto& t = weierstrass_tables();
    double result = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        double sum = 0.0;
        for (int k = 0; k < kWeierstrassTerms; ++k)
            sum += t.a_pow[k] * std::cos(t.two_pi_b_pow[k] * (z[i] + 0.5));
        result += sum;
    }
    return result - t.offset * static_cast<double>(z.size());
}

double griewank(const Vec& z) {
    double sum = 0.0;
    double prod = 1.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        sum += z[i] * z[i] / 4000.0;
        prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum - prod + 1.0;
}

double expanded_griewank_rosenbrock(const Vec& z) {
    const Eigen::Index d = z.size();
    double sum = 0.0;
    for (Eigen::Index i = 0; i + 1 < d; ++i) sum += griewank_rosenbrock_pair(z[i] + 1.0, z[i + 1] + 1.0);
    sum += griewank_rosenbrock_pair(z[d - 1] + 1.0, z[0] + 1.0);
    return sum;
}

}  // namespace functions

// ---------------------------------------------------------------------------
// Composition functions

Mat read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataFileError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof()) throw DataFileError("malformed number in " + path.string());
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataFileError("empty matrix file " + path.string());
    const std::size_t cols = rows.front().size();
    Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DataFileError("ragged rows in " + path.string());
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    return m;
}

CompositionFunction::CompositionFunction(int dim, std::vector<Component> components,
                                         std::vector<double> sigma, std::vector<double> lambda,
                                         Mat optima, std::vector<Mat> rotations)
    : dim_(dim),
      components_(std::move(components)),
      sigma_(std::move(sigma)),
      lambda_(std::move(lambda)),
      optima_(std::move(optima)),
      rotations_(std::move(rotations)) {
    const std::size_t n = components_.size();
    if (sigma_.size() != n || lambda_.size() != n || rotations_.size() != n ||
        static_cast<std::size_t>(optima_.rows()) != n || optima_.cols() != dim_)
        throw Error("inconsistent composition function data");
    // Normalizer: each component's value at x = (5, ..., 5) without shift.
    fmax_.resize(n);
    const Vec five = Vec::Constant(dim_, 5.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec z = rotations_[i].transpose() * (five / lambda_[i]);
        fmax_[i] = components_[i](z);
    }
}

Vec CompositionFunction::transform(const Vec& x, std::size_t i) const {
    const Vec shifted = (x - optima_.row(static_cast<Eigen::Index>(i)).transpose()) / lambda_[i];
    return rotations_[i].transpose() * shifted;
}

double CompositionFunction::operator()(const Vec& x) const {
    constexpr double kScale = 2000.0;
    const std::size_t n = components_.size();
    std::array<double, 8> weight{};

    double max_w = -1.0;
    std::size_t max_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sq = (x - optima_.row(static_cast<Eigen::Index>(i)).transpose()).squaredNorm();
        weight[i] = std::exp(-sq / (2.0 * dim_ * sigma_[i] * sigma_[i]));
        if (weight[i] > max_w) {
            max_w = weight[i];
            max_i = i;
        }
    }
    const double damp = 1.0 - std::pow(max_w, 10);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != max_i && weight[i] != max_w) weight[i] *= damp;
        total += weight[i];
    }
    double result = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = total == 0.0 ? 1.0 / static_cast<double>(n) : weight[i] / total;
        if (w == 0.0) continue;
        result += w * kScale * components_[i](transform(x, i)) / fmax_[i];
    }
    return -result;
}

std::shared_ptr<const CompositionFunction> CompositionFunction::load(
    int n, int dim, const std::filesystem::path& data_dir) {
    using namespace functions;
    std::vector<Component> comps;
    std::vector<double> sigma;
    std::vector<double> lambda;
    bool rotated = false;
    switch (n) {
        case 1:
            comps = {griewank, griewank, weierstrass, weierstrass, sphere, sphere};
            sigma.assign(6, 1.0);
            lambda = {1.0, 1.0, 8.0, 8.0, 1.0 / 5.0, 1.0 / 5.0};
            break;
        case 2:
            comps = {rastrigin, rastrigin, weierstrass, weierstrass, griewank, griewank, sphere, sphere};
            sigma.assign(8, 1.0);
            lambda = {1.0, 1.0, 10.0, 10.0, 1.0 / 10.0, 1.0 / 10.0, 1.0 / 7.0, 1.0 / 7.0};
            break;
        case 3:
            comps = {expanded_griewank_rosenbrock, expanded_griewank_rosenbrock, weierstrass, weierstrass,
                     griewank, griewank};
            sigma = {1.0, 1.0, 2.0, 2.0, 2.0, 2.0};
            lambda = {1.0 / 4.0, 1.0 / 10.0, 2.0, 1.0, 2.0, 5.0};
            rotated = true;
            break;
        case 4:
            comps = {rastrigin, rastrigin, expanded_griewank_rosenbrock, expanded_griewank_rosenbrock,
                     weierstrass, weierstrass, griewank, griewank};
            sigma = {1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0};
            lambda = {4.0, 1.0, 4.0, 1.0, 1.0 / 10.0, 1.0 / 5.0, 1.0 / 10.0, 1.0 / 40.0};
            rotated = true;
            break;
        default:
            throw Error("no composition function CF" + std::to_string(n));
    }
    const auto count = static_cast<Eigen::Index>(comps.size());

    const Mat all_optima = read_matrix(data_dir / "optima.dat");
    if (all_optima.rows() < count || all_optima.cols() < dim)
        throw DataFileError("optima.dat too small for CF" + std::to_string(n) + " in " +
                            std::to_string(dim) + "D");
    Mat optima = all_optima.topLeftCorner(count, dim);

    std::vector<Mat> rotations;
    if (rotated) {
        const auto file = data_dir / ("CF" + std::to_string(n) + "_M_D" + std::to_string(dim) + ".dat");
        const Mat stacked = read_matrix(file);
        if (stacked.rows() < count * dim || stacked.cols() != dim)
            throw DataFileError("unexpected shape in " + file.string());
        for (Eigen::Index i = 0; i < count; ++i) rotations.push_back(stacked.block(i * dim, 0, dim, dim));
    } else {
        rotations.assign(comps.size(), Mat::Identity(dim, dim));
    }
    return std::make_shared<const CompositionFunction>(dim, std::move(comps), std::move(sigma),
                                                       std::move(lambda), std::move(optima),
                                                       std::move(rotations));
}

// ---------------------------------------------------------------------------
// Problem table

namespace {

class LambdaObjective final : public Objective {
public:
    using Fn = double (*)(const Vec&);
    explicit LambdaObjective(Fn fn) : fn_(fn) {}
    double operator()(const Vec& x) const override { return fn_(x); }

private:
    Fn fn_;
};

struct Row {
    FunctionId fn;
    int dim;
    int nkp;
    double peak;
    double radius;
    long max_fes;
    int np;
};

// Peak heights at full precision; the published table rounds them.
constexpr std::array<Row, 20> kTable{{
    {FunctionId::F1, 1, 2, 200.0, 0.01, 50000, 250},
    {FunctionId::F2, 1, 5, 1.0, 0.01, 50000, 250},
    {FunctionId::F3, 1, 1, 1.0, 0.01, 50000, 250},
    {FunctionId::F4, 2, 4, 200.0, 0.01, 50000, 250},
    {FunctionId::F5, 2, 2, 1.031628453489877, 0.5, 50000, 250},
    {FunctionId::F6, 2, 18, 186.7309088310239, 0.5, 200000, 2000},
    {FunctionId::F7, 2, 36, 1.0, 0.2, 200000, 2000},
    {FunctionId::F6, 3, 81, 2709.093505572820, 0.5, 400000, 3000},
    {FunctionId::F7, 3, 216, 1.0, 0.2, 400000, 4000},
    {FunctionId::F8, 2, 12, -2.0, 0.01, 200000, 1000},
    {FunctionId::F9, 2, 6, 0.0, 0.01, 200000, 1000},
    {FunctionId::F10, 2, 8, 0.0, 0.01, 200000, 1000},
    {FunctionId::F11, 2, 6, 0.0, 0.01, 200000, 1000},
    {FunctionId::F11, 3, 6, 0.0, 0.01, 400000, 1000},
    {FunctionId::F12, 3, 8, 0.0, 0.01, 400000, 1000},
    {FunctionId::F11, 5, 6, 0.0, 0.01, 400000, 1000},
    {FunctionId::F12, 5, 8, 0.0, 0.01, 400000, 2000},
    {FunctionId::F11, 10, 6, 0.0, 0.01, 400000, 1000},
    {FunctionId::F12, 10, 8, 0.0, 0.01, 400000, 1000},
    {FunctionId::F12, 20, 8, 0.0, 0.01, 400000, 800},
}};

double f1(const Vec& x) { return functions::five_uneven_peak_trap(x[0]); }
double f2(const Vec& x) { return functions::equal_maxima(x[0]); }
double f3(const Vec& x) { return functions::uneven_decreasing_maxima(x[0]); }

}  // namespace

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("EODE_DATA_DIR"); env != nullptr && *env != '\0') return env;
    return EODE_DEFAULT_DATA_DIR;
}

ProblemSpec problem_spec(int index) { return problem_spec(index, default_data_dir()); }

ProblemSpec problem_spec(int index, const std::filesystem::path& data_dir) {
    if (index < 1 || index > static_cast<int>(kTable.size())) throw UnknownProblem(index);
    const Row& row = kTable[static_cast<std::size_t>(index - 1)];

    ProblemSpec spec;
    spec.index = index;
    spec.function = row.fn;
    spec.dim = row.dim;
    spec.num_known_peaks = row.nkp;
    spec.peak_height = row.peak;
    spec.niche_radius = row.radius;
    spec.max_fes = row.max_fes;
    spec.default_np = row.np;

    auto box = [&](double lo, double hi) {
        spec.lower_bounds = Vec::Constant(row.dim, lo);
        spec.upper_bounds = Vec::Constant(row.dim, hi);
    };
    auto plain = [&](LambdaObjective::Fn fn) { spec.objective = std::make_shared<LambdaObjective>(fn); };

    switch (row.fn) {
        case FunctionId::F1: box(0.0, 30.0); plain(f1); break;
        case FunctionId::F2: box(0.0, 1.0); plain(f2); break;
        case FunctionId::F3: box(0.0, 1.0); plain(f3); break;
        case FunctionId::F4: box(-6.0, 6.0); plain(functions::himmelblau); break;
        case FunctionId::F5:
            spec.lower_bounds = Vec{{-1.9, -1.1}};
            spec.upper_bounds = Vec{{1.9, 1.1}};
            plain(functions::six_hump_camel_back);
            break;
        case FunctionId::F6: box(-10.0, 10.0); plain(functions::shubert); break;
        case FunctionId::F7: box(0.25, 10.0); plain(functions::vincent); break;
        case FunctionId::F8: box(0.0, 1.0); plain(functions::modified_rastrigin); break;
        case FunctionId::F9:
        case FunctionId::F10:
        case FunctionId::F11:
        case FunctionId::F12: {
            box(-5.0, 5.0);
            const int cf = static_cast<int>(row.fn) - static_cast<int>(FunctionId::F9) + 1;
            spec.objective = CompositionFunction::load(cf, row.dim, data_dir);
            break;
        }
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Evaluation and scoring

double evaluate(const ProblemSpec& spec, const Vec& point, FitnessBudget& budget) {
    if (point.size() != spec.dim)
        throw DimensionMismatch(static_cast<std::size_t>(spec.dim), static_cast<std::size_t>(point.size()));
    budget.charge();
    return spec.raw(point);
}

Individual make_individual(const ProblemSpec& spec, Vec genome, FitnessBudget& budget) {
    Individual ind;
    ind.fitness = evaluate(spec, genome, budget);
    ind.genome = std::move(genome);
    return ind;
}

int count_found_peaks(const ProblemSpec& spec, std::span<const Individual> solutions, double epsilon) {
    std::vector<std::size_t> order(solutions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return solutions[a].fitness > solutions[b].fitness;
    });
    std::vector<const Vec*> accepted;
    for (std::size_t i : order) {
        if (static_cast<int>(accepted.size()) >= spec.num_known_peaks) break;
        const Individual& s = solutions[i];
        if (spec.peak_height - s.fitness > epsilon) continue;
        const bool distinct = std::all_of(accepted.begin(), accepted.end(), [&](const Vec* p) {
            return distance(*p, s.genome) > spec.niche_radius;
        });
        if (distinct) accepted.push_back(&s.genome);
    }
    return static_cast<int>(accepted.size());
}

PrSr aggregate_pr_sr(std::span<const int> per_run_found, int nkp) {
    if (per_run_found.empty()) throw EmptyRuns();
    const double runs = static_cast<double>(per_run_found.size());
    const double total = std::accumulate(per_run_found.begin(), per_run_found.end(), 0.0);
    const auto successes = std::count(per_run_found.begin(), per_run_found.end(), nkp);
    return {total / (runs * nkp), static_cast<double>(successes) / runs};
}

}  // namespace eode
