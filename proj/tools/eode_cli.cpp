#include "eode/harness.hpp"
#include "eode/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using eode::RunConfig;

// Flags shared by `run` and `ablate`. Values stay unset unless given, so a
// config file can supply them.
struct CommonFlags {
    std::string config_path;
    int runs = 0;
    std::uint64_t seed = 0;
    int np = 0;
    long max_fes = 0;
    std::string mode;
    double phi1 = 0.0;
    double phi2 = 0.0;
    std::string jr;
    int max_gen = 0;
    std::string data_dir;
    std::string out;

    CLI::Option* o_runs = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_np = nullptr;
    CLI::Option* o_max_fes = nullptr;
    CLI::Option* o_mode = nullptr;
    CLI::Option* o_phi1 = nullptr;
    CLI::Option* o_phi2 = nullptr;
    CLI::Option* o_jr = nullptr;
    CLI::Option* o_max_gen = nullptr;
    CLI::Option* o_data_dir = nullptr;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON file with RunConfig fields")->check(CLI::ExistingFile);
        o_runs = app->add_option("--runs", runs, "independent runs");
        o_seed = app->add_option("--seed", seed, "base seed; run i uses seed + i");
        o_np = app->add_option("--np", np, "population size");
        o_max_fes = app->add_option("--max-fes", max_fes, "evaluation budget per run");
        o_mode = app->add_option("--mode", mode, "mutation operators")
                     ->check(CLI::IsMember({"eode", "eode-r", "eode-b", "eode-rb"}));
        o_phi1 = app->add_option("--phi1", phi1, "first-level cut factor");
        o_phi2 = app->add_option("--phi2", phi2, "second-level cut factor");
        o_jr = app->add_option("--jr", jr, "opposition window")->check(CLI::IsMember({"late", "early", "full"}));
        o_max_gen = app->add_option("--max-gen", max_gen, "inner DE generations per species");
        o_data_dir = app->add_option("--data-dir", data_dir, "composition data directory");
        app->add_option("--out", out, "output directory");
    }

    RunConfig build() const {
        RunConfig c;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw eode::Error(config_path + ": " + e.what());
            }
            c = eode::config_from_json(j, c);
        }
        if (*o_runs) c.runs = runs;
        if (*o_seed) c.base_seed = seed;
        if (*o_np) c.np = np;
        if (*o_max_fes) c.max_fes = max_fes;
        if (*o_mode) c.mode = eode::parse_mutation_mode(mode);
        if (*o_phi1) c.phi1 = phi1;
        if (*o_phi2) c.phi2 = phi2;
        if (*o_jr) c.jr_window = eode::parse_jump_window(jr);
        if (*o_max_gen) c.max_gen = max_gen;
        if (*o_data_dir) c.data_dir = data_dir;
        return c;
    }
};

void print_scores(const std::string& label, const std::vector<double>& eps, const std::vector<eode::PrSr>& scores) {
    std::printf("%s\n", label.c_str());
    for (std::size_t e = 0; e < eps.size() && e < scores.size(); ++e)
        std::printf("  eps=%-7g PR=%.4f SR=%.4f\n", eps[e], scores[e].pr, scores[e].sr);
}

std::vector<int> parse_problems(const std::vector<int>& given) {
    if (!given.empty()) return given;
    std::vector<int> all;
    for (int p = 1; p <= 20; ++p) all.push_back(p);
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EODE multimodal optimizer on the CEC 2013 niching benchmark"};
    app.require_subcommand(1);

    // run
    CommonFlags run_flags;
    int run_problem = 0;
    bool dump = false;
    auto* run = app.add_subcommand("run", "run one problem and write a report");
    auto* o_problem = run->add_option("--problem", run_problem, "problem index 1-20")->check(CLI::Range(1, 20));
    run->add_flag("--dump-generations", dump, "write the population after every framework generation");
    run_flags.attach(run);

    // ablate
    CommonFlags ablate_flags;
    std::string kind;
    std::vector<int> ablate_problems;
    auto* ablate = app.add_subcommand("ablate", "compare algorithm variants");
    ablate->add_option("--kind", kind, "mutation | phi | jr")
        ->required()
        ->check(CLI::IsMember({"mutation", "phi", "jr"}));
    ablate->add_option("--problems", ablate_problems, "problem indices (default: all 20)")
        ->check(CLI::Range(1, 20));
    ablate_flags.attach(ablate);

    // report
    std::string report_in;
    std::string format = "csv";
    auto* report = app.add_subcommand("report", "summarize a results directory");
    report->add_option("--in", report_in, "directory holding results.csv")->required();
    report->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    // oracle
    int oracle_problem = 1;
    long resolution = 0;
    auto* oracle = app.add_subcommand("oracle", "grid-search the peaks of a 1D-3D problem");
    oracle->add_option("--problem", oracle_problem, "problem index")->required()->check(CLI::Range(1, 20));
    oracle->add_option("--resolution", resolution, "grid points per dimension");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            RunConfig cfg = run_flags.build();
            if (*o_problem) cfg.problem = run_problem;
            if (dump) cfg.dump_generations = true;
            const auto result = eode::run_experiment(cfg);
            const std::string out = run_flags.out.empty() ? "results" : run_flags.out;
            eode::emit_report({result}, out);
            const auto spec = eode::problem_spec(cfg.problem, cfg.data_dir.empty() ? eode::default_data_dir()
                                                                                   : std::filesystem::path(cfg.data_dir));
            print_scores(spec.name() + ", " + std::to_string(cfg.runs) + " runs", cfg.epsilons, result.aggregate);
            std::printf("report written to %s\n", out.c_str());
        } else if (*ablate) {
            const RunConfig base = ablate_flags.build();
            const auto k = eode::parse_ablation_kind(kind);
            const auto problems = parse_problems(ablate_problems);
            const auto rows = eode::run_ablation(k, base, problems);

            const std::string out = ablate_flags.out.empty() ? "ablation" : ablate_flags.out;
            std::filesystem::create_directories(out);
            std::ofstream csv(std::filesystem::path(out) / ("ablation_" + kind + ".csv"), std::ios::binary);
            if (!csv) throw eode::IoError("cannot write to " + out);
            eode::write_ablation_csv(csv, k, rows, base.epsilons);

            std::vector<std::string> labels;
            for (const auto& v : eode::ablation_variants(k, base)) labels.push_back(v.label);
            for (std::size_t e = 0; e < base.epsilons.size(); ++e) {
                const auto wins = eode::best_counts(rows, labels, e);
                std::printf("eps=%-7g", base.epsilons[e]);
                for (std::size_t v = 0; v < labels.size(); ++v) std::printf("  %s:%d", labels[v].c_str(), wins[v]);
                std::printf("\n");
            }
        } else if (*report) {
            std::ifstream in(std::filesystem::path(report_in) / "results.csv");
            if (!in) throw eode::IoError("cannot read " + report_in + "/results.csv");
            const auto rows = eode::read_run_csv(in);
            if (format == "json") {
                std::cout << eode::summarize(rows).dump(2) << '\n';
            } else {
                eode::write_summary_csv(std::cout, rows);
            }
        } else if (*oracle) {
            const auto spec = eode::problem_spec(oracle_problem);
            if (resolution <= 0) resolution = spec.dim == 1 ? 1000000 : spec.dim == 2 ? 2000 : 200;
            const auto peaks = eode::grid_oracle(spec, resolution);
            std::printf("%s: %zu peaks (known %d), height %.10g\n", spec.name().c_str(), peaks.size(),
                        spec.num_known_peaks, spec.peak_height);
            for (const auto& p : peaks) {
                for (Eigen::Index d = 0; d < p.point.size(); ++d) std::printf("%s%.12f", d ? "," : "", p.point[d]);
                std::printf(",%.12g\n", p.fitness);
            }
        }
    } catch (const eode::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
