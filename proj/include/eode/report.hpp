#pragma once

#include "eode/harness.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace eode {

/// One line of the per-run CSV.
struct RunRow {
    int problem = 0;
    double epsilon = 0.0;
    int run = 0;
    std::uint64_t seed = 0;
    int peaks_found = 0;
    int nkp = 0;
    long fes_used = 0;
    double pr = 0.0;
    double sr = 0.0;
};

inline constexpr const char* kRunCsvHeader = "problem,epsilon,run,seed,peaks_found,nkp,fes_used,pr,sr";

std::vector<RunRow> run_rows(const ExperimentResult& result);

void write_run_csv(std::ostream& out, const std::vector<RunRow>& rows);
std::vector<RunRow> read_run_csv(std::istream& in);

/// PR/SR per problem and epsilon, recomputed from per-run rows.
nlohmann::json summarize(const std::vector<RunRow>& rows);

/// Same aggregate as a CSV table: problem,epsilon,runs,pr,sr.
void write_summary_csv(std::ostream& out, const std::vector<RunRow>& rows);

nlohmann::json config_to_json(const RunConfig& config);
/// Fields missing from `j` keep their value in `base`.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

/// Writes results.csv, summary.json, archives/pPP_sSEED.csv and, when the
/// runs carry snapshots, dumps/pPP_sSEED_gGGG.csv under `dir`.
void emit_report(const std::vector<ExperimentResult>& results, const std::filesystem::path& dir);

void write_ablation_csv(std::ostream& out, AblationKind kind, const std::vector<AblationRow>& rows,
                        const std::vector<double>& epsilons);

}  // namespace eode
