#include "eode/report.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace eode {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

}  // namespace

std::vector<RunRow> run_rows(const ExperimentResult& result) {
    std::vector<RunRow> rows;
    const auto& eps = result.config.epsilons;
    for (std::size_t e = 0; e < eps.size(); ++e) {
        for (std::size_t r = 0; r < result.runs.size(); ++r) {
            const RunResult& run = result.runs[r];
            RunRow row;
            row.problem = run.problem;
            row.epsilon = eps[e];
            row.run = static_cast<int>(r);
            row.seed = run.seed;
            row.peaks_found = run.peaks_found.at(e);
            row.nkp = result.nkp;
            row.fes_used = run.fes_used;
            row.pr = static_cast<double>(row.peaks_found) / row.nkp;
            row.sr = row.peaks_found >= row.nkp ? 1.0 : 0.0;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_run_csv(std::ostream& out, const std::vector<RunRow>& rows) {
    out << kRunCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.problem << ',' << fmt("%g", r.epsilon) << ',' << r.run << ',' << r.seed << ',' << r.peaks_found
            << ',' << r.nkp << ',' << r.fes_used << ',' << fmt("%.10g", r.pr) << ',' << fmt("%g", r.sr) << '\n';
    }
}

std::vector<RunRow> read_run_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kRunCsvHeader) throw IoError("missing or unexpected CSV header");
    std::vector<RunRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 9) throw IoError("expected 9 columns: " + line);
        try {
            RunRow r;
            r.problem = std::stoi(cells[0]);
            r.epsilon = std::stod(cells[1]);
            r.run = std::stoi(cells[2]);
            r.seed = std::stoull(cells[3]);
            r.peaks_found = std::stoi(cells[4]);
            r.nkp = std::stoi(cells[5]);
            r.fes_used = std::stol(cells[6]);
            r.pr = std::stod(cells[7]);
            r.sr = std::stod(cells[8]);
            rows.push_back(r);
        } catch (const std::logic_error&) {
            throw IoError("malformed CSV line: " + line);
        }
    }
    return rows;
}

namespace {

struct Cell {
    int nkp = 0;
    std::vector<int> found;
};

/// (problem, epsilon) -> found counts, epsilons in descending order.
std::map<std::pair<int, double>, Cell, std::less<>> group(const std::vector<RunRow>& rows) {
    std::map<std::pair<int, double>, Cell, std::less<>> cells;
    for (const auto& r : rows) {
        Cell& c = cells[{r.problem, -r.epsilon}];
        c.nkp = r.nkp;
        c.found.push_back(r.peaks_found);
    }
    return cells;
}

}  // namespace

nlohmann::json summarize(const std::vector<RunRow>& rows) {
    nlohmann::json problems = nlohmann::json::array();
    int current = -1;
    for (const auto& [key, cell] : group(rows)) {
        if (key.first != current) {
            current = key.first;
            problems.push_back({{"problem", current},
                                {"nkp", cell.nkp},
                                {"runs", cell.found.size()},
                                {"scores", nlohmann::json::array()}});
        }
        const PrSr s = aggregate_pr_sr(cell.found, cell.nkp);
        problems.back()["scores"].push_back({{"epsilon", -key.second}, {"pr", s.pr}, {"sr", s.sr}});
    }
    return {{"problems", problems}};
}

void write_summary_csv(std::ostream& out, const std::vector<RunRow>& rows) {
    out << "problem,epsilon,runs,pr,sr\n";
    for (const auto& [key, cell] : group(rows)) {
        const PrSr s = aggregate_pr_sr(cell.found, cell.nkp);
        out << key.first << ',' << fmt("%g", -key.second) << ',' << cell.found.size() << ','
            << fmt("%.10g", s.pr) << ',' << fmt("%.10g", s.sr) << '\n';
    }
}

nlohmann::json config_to_json(const RunConfig& c) {
    return {{"problem", c.problem},
            {"np", c.np},
            {"max_fes", c.max_fes},
            {"runs", c.runs},
            {"base_seed", c.base_seed},
            {"phi1", c.phi1},
            {"phi2", c.phi2},
            {"minsize1", c.minsize1},
            {"minsize2", c.minsize2},
            {"delta", c.delta},
            {"mutation_mode", to_string(c.mode)},
            {"jr_window", to_string(c.jr_window)},
            {"max_gen", c.max_gen},
            {"epsilons", c.epsilons},
            {"stagnation_k", c.stagnation_k},
            {"dump_generations", c.dump_generations}};
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig c) {
    if (!j.is_object()) throw Error("config must be a JSON object");
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) j.at(key).get_to(field);
        };
        get("problem", c.problem);
        get("np", c.np);
        get("max_fes", c.max_fes);
        get("runs", c.runs);
        get("base_seed", c.base_seed);
        get("phi1", c.phi1);
        get("phi2", c.phi2);
        get("minsize1", c.minsize1);
        get("minsize2", c.minsize2);
        get("delta", c.delta);
        get("max_gen", c.max_gen);
        get("epsilons", c.epsilons);
        get("stagnation_k", c.stagnation_k);
        get("dump_generations", c.dump_generations);
        get("data_dir", c.data_dir);
        if (j.contains("mutation_mode")) c.mode = parse_mutation_mode(j.at("mutation_mode").get<std::string>());
        if (j.contains("jr_window")) c.jr_window = parse_jump_window(j.at("jr_window").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad config: ") + e.what());
    }
    return c;
}

void emit_report(const std::vector<ExperimentResult>& results, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    std::vector<RunRow> rows;
    for (const auto& r : results) {
        const auto part = run_rows(r);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    {
        auto out = open_out(dir / "results.csv");
        write_run_csv(out, rows);
    }
    {
        nlohmann::json summary = summarize(rows);
        summary["configs"] = nlohmann::json::array();
        for (const auto& r : results) summary["configs"].push_back(config_to_json(r.config));
        auto out = open_out(dir / "summary.json");
        out << summary.dump(2) << '\n';
    }

    char name[64];
    for (const auto& res : results) {
        for (const auto& run : res.runs) {
            std::filesystem::create_directories(dir / "archives", ec);
            std::snprintf(name, sizeof name, "p%02d_s%llu.csv", run.problem,
                          static_cast<unsigned long long>(run.seed));
            auto out = open_out(dir / "archives" / name);
            run.archive.write(out);

            for (const auto& snap : run.snapshots) {
                std::filesystem::create_directories(dir / "dumps", ec);
                std::snprintf(name, sizeof name, "p%02d_s%llu_g%03d.csv", run.problem,
                              static_cast<unsigned long long>(run.seed), snap.generation);
                auto dump = open_out(dir / "dumps" / name);
                PeakArchive members;
                for (const auto& m : snap.population) members.insert({m.genome, m.fitness});
                members.write(dump);
            }
        }
    }
}

void write_ablation_csv(std::ostream& out, AblationKind kind, const std::vector<AblationRow>& rows,
                        const std::vector<double>& epsilons) {
    out << "kind,variant,problem,epsilon,pr,sr\n";
    for (const auto& r : rows) {
        for (std::size_t e = 0; e < epsilons.size() && e < r.scores.size(); ++e) {
            out << to_string(kind) << ',' << r.variant << ',' << r.problem << ',' << fmt("%g", epsilons[e]) << ','
                << fmt("%.10g", r.scores[e].pr) << ',' << fmt("%.10g", r.scores[e].sr) << '\n';
        }
    }
}

}  // namespace eode
