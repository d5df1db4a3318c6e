#include "subrepair/errors.hpp"
#include "subrepair/pipeline.hpp"
#include "subrepair/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace subrepair;
namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write: " + path.string());
    out << text;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

struct CommonFlags {
    RunConfig config;
    std::string algorithm = "ppis";
    std::string labels_path;
    std::string labels_col;
    std::string exclude_cols;

    void attach_io(CLI::App& cmd, bool with_rules = true) {
        cmd.add_option("--data", config.data_path, "input CSV with header")->required();
        if (with_rules)
            cmd.add_option("--rules", config.rules_path, "rule file")->required();
        cmd.add_option("--missing-token", config.missing_token,
                       "cell literal treated as missing (default: empty string)");
        cmd.add_option("--exclude-cols", exclude_cols,
                       "comma separated columns dropped before processing");
        cmd.add_option("--out", config.output_dir, "directory for report files");
        cmd.add_option("--threads", config.threads, "worker pool size")
            ->envname("SUBREPAIR_THREADS");
    }

    void attach_repair(CLI::App& cmd) {
        cmd.add_option("--labels", labels_path, "ground truth CSV (row_id,label or label)");
        cmd.add_option("--labels-col", labels_col, "label column inside the data file");
        cmd.add_option("--algorithm", algorithm, "ppis or mico")
            ->check(CLI::IsMember({"ppis", "mico"}));
        cmd.add_option("--k", config.k, "neighbor count for density");
        cmd.add_option("--alpha", config.alpha, "CFD-frequency weight share, in (0,1)");
        cmd.add_option("--epsilon", config.epsilon, "density/cost stabilizer");
        cmd.add_option("--time-limit-ms", config.time_limit_ms,
                       "per-component MICO budget; 0 forces fallback");
        cmd.add_option("--seed", config.seed, "rng seed (bench/injection)");
    }

    RunConfig finalize() {
        if (!labels_path.empty()) config.labels_path = labels_path;
        if (!labels_col.empty()) config.labels_col = labels_col;
        if (!exclude_cols.empty()) {
            std::istringstream in(exclude_cols);
            std::string part;
            while (std::getline(in, part, ',')) config.exclude_cols.push_back(part);
        }
        config.algorithm = algorithm == "mico" ? Algorithm::MICO : Algorithm::PPIS;
        return config;
    }
};

fs::path ensure_out_dir(const RunConfig& config) {
    fs::path dir = config.output_dir.empty() ? fs::path(".") : fs::path(config.output_dir);
    fs::create_directories(dir);
    return dir;
}

int cmd_detect(CommonFlags& flags) {
    const RunConfig config = flags.finalize();
    PipelineResult result = run_detection_from_files(config);

    std::cout << "detect: n=" << result.dataset.row_count()
              << " conflicting=" << result.detection.graph.vertex_count()
              << " edges=" << result.detection.graph.edge_count()
              << " components=" << result.components.size() << "\n";

    if (!config.output_dir.empty()) {
        const fs::path dir = ensure_out_dir(config);
        write_text(dir / "graph.txt", graph_dump(result.detection.graph));
        write_json(dir / "stats.json", stats_json(result));
    }
    return 0;
}

int cmd_repair(CommonFlags& flags) {
    const RunConfig config = flags.finalize();
    const auto started = std::chrono::steady_clock::now();
    PipelineResult result = run_repair_from_files(config);
    const double wall_ms = std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
                               std::chrono::steady_clock::now() - started)
                               .count();

    std::map<std::string, int> by_strategy;
    for (const ComponentTrace& trace : result.plan.per_component)
        ++by_strategy[strategy_name(trace.strategy)];
    std::ostringstream summary;
    summary << "repair: removed=" << result.plan.removal_set.size();
    for (const auto& [name, count] : by_strategy) summary << ' ' << name << '=' << count;
    summary << " wall_ms=" << wall_ms;
    std::cout << summary.str() << "\n";

    if (!config.output_dir.empty()) {
        const fs::path dir = ensure_out_dir(config);
        std::ostringstream removal;
        for (int v : result.plan.removal_set) removal << v << '\n';
        write_text(dir / "removal.txt", removal.str());
        write_json(dir / "plan.json", plan_json(result));
        write_text(dir / "graph.txt", graph_dump(result.detection.graph));
        write_json(dir / "stats.json", stats_json(result));
        write_text(dir / "scores.csv", scores_csv(result));
        write_json(dir / "components.json", components_json(result));
        write_json(dir / "timings.json", timings_json(result));
        if (result.metrics) write_json(dir / "metrics.json", metrics_json(*result.metrics));
    }
    return 0;
}

int cmd_bench(CommonFlags& flags, const std::vector<int>& rows_list, int cols,
              const std::vector<double>& rates) {
    RunConfig config = flags.finalize();
    std::ostringstream csv;
    csv << "algorithm,rows,cols,rate,removed,detect_ms,score_ms,repair_ms,total_ms\n";

    for (Algorithm algorithm : {Algorithm::PPIS, Algorithm::MICO}) {
        for (int rows : rows_list) {
            for (double rate : rates) {
                SyntheticData synthetic =
                    make_synthetic_clean(rows, cols, std::max(2, rows / 10), config.seed);
                auto [dirty, truth] =
                    inject_errors(synthetic.dataset, synthetic.rules, rate, config.seed);

                RunConfig run = config;
                run.algorithm = algorithm;
                PipelineResult result = run_repair_pipeline(
                    std::move(dirty), synthetic.rules, std::move(truth), run);

                const auto ms = [&](const char* phase) {
                    auto it = result.timings_ms.find(phase);
                    return it == result.timings_ms.end() ? 0.0 : it->second;
                };
                const double total = ms("detect") + ms("decompose") + ms("score") + ms("repair");
                csv << (algorithm == Algorithm::PPIS ? "ppis" : "mico") << ',' << rows << ','
                    << cols << ',' << rate << ',' << result.plan.removal_set.size() << ','
                    << ms("detect") << ',' << ms("score") << ',' << ms("repair") << ','
                    << total << '\n';
            }
        }
    }
    std::cout << csv.str();
    if (!config.output_dir.empty()) {
        const fs::path dir = ensure_out_dir(config);
        write_text(dir / "bench.csv", csv.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constraint-driven subset repair over CFD/FD rules"};
    app.require_subcommand(1);

    CommonFlags detect_flags;
    CLI::App* detect = app.add_subcommand("detect", "find conflicts, dump graph and stats");
    detect_flags.attach_io(*detect);

    CommonFlags repair_flags;
    CLI::App* repair = app.add_subcommand("repair", "detect, score and repair");
    repair_flags.attach_io(*repair);
    repair_flags.attach_repair(*repair);

    CommonFlags bench_flags;
    std::vector<int> bench_rows{500, 1000, 2000};
    int bench_cols = 6;
    std::vector<double> bench_rates{0.1};
    CLI::App* bench = app.add_subcommand("bench", "synthetic scaling benchmark");
    bench->add_option("--rows", bench_rows, "row counts to benchmark");
    bench->add_option("--cols", bench_cols, "column count");
    bench->add_option("--rates", bench_rates, "error rates");
    bench->add_option("--out", bench_flags.config.output_dir, "directory for bench.csv");
    bench->add_option("--seed", bench_flags.config.seed, "rng seed");
    bench->add_option("--threads", bench_flags.config.threads, "worker pool size")
        ->envname("SUBREPAIR_THREADS");
    bench->add_option("--k", bench_flags.config.k, "neighbor count for density");
    bench->add_option("--time-limit-ms", bench_flags.config.time_limit_ms,
                      "per-component MICO budget");

    try {
        app.parse(argc, argv);
        if (detect->parsed()) return cmd_detect(detect_flags);
        if (repair->parsed()) return cmd_repair(repair_flags);
        if (bench->parsed()) return cmd_bench(bench_flags, bench_rows, bench_cols, bench_rates);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
