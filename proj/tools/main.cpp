#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yielon/config.hpp"
#include "yielon/experiment.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::optional<std::uint64_t>& seed,
            const std::optional<int>& episodes, const std::optional<std::string>& out,
            const std::optional<std::string>& regime, const std::optional<bool>& deterministic) {
    yielon::ExperimentConfig cfg = yielon::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (episodes) cfg.episodes = *episodes;
    if (out) cfg.out_dir = *out;
    if (deterministic) cfg.deterministic = *deterministic;
    if (regime) {
        const auto parsed = yielon::regime_from_string(*regime);
        if (!parsed) {
            std::cerr << "unknown regime '" << *regime << "'\n";
            return 1;
        }
        cfg.regime = *parsed;
    }
    cfg.finalize();

    // Stream rows as they are produced so a failed run still leaves a trace.
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream trace(std::filesystem::path(cfg.out_dir) / "trace.csv", std::ios::trunc);
    if (!trace) {
        std::cerr << "cannot write to " << cfg.out_dir << "\n";
        return 1;
    }
    trace << yielon::kTraceHeader << '\n';
    auto sink = [&trace](const yielon::EpisodeRecord& r) { trace << yielon::trace_line(r) << '\n'; };

    const yielon::RunResult result = yielon::run_experiment(cfg, sink);
    trace.close();
    yielon::write_outputs(result, cfg.out_dir);

    std::cout << "regime " << result.summary.regime << ", seed " << result.summary.seed << ", "
              << result.summary.episodes << " episodes\n";
    for (std::size_t i = 0; i < result.summary.islands.size(); ++i) {
        const auto& is = result.summary.islands[i];
        std::cout << "  island " << i << ": credits " << is.credits << ", switches " << is.switches
                  << " (intrinsic " << is.intrinsic << ", extrinsic " << is.extrinsic
                  << ", g-special " << is.g_special << ")\n";
    }
    std::cout << "outputs in " << cfg.out_dir << "\n";
    if (result.failed()) {
        std::cerr << "run aborted: " << result.summary.error << "\n";
        return 1;
    }
    return 0;
}

int cmd_compare(const std::vector<std::string>& config_paths, int seeds,
                const std::optional<std::string>& out) {
    std::vector<yielon::ExperimentConfig> configs;
    for (const auto& path : config_paths) {
        yielon::ExperimentConfig base = yielon::load_config(path);
        for (int s = 0; s < seeds; ++s) {
            yielon::ExperimentConfig cfg = base;
            cfg.seed = base.seed + static_cast<std::uint64_t>(s);
            configs.push_back(std::move(cfg));
        }
    }
    const yielon::ComparisonTable table = yielon::compare_regimes(configs);
    std::cout << yielon::format_comparison(table);
    if (out) {
        std::filesystem::create_directories(*out);
        const auto path = std::filesystem::path(*out) / "comparison.csv";
        std::ofstream csv(path, std::ios::trunc);
        if (!csv) {
            std::cerr << "cannot write " << path << "\n";
            return 1;
        }
        csv << "regime,island,credits_mean,credits_sd,switches_mean,switches_sd,runs\n";
        for (std::size_t row = 0; row < table.regimes.size(); ++row)
            for (int i = 0; i < table.islands; ++i) {
                const auto& cell = table.cells[row][static_cast<std::size_t>(i)];
                csv << table.regimes[row] << ',' << i << ',' << cell.credits_mean << ','
                    << cell.credits_sd << ',' << cell.switches_mean << ',' << cell.switches_sd
                    << ',' << table.runs[row] << '\n';
            }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Latent-yield adaptive algorithm switching over an island archipelago"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> episodes;
    std::optional<std::string> out;
    std::optional<std::string> regime;
    bool deterministic = true;
    bool det_set = false;

    auto* run = app.add_subcommand("run", "run one experiment from a config file");
    run->add_option("config", config_path, "JSON config file")->required();
    run->add_option("--seed", seed, "override the base seed");
    run->add_option("--episodes", episodes, "override the episode count");
    run->add_option("--out", out, "output directory");
    run->add_option("--regime", regime,
                    "no_yielory_no_g | no_yielory_g | yielory_no_g | yielory_g");
    run->add_flag("--deterministic,!--no-deterministic", deterministic,
                  "lock-step rounds (default) or free-running threads")
        ->each([&](const std::string&) { det_set = true; });

    std::vector<std::string> compare_paths;
    int seeds = 1;
    auto* compare = app.add_subcommand("compare", "run several configs and tabulate per regime");
    compare->add_option("configs", compare_paths, "JSON config files")->required();
    compare->add_option("--seeds", seeds, "seeds per config (base seed, base+1, ...)")
        ->check(CLI::PositiveNumber);
    compare->add_option("--out", out, "also write comparison.csv here");

    std::string domain = "sorting";
    auto* dump = app.add_subcommand("dump-defaults", "print the default config as JSON");
    dump->add_option("--domain", domain, "sorting | gridworld")
        ->check(CLI::IsMember({"sorting", "gridworld"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, seed, episodes, out, regime,
                           det_set ? std::optional<bool>(deterministic) : std::nullopt);
        if (compare->parsed()) return cmd_compare(compare_paths, seeds, out);
        if (dump->parsed()) {
            const auto d = domain == "sorting" ? yielon::Domain::Sorting : yielon::Domain::Gridworld;
            std::cout << yielon::dump_config(yielon::default_config(d));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
