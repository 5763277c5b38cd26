#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vsslab/adversary.hpp"
#include "vsslab/avss.hpp"
#include "vsslab/errors.hpp"
#include "vsslab/harness.hpp"
#include "vsslab/vss_sync.hpp"

using namespace vsslab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

struct Flags {
    std::string config_file;
    std::vector<std::string> params;
    ParamMap overrides;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot read config file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Registers the scenario flags; each one is recorded as a config key so that it overrides the file.
void add_scenario_flags(CLI::App* cmd, Flags& f) {
    for (const char* key : {"scheme", "n", "t", "d", "L", "field-p", "secret", "adversary", "corrupt", "scheduler",
                            "seed", "trials", "out", "dealer", "step-budget"}) {
        const std::string name = std::string("--") + key;
        cmd->add_option_function<std::string>(
            name, [&f, key](const std::string& value) { f.overrides[key] = value; }, std::string("sets ") + key);
    }
    cmd->add_option("--config", f.config_file, "key = value configuration file");
    cmd->add_option("--param", f.params, "adversary or scheduler parameter, e.g. adversary.split=1");
}

ScenarioConfig build_config(const Flags& f) {
    ScenarioConfig cfg;
    ParamMap file;
    if (!f.config_file.empty()) file = parse_config_text(read_file(f.config_file));
    const char* env_seed = std::getenv("VSSLAB_SEED");
    if (env_seed && !file.contains("seed") && !f.overrides.contains("seed")) apply_config(cfg, {{"seed", env_seed}});
    apply_config(cfg, file);
    apply_config(cfg, f.overrides);
    for (const auto& p : f.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw ConfigInvalid("--param expects key=value, got '" + p + "'");
        std::string key = p.substr(0, eq);
        if (!key.starts_with("adversary.") && !key.starts_with("scheduler.")) key = "adversary." + key;
        apply_config(cfg, {{key, p.substr(eq + 1)}});
    }
    return cfg;
}

int cmd_run(const Flags& f, bool json_transcript) {
    ScenarioConfig cfg = validate_config(build_config(f));
    bool all_passed = true;
    for (int k = 0; k < cfg.trials; ++k) {
        ScenarioConfig trial = cfg;
        trial.seed = cfg.seed + static_cast<uint64_t>(k);
        RunReport report = run_scenario(trial);
        all_passed = all_passed && report.passed();
        std::cout << report_json(report, json_transcript) << '\n';
        if (!cfg.out.empty()) {
            const std::string path = cfg.trials == 1 ? cfg.out : cfg.out + "." + std::to_string(trial.seed);
            write_artifacts(report, path);
        }
    }
    return all_passed ? kExitPass : kExitViolation;
}

int cmd_privacy(const Flags& f, uint64_t s0, uint64_t s1) {
    ScenarioConfig cfg = build_config(f);
    if (cfg.scheme != "Shamir") cfg = validate_config(cfg);
    PartySet corrupt = cfg.corrupt;
    if (corrupt.empty()) corrupt.insert(cfg.n - 1);
    PrivacyResult r = privacy_exhaustive_check(cfg.scheme, cfg.n, cfg.t, cfg.p, s0, s1, corrupt);
    std::cout << (r.equal ? "Equal" : "Distinguishable") << " states=" << r.states << " corrupt=" << corrupt.to_string()
              << '\n';
    if (!r.equal) std::cout << r.witness << '\n';
    return r.equal ? kExitPass : kExitViolation;
}

std::vector<std::pair<int, int>> parse_grid(const std::string& text) {
    std::vector<std::pair<int, int>> grid;
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        const auto colon = cell.find(':');
        if (colon == std::string::npos) throw ConfigInvalid("grid cells are n:t, got '" + cell + "'");
        grid.emplace_back(std::stoi(cell.substr(0, colon)), std::stoi(cell.substr(colon + 1)));
    }
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verifiable secret sharing laboratory"};
    app.require_subcommand(1);

    Flags run_flags;
    bool with_transcript = false;
    auto* run = app.add_subcommand("run", "run one scenario and print its report");
    add_scenario_flags(run, run_flags);
    run->add_flag("--transcript", with_transcript, "include transcripts in the printed report");

    Flags privacy_flags;
    uint64_t s0 = 0;
    uint64_t s1 = 1;
    auto* privacy = app.add_subcommand("privacy", "exhaustive view-distribution comparison for two secrets");
    add_scenario_flags(privacy, privacy_flags);
    privacy->add_option("--s0", s0, "first secret");
    privacy->add_option("--s1", s1, "second secret");

    BatteryConfig battery_cfg;
    std::string grid = "4:1";
    std::string strategies;
    std::string schedulers;
    auto* battery = app.add_subcommand("battery", "fuzz a scheme over a grid, strategies, schedulers and seeds");
    battery->add_option("--scheme", battery_cfg.scheme, "scheme")->required();
    battery->add_option("--grid", grid, "comma-separated n:t cells");
    battery->add_option("--strategies", strategies, "comma-separated strategies (default: all)");
    battery->add_option("--schedulers", schedulers, "comma-separated schedulers (default: all)");
    battery->add_option("--seeds", battery_cfg.seeds, "seeds per cell");
    battery->add_option("--first-seed", battery_cfg.first_seed, "first seed");
    battery->add_option("--field-p", battery_cfg.p, "field size");
    battery->add_option("--secret", battery_cfg.secret, "dealer secret");
    battery->add_option("--d", battery_cfg.d, "sharing degree");
    battery->add_option("--L", battery_cfg.L, "number of secrets");
    battery->add_flag("--corrupt-dealer", battery_cfg.corrupt_dealer, "corrupt the dealer");

    app.add_subcommand("list-schemes", "list scheme identifiers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_flags, with_transcript);
        if (*privacy) return cmd_privacy(privacy_flags, s0, s1);
        if (*battery) {
            battery_cfg.grid = parse_grid(grid);
            auto split = [](const std::string& text, std::vector<std::string> fallback) {
                if (text.empty()) return fallback;
                std::vector<std::string> out;
                std::istringstream in(text);
                std::string item;
                while (std::getline(in, item, ',')) out.push_back(item);
                return out;
            };
            battery_cfg.strategies = split(strategies, strategy_names());
            battery_cfg.schedulers = split(schedulers, scheduler_names());
            BatterySummary summary = fuzz_battery(battery_cfg);
            std::cout << battery_json(summary) << '\n';
            return summary.total_failures == 0 ? kExitPass : kExitViolation;
        }
        for (const auto& s : sync_schemes()) {
            std::cout << s.name << "\tsynchronous\trounds=(" << s.share_rounds << "," << s.share_broadcast_rounds
                      << ")\tn>" << s.resilience_factor << "t\t" << s.contract << '\n';
        }
        for (const auto& s : async_schemes()) {
            std::cout << s.name << '\t' << (s.hybrid ? "hybrid" : "asynchronous") << "\t\tn>" << s.resilience_factor
                      << "t\t" << s.contract << '\n';
        }
        return kExitPass;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
}
