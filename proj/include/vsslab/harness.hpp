#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vsslab/adversary.hpp"
#include "vsslab/field.hpp"
#include "vsslab/graphs.hpp"
#include "vsslab/message.hpp"

namespace vsslab {

struct ScenarioConfig {
    std::string scheme;
    int n = 4;
    int t = 1;
    int d = -1;  // sharing degree; negative selects t
    int L = 1;   // number of secrets
    uint64_t p = 2147483647;
    std::vector<uint64_t> secrets{0};
    std::string adversary = "passive";
    PartySet corrupt;
    ParamMap adversary_params;
    std::string scheduler = "fifo";
    ParamMap scheduler_params;
    uint64_t seed = 1;
    int trials = 1;
    std::string out;
    int dealer = 0;
    bool record_transcript = true;
    uint64_t step_budget = 5'000'000;
};

struct PartyReport {
    int id = 0;
    bool corrupt = false;
    bool sharing_done = false;
    bool discarded = false;
    std::vector<std::optional<Fe>> shares;
    bool rec_done = false;
    bool rec_participant = true;
    std::optional<std::vector<Fe>> output;
    std::vector<std::optional<Fe>> pieces;
    PartySet accepted_set;
};

struct RunReport {
    ScenarioConfig config;
    bool synchronous = true;
    // "shared", "discarded" or "not-terminated".
    std::string status;
    int bottom_count = 0;
    // Value fixed by the honest parties' joint state, when the contract defines one.
    std::optional<std::vector<Fe>> committed;
    Metrics share_metrics;
    Metrics rec_metrics;
    bool reconstruction_run = false;
    std::vector<PartyReport> parties;
    std::vector<std::string> violations;
    Transcript share_transcript;
    Transcript rec_transcript;

    bool passed() const { return violations.empty(); }
};

// Resolves defaults and checks the configuration against the scheme's bounds.
// Throws ConfigInvalid (or its subtype ConfigBound).
ScenarioConfig validate_config(ScenarioConfig cfg);

// Runs sharing and, when defined, reconstruction for one seed.
RunReport run_scenario(const ScenarioConfig& cfg);

// Appends the violations of the scheme's contract over the party reports and sets `committed`.
void evaluate_contract(RunReport& report);

std::string report_json(const RunReport& report, bool include_transcript = false);
// Writes the JSON report to `path` and the transcripts to `path` + ".transcript".
void write_artifacts(const RunReport& report, const std::string& path);

std::vector<std::string> scheme_names();
bool is_synchronous_scheme(const std::string& name);

// Reads flat "key = value" text; "[section]" headers prefix the following keys with "section.".
ParamMap parse_config_text(const std::string& text);
// Applies recognised keys to cfg; throws ConfigInvalid on unknown keys or malformed values.
void apply_config(ScenarioConfig& cfg, const ParamMap& values);

struct BatteryCell {
    std::string scheme;
    int n = 0;
    int t = 0;
    std::string strategy;
    std::string scheduler;
    bool corrupt_dealer = false;
    int trials = 0;
    int failures = 0;
    std::vector<std::string> sample_violations;
    uint64_t worst_p2p_bits = 0;
    uint64_t worst_bc_bits = 0;
    uint64_t worst_async_steps = 0;
};

struct BatteryConfig {
    std::string scheme;
    std::vector<std::pair<int, int>> grid;
    // Strategy names, optionally with parameters: "inconsistent-dealer:split=1;other=2".
    std::vector<std::string> strategies;
    std::vector<std::string> schedulers;  // ignored for synchronous schemes
    int seeds = 25;
    uint64_t first_seed = 1;
    uint64_t p = 2147483647;
    uint64_t secret = 7;
    int d = -1;
    int L = 1;
    bool corrupt_dealer = false;
};

struct BatterySummary {
    std::vector<BatteryCell> cells;
    int total_runs = 0;
    int total_failures = 0;
};

// Honest-dealer cells corrupt the last t parties; corrupt-dealer cells corrupt the dealer and
// the last t - 1 parties.
BatterySummary fuzz_battery(const BatteryConfig& cfg);
std::string battery_json(const BatterySummary& summary);

struct PrivacyResult {
    bool equal = false;
    uint64_t states = 0;
    std::string witness;
};

// A view function maps (randomness assignment, secret) to the adversary's view text.
using ViewFunction = std::function<std::string(const std::vector<uint64_t>& assignment, uint64_t secret)>;

// Compares the multisets of views over every assignment in [0, p)^draws for the two secrets.
// Throws EnumerationTooLarge above 10^7 states per secret.
PrivacyResult enumerate_views(uint64_t p, int draws, const ViewFunction& view, uint64_t s0, uint64_t s1);

// Honest dealer, passive adversary on `corrupt`. Enumerates the dealer's randomness and every pad
// exchanged between honest parties; pads from honest to corrupt parties are fixed.
// Scheme "Shamir" enumerates a bare share vector.
PrivacyResult privacy_exhaustive_check(const std::string& scheme, int n, int t, uint64_t p, uint64_t s0, uint64_t s1,
                                       PartySet corrupt);

}  // namespace vsslab
