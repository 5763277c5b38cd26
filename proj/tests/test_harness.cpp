#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "vsslab/errors.hpp"
#include "vsslab/harness.hpp"

using namespace vsslab;

namespace {

ScenarioConfig honest(const std::string& scheme, int n, int t) {
    ScenarioConfig cfg;
    cfg.scheme = scheme;
    cfg.n = n;
    cfg.t = t;
    cfg.p = 101;
    cfg.secrets = {42};
    return cfg;
}

TEST(Config, ParsesSectionsAndComments) {
    auto values = parse_config_text("scheme = 7BGW  # comment\nn=4\n[adversary]\nstrategy = crash\nfrom = 2\n");
    EXPECT_EQ(values.at("scheme"), "7BGW");
    EXPECT_EQ(values.at("n"), "4");
    EXPECT_EQ(values.at("adversary.strategy"), "crash");
    EXPECT_EQ(values.at("adversary.from"), "2");
    EXPECT_THROW(parse_config_text("no equals sign"), ConfigInvalid);
    EXPECT_THROW(parse_config_text("[open\n"), ConfigInvalid);
}

TEST(Config, AppliesKeysWithOneBasedParties) {
    ScenarioConfig cfg;
    apply_config(cfg, parse_config_text("scheme=BCG\nn=5\nt=1\nfield-p=1009\nsecret=9\ncorrupt=P3\ndealer=2\n"
                                        "[scheduler]\nname=honest-last\nvictim=4\n"));
    EXPECT_EQ(cfg.scheme, "BCG");
    EXPECT_EQ(cfg.n, 5);
    EXPECT_EQ(cfg.p, 1009u);
    EXPECT_EQ(cfg.secrets, std::vector<uint64_t>{9});
    EXPECT_TRUE(cfg.corrupt.contains(2));
    EXPECT_EQ(cfg.dealer, 1);
    EXPECT_EQ(cfg.scheduler, "honest-last");
    EXPECT_EQ(cfg.scheduler_params.at("victim"), "4");
}

TEST(Config, RejectsUnknownKeysAndMalformedValues) {
    ScenarioConfig cfg;
    EXPECT_THROW(apply_config(cfg, {{"colour", "blue"}}), ConfigInvalid);
    EXPECT_THROW(apply_config(cfg, {{"n", "four"}}), ConfigInvalid);
}

TEST(Config, ValidationEnforcesBounds) {
    EXPECT_THROW(validate_config(honest("2GIKR", 4, 1)), ConfigBound);
    EXPECT_THROW(validate_config(honest("BCG", 4, 1)), ConfigBound);
    EXPECT_THROW(validate_config(honest("unknown", 4, 1)), ConfigInvalid);
    ScenarioConfig too_many = honest("7BGW", 7, 2);
    too_many.corrupt = {1, 2, 3};
    EXPECT_THROW(validate_config(too_many), ConfigInvalid);
    ScenarioConfig composite = honest("7BGW", 4, 1);
    composite.p = 100;
    EXPECT_THROW(validate_config(composite), ConfigInvalid);
    ScenarioConfig ok = validate_config(honest("7BGW", 4, 1));
    EXPECT_EQ(ok.d, 1);
}

TEST(Config, SingleSecretExpandsToBatch) {
    ScenarioConfig cfg = honest("CHP", 5, 1);
    cfg.L = 3;
    cfg.secrets = {10};
    cfg = validate_config(cfg);
    EXPECT_EQ(cfg.secrets, (std::vector<uint64_t>{10, 11, 12}));
}

TEST(Report, IdenticalConfigGivesIdenticalReport) {
    for (const std::string scheme : {"7BGW", "BCG", "PR"}) {
        ScenarioConfig cfg = honest(scheme, 5, 1);
        cfg.corrupt = {4};
        cfg.adversary = "garble";
        cfg.scheduler = "seeded-random";
        cfg.seed = 11;
        cfg = validate_config(cfg);
        EXPECT_EQ(report_json(run_scenario(cfg), true), report_json(run_scenario(cfg), true)) << scheme;
    }
}

TEST(Report, JsonNumbersPartiesFromOne) {
    ScenarioConfig cfg = honest("7BGW", 4, 1);
    cfg.corrupt = {3};
    auto doc = nlohmann::json::parse(report_json(run_scenario(validate_config(cfg))));
    ASSERT_EQ(doc["parties"].size(), 4u);
    EXPECT_EQ(doc["parties"][0]["party"], 1);
    EXPECT_EQ(doc["parties"][3]["corrupt"], true);
    EXPECT_EQ(doc["status"], "shared");
    EXPECT_EQ(doc["passed"], true);
}

TEST(Report, ArtifactsAreWritten) {
    const auto dir = std::filesystem::temp_directory_path() / "vsslab_artifacts_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "run.json").string();
    write_artifacts(run_scenario(validate_config(honest("7BGW", 4, 1))), path);
    EXPECT_TRUE(std::filesystem::exists(path));
    EXPECT_TRUE(std::filesystem::exists(path + ".transcript"));
    std::filesystem::remove_all(dir);
}

TEST(Contract, TamperedOutputIsFlagged) {
    RunReport r = run_scenario(validate_config(honest("7BGW", 4, 1)));
    ASSERT_TRUE(r.passed());
    r.parties[1].output = std::vector<Fe>{Fe(43, 101)};
    r.violations.clear();
    evaluate_contract(r);
    EXPECT_FALSE(r.passed());
}

TEST(Contract, TamperedShareIsFlagged) {
    RunReport r = run_scenario(validate_config(honest("BCG", 5, 1)));
    ASSERT_TRUE(r.passed());
    r.parties[2].shares[0] = *r.parties[2].shares[0] + Fe(1, 101);
    r.violations.clear();
    evaluate_contract(r);
    EXPECT_FALSE(r.passed());
}

TEST(Contract, MixedBottomInOneShotSchemeIsFlagged) {
    ScenarioConfig cfg = honest("1GIKR", 5, 1);
    RunReport r = run_scenario(validate_config(cfg));
    ASSERT_TRUE(r.passed());
    r.parties[2].output.reset();
    r.violations.clear();
    evaluate_contract(r);
    EXPECT_FALSE(r.passed());
}

TEST(Battery, HonestDealerCellsPass) {
    BatteryConfig cfg;
    cfg.scheme = "7BGW";
    cfg.grid = {{4, 1}};
    cfg.strategies = {"passive", "garble", "inconsistent-dealer:split=1"};
    cfg.seeds = 3;
    cfg.p = 101;
    BatterySummary s = fuzz_battery(cfg);
    EXPECT_EQ(s.cells.size(), 3u);
    EXPECT_EQ(s.total_runs, 9);
    EXPECT_EQ(s.total_failures, 0);
    auto doc = nlohmann::json::parse(battery_json(s));
    EXPECT_EQ(doc["total_runs"], 9);
}

TEST(Privacy, MaskedViewIsEqualAndClearViewIsDistinguishable) {
    const uint64_t p = 7;
    auto masked = [p](const std::vector<uint64_t>& a, uint64_t s) { return std::to_string((s + a[0]) % p); };
    auto clear = [](const std::vector<uint64_t>& a, uint64_t s) { return std::to_string(s) + "," + std::to_string(a[0]); };
    PrivacyResult eq = enumerate_views(p, 1, masked, 0, 1);
    EXPECT_TRUE(eq.equal);
    EXPECT_EQ(eq.states, p);
    PrivacyResult ne = enumerate_views(p, 1, clear, 0, 1);
    EXPECT_FALSE(ne.equal);
    EXPECT_FALSE(ne.witness.empty());
}

TEST(Privacy, EnumerationLimit) {
    auto view = [](const std::vector<uint64_t>&, uint64_t) { return std::string(); };
    EXPECT_THROW(enumerate_views(101, 4, view, 0, 1), EnumerationTooLarge);
}

TEST(Privacy, ShamirSharesHideTheSecret) {
    EXPECT_TRUE(privacy_exhaustive_check("Shamir", 4, 1, 5, 0, 1, {3}).equal);
    EXPECT_TRUE(privacy_exhaustive_check("Shamir", 5, 2, 7, 0, 3, {1, 2}).equal);
}

TEST(Privacy, CorruptSetLargerThanThresholdIsRejected) {
    EXPECT_THROW(privacy_exhaustive_check("Shamir", 4, 1, 5, 0, 1, {2, 3}), ConfigInvalid);
}

TEST(Privacy, OneRoundSchemeHidesTheSecret) {
    PrivacyResult r = privacy_exhaustive_check("1GIKR", 5, 1, 5, 0, 1, {1});
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.states, 5u);
}

TEST(Privacy, CorruptDealerIsRejected) {
    EXPECT_THROW(privacy_exhaustive_check("1GIKR", 5, 1, 5, 0, 1, {0}), ConfigInvalid);
}

int cli(const std::string& args) {
    const std::string cmd = std::string(VSSLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("run --scheme 7BGW --n 4 --t 1 --field-p 101 --secret 5"), 0);
    EXPECT_EQ(cli("run --scheme 2GIKR --n 4 --t 1"), 2);
    EXPECT_EQ(cli("run --scheme 7BGW --n 4 --t 1 --colour blue"), 2);
    EXPECT_EQ(cli("privacy --scheme Shamir --n 4 --t 1 --field-p 5 --corrupt P3,P4"), 2);
    EXPECT_EQ(cli("privacy --scheme Shamir --n 4 --t 1 --field-p 5 --corrupt P4"), 0);
    EXPECT_EQ(cli("list-schemes"), 0);
}

}  // namespace
