#include "vsslab/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vsslab/avss.hpp"
#include "vsslab/engine.hpp"
#include "vsslab/errors.hpp"
#include "vsslab/poly.hpp"
#include "vsslab/vss_sync.hpp"

namespace vsslab {

namespace {

using json = nlohmann::json;

constexpr uint64_t kShadowSeedSalt = 0x5eed5eed5eedULL;
constexpr uint64_t kEnumerationLimit = 10'000'000;

bool contains(const std::vector<std::string>& names, const std::string& name) {
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::string trim(std::string_view text) {
    size_t b = 0;
    size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return std::string(text.substr(b, e - b));
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
    uint64_t out = 0;
    const std::string v = trim(value);
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
        throw ConfigInvalid("'" + key + "' expects a non-negative integer, got '" + value + "'");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    const uint64_t v = parse_u64(key, value);
    if (v > 1'000'000'000) throw ConfigInvalid("'" + key + "' is out of range");
    return static_cast<int>(v);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Parties are written P1..Pn (or 1..n).
PartySet parse_parties(const std::string& key, const std::string& value) {
    PartySet out;
    for (std::string item : split_list(value)) {
        if (!item.empty() && (item[0] == 'P' || item[0] == 'p')) item.erase(0, 1);
        const int party = parse_int(key, item);
        if (party < 1 || party > 63) throw ConfigInvalid("'" + key + "' lists party " + item + " outside 1..63");
        out.insert(party - 1);
    }
    return out;
}

std::string fe_text(const std::vector<Fe>& v) {
    std::string out;
    for (size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + v[k].to_string();
    return out;
}

struct Checker {
    RunReport& r;
    const FieldParams& fp;

    void violation(std::string text) { r.violations.push_back(std::move(text)); }

    std::vector<Fe> dealer_secrets() const {
        std::vector<Fe> out;
        for (uint64_t s : r.config.secrets) out.push_back(fp.elem(s));
        return out;
    }
    bool dealer_honest() const { return !r.config.corrupt.contains(r.config.dealer); }

    std::vector<const PartyReport*> honest() const {
        std::vector<const PartyReport*> out;
        for (const auto& pr : r.parties) {
            if (!pr.corrupt) out.push_back(&pr);
        }
        return out;
    }

    // Honest share points of secret slot k that lie on one polynomial of degree `deg`.
    std::optional<UniPoly> fit_shares(size_t slot, int deg, const std::vector<const PartyReport*>& who,
                                      bool require_all) {
        std::vector<Point> points;
        for (const auto* pr : who) {
            if (slot >= pr->shares.size() || !pr->shares[slot]) {
                if (require_all) {
                    violation("honest P" + std::to_string(pr->id + 1) + " holds no share of secret " +
                              std::to_string(slot));
                    return std::nullopt;
                }
                continue;
            }
            points.emplace_back(fp.alpha(pr->id), *pr->shares[slot]);
        }
        if (points.empty()) return std::nullopt;
        auto poly = fit_exact(points, deg);
        if (!poly) {
            violation("honest shares of secret " + std::to_string(slot) + " do not lie on one degree-" +
                      std::to_string(deg) + " polynomial");
        }
        return poly;
    }

    void check_discard_agreement() {
        int discarded = 0;
        int kept = 0;
        for (const auto* pr : honest()) (pr->discarded ? discarded : kept)++;
        if (discarded && kept) violation("honest parties disagree on discarding the dealer");
        if (discarded && dealer_honest()) violation("honest dealer was discarded");
    }

    void check_outputs_equal(const std::vector<Fe>& expected, bool allow_bottom, bool participants_only = true) {
        for (const auto* pr : honest()) {
            if (participants_only && !pr->rec_participant) continue;
            const std::string who = "P" + std::to_string(pr->id + 1);
            if (!pr->rec_done) {
                violation("honest " + who + " did not finish reconstruction");
            } else if (!pr->output) {
                if (!allow_bottom) violation("honest " + who + " output bottom");
            } else if (*pr->output != expected) {
                violation("honest " + who + " output " + fe_text(*pr->output) + " instead of " + fe_text(expected));
            }
        }
    }

    bool any_discarded() const {
        for (const auto* pr : honest()) {
            if (pr->discarded) return true;
        }
        return false;
    }

    void type_two(int deg, bool rec_run) {
        check_discard_agreement();
        std::vector<Fe> committed;
        const bool discarded = any_discarded();
        for (size_t k = 0; k < r.config.secrets.size(); ++k) {
            if (discarded) {
                committed.push_back(fp.zero());
                continue;
            }
            auto poly = fit_shares(k, deg, honest(), true);
            if (!poly) return;
            committed.push_back(poly->eval(fp.zero()));
        }
        r.committed = committed;
        if (dealer_honest() && committed != dealer_secrets()) {
            violation("committed value " + fe_text(committed) + " differs from the honest dealer's secret");
        }
        if (rec_run) check_outputs_equal(committed, false);
    }

    void type_one() {
        check_discard_agreement();
        std::optional<std::vector<Fe>> common;
        for (const auto* pr : honest()) {
            if (!pr->rec_done || !pr->output) {
                violation("honest P" + std::to_string(pr->id + 1) + " has no reconstructed value");
                continue;
            }
            if (!common) common = *pr->output;
            else if (*common != *pr->output) violation("honest reconstructed values differ");
        }
        r.committed = common;
        if (common && dealer_honest() && *common != dealer_secrets()) {
            violation("honest parties reconstructed " + fe_text(*common) + " instead of the dealer's secret");
        }
    }

    void weak() {
        check_discard_agreement();
        if (any_discarded()) {
            r.committed = std::vector<Fe>{fp.zero()};
        } else {
            std::vector<const PartyReport*> happy;
            for (const auto* pr : honest()) {
                if (pr->shares.empty() || !pr->shares[0]) continue;
                happy.push_back(pr);
            }
            std::vector<const PartyReport*> in_own_set;
            for (const auto* pr : happy) {
                if (pr->accepted_set.contains(pr->id)) in_own_set.push_back(pr);
            }
            if (in_own_set.empty()) in_own_set = happy;
            if (static_cast<int>(in_own_set.size()) > r.config.t) {
                auto poly = fit_shares(0, r.config.t, in_own_set, false);
                if (poly) r.committed = std::vector<Fe>{poly->eval(fp.zero())};
            }
        }
        if (dealer_honest()) {
            check_outputs_equal(dealer_secrets(), false);
            return;
        }
        std::optional<std::vector<Fe>> seen = r.committed;
        for (const auto* pr : honest()) {
            if (!pr->rec_done) {
                violation("honest P" + std::to_string(pr->id + 1) + " did not finish reconstruction");
                continue;
            }
            if (!pr->output) continue;
            if (!seen) seen = *pr->output;
            if (*pr->output != *seen) {
                violation("honest P" + std::to_string(pr->id + 1) + " output " + fe_text(*pr->output) +
                          ", neither the committed value nor bottom");
            }
        }
    }

    void replicated() {
        size_t groups = 0;
        for (const auto& pr : r.parties) groups = std::max(groups, pr.pieces.size());
        Fe sum = fp.zero();
        for (size_t k = 0; k < groups; ++k) {
            std::optional<Fe> value;
            for (const auto* pr : honest()) {
                const auto& mine = pr->pieces;
                if (k >= mine.size() || !mine[k]) continue;
                if (!value) value = *mine[k];
                else if (*value != *mine[k]) violation("honest holders of piece " + std::to_string(k) + " disagree");
            }
            if (!value) {
                violation("piece " + std::to_string(k) + " has no honest holder");
                return;
            }
            sum += *value;
        }
        r.committed = std::vector<Fe>{sum};
        if (dealer_honest() && sum != dealer_secrets().at(0)) violation("pieces do not sum to the dealer's secret");
        check_outputs_equal({sum}, false);
    }

    void one_shot() {
        std::optional<std::vector<Fe>> common;
        bool bottom = false;
        bool value = false;
        for (const auto* pr : honest()) {
            if (!pr->rec_participant) continue;
            if (!pr->rec_done) {
                violation("honest P" + std::to_string(pr->id + 1) + " did not finish reconstruction");
                continue;
            }
            if (!pr->output) {
                bottom = true;
                continue;
            }
            value = true;
            if (!common) common = *pr->output;
            else if (*common != *pr->output) violation("honest reconstructed values differ");
        }
        if (bottom && value) violation("some honest parties output bottom and others a value");
        r.committed = common;
        if (dealer_honest() && (bottom || (common && *common != dealer_secrets()))) {
            violation("honest dealer's secret was not reconstructed");
        }
    }

    void wps() {
        const int t = r.config.t;
        std::vector<Point> points;
        int bottoms = 0;
        for (const auto* pr : honest()) {
            if (!pr->sharing_done) continue;
            if (pr->shares.empty() || !pr->shares[0]) {
                ++bottoms;
                continue;
            }
            points.emplace_back(fp.alpha(pr->id), *pr->shares[0]);
        }
        if (dealer_honest() && bottoms) violation("honest party output bottom under an honest dealer");
        if (points.empty()) {
            violation("no honest party holds a share");
            return;
        }
        auto poly = fit_exact(points, t);
        if (!poly) {
            violation("honest non-bottom outputs do not lie on one degree-t polynomial");
            return;
        }
        if (static_cast<int>(points.size()) < t + 1) violation("fewer than t+1 honest parties hold shares");
        r.committed = std::vector<Fe>{poly->eval(fp.zero())};
        if (dealer_honest() && r.committed != dealer_secrets()) {
            violation("honest shares do not encode the dealer's secret");
        }
    }
};

template <typename Party>
void fill_party_reports(RunReport& r, const std::vector<std::unique_ptr<Party>>& parties) {
    r.parties.clear();
    for (const auto& party : parties) {
        const Outcome& o = party->outcome();
        PartyReport pr;
        pr.id = party->id();
        pr.corrupt = r.config.corrupt.contains(pr.id);
        pr.sharing_done = o.sharing_done;
        pr.discarded = o.discarded;
        pr.shares = o.shares;
        pr.rec_done = o.rec_done;
        pr.rec_participant = o.rec_participant;
        pr.output = o.output;
        pr.pieces = o.pieces;
        pr.accepted_set = o.accepted_set;
        r.parties.push_back(std::move(pr));
    }
}

void set_status(RunReport& r) {
    bool any_done = false;
    bool any_discarded = false;
    r.bottom_count = 0;
    for (const auto& pr : r.parties) {
        if (pr.corrupt) continue;
        any_done = any_done || pr.sharing_done;
        any_discarded = any_discarded || pr.discarded;
        if (pr.rec_done && pr.rec_participant && !pr.output) ++r.bottom_count;
    }
    r.status = !any_done ? "not-terminated" : (any_discarded ? "discarded" : "shared");
}

ShadowDeal sync_shadow(const ScenarioConfig& cfg, const SchemeParams& sp) {
    return [cfg, sp]() {
        std::vector<Fe> secrets;
        for (uint64_t s : cfg.secrets) secrets.push_back(sp.fp.elem(s + 1));
        auto shadow = make_sync_party(cfg.scheme, sp, cfg.dealer, secrets,
                                      std::make_shared<CounterRng>(cfg.seed ^ kShadowSeedSalt, cfg.dealer));
        return shadow->on_round(1, {});
    };
}

ShadowDeal async_shadow(const ScenarioConfig& cfg, const SchemeParams& sp, bool hybrid) {
    return [cfg, sp, hybrid]() {
        std::vector<Fe> secrets;
        for (uint64_t s : cfg.secrets) secrets.push_back(sp.fp.elem(s + 1));
        auto shadow = make_async_party(cfg.scheme, sp, cfg.dealer, secrets,
                                       std::make_shared<CounterRng>(cfg.seed ^ kShadowSeedSalt, cfg.dealer));
        return hybrid ? shadow->on_sync_round() : shadow->on_start();
    };
}

FieldParams field_for(const ScenarioConfig& cfg) {
    if (cfg.scheme == "1GIKR") return FieldParams(cfg.p, cfg.n - 1, 0);
    int betas = 0;
    if (!is_synchronous_scheme(cfg.scheme)) betas = async_betas_needed(cfg.scheme, cfg.n, cfg.t, cfg.L);
    return FieldParams(cfg.p, cfg.n, betas);
}

SchemeParams params_for(const ScenarioConfig& cfg, const FieldParams& fp) {
    return SchemeParams{fp, cfg.n, cfg.t, cfg.d, cfg.L, cfg.dealer};
}

std::vector<Fe> secrets_for(const ScenarioConfig& cfg, const FieldParams& fp) {
    std::vector<Fe> out;
    for (uint64_t s : cfg.secrets) out.push_back(fp.elem(s));
    return out;
}

std::shared_ptr<RandomSource> party_rng(const ScenarioConfig& cfg, int party) {
    return std::make_shared<CounterRng>(cfg.seed, static_cast<uint64_t>(party));
}

RunReport run_sync_scenario(const ScenarioConfig& cfg) {
    RunReport r;
    r.config = cfg;
    r.synchronous = true;
    const FieldParams fp = field_for(cfg);
    const SchemeParams sp = params_for(cfg, fp);
    const SyncSchemeInfo* info = find_sync_scheme(cfg.scheme);
    std::vector<std::unique_ptr<SyncVssParty>> parties;
    std::vector<SyncParty*> raw;
    for (int i = 0; i < cfg.n; ++i) {
        parties.push_back(make_sync_party(cfg.scheme, sp, i, secrets_for(cfg, fp), party_rng(cfg, i)));
        raw.push_back(parties.back().get());
    }
    StrategyEnv env{cfg.n, cfg.dealer, cfg.corrupt, cfg.p, sync_shadow(cfg, sp)};
    Adversary adv(cfg.corrupt, make_strategy(cfg.adversary, cfg.adversary_params, cfg.seed, env));

    RunResult share = run_sync(raw, adv, fp, info->share_rounds);
    r.share_metrics = share.metrics;
    if (cfg.record_transcript) r.share_transcript = std::move(share.transcript);
    for (auto& party : parties) party->begin_reconstruction();
    RunResult rec = run_sync(raw, adv, fp, info->rec_rounds);
    r.rec_metrics = rec.metrics;
    if (cfg.record_transcript) r.rec_transcript = std::move(rec.transcript);
    r.reconstruction_run = true;

    fill_party_reports(r, parties);
    set_status(r);
    evaluate_contract(r);
    return r;
}

RunReport run_async_scenario(const ScenarioConfig& cfg) {
    RunReport r;
    r.config = cfg;
    r.synchronous = false;
    const AsyncSchemeInfo* info = find_async_scheme(cfg.scheme);
    const FieldParams fp = field_for(cfg);
    const SchemeParams sp = params_for(cfg, fp);
    std::vector<std::unique_ptr<AsyncVssParty>> parties;
    std::vector<AsyncParty*> raw;
    for (int i = 0; i < cfg.n; ++i) {
        parties.push_back(make_async_party(cfg.scheme, sp, i, secrets_for(cfg, fp), party_rng(cfg, i)));
        raw.push_back(parties.back().get());
    }
    StrategyEnv env{cfg.n, cfg.dealer, cfg.corrupt, cfg.p, async_shadow(cfg, sp, info->hybrid)};
    Adversary adv(cfg.corrupt, make_strategy(cfg.adversary, cfg.adversary_params, cfg.seed, env));
    AsyncOptions opts;
    opts.hybrid = info->hybrid;
    opts.step_budget = cfg.step_budget;
    opts.record_transcript = cfg.record_transcript;

    auto run_phase = [&](bool hybrid, uint64_t seed, Metrics& metrics, Transcript& transcript) {
        auto scheduler = make_scheduler(cfg.scheduler, cfg.scheduler_params, seed, cfg.corrupt, cfg.n);
        AsyncOptions o = opts;
        o.hybrid = hybrid;
        try {
            RunResult res = run_async(raw, cfg.t, adv, *scheduler, fp, o);
            metrics = res.metrics;
            if (cfg.record_transcript) transcript = std::move(res.transcript);
            if (metrics.fairness_bound && metrics.max_pending_age > metrics.fairness_bound) {
                r.violations.push_back("an envelope stayed pending beyond the fairness bound");
            }
        } catch (const Livelock& e) {
            r.violations.push_back(std::string("step budget exhausted: ") + e.what());
        }
    };

    run_phase(info->hybrid, cfg.seed, r.share_metrics, r.share_transcript);
    bool any_done = false;
    bool all_done = true;
    for (const auto& party : parties) {
        if (cfg.corrupt.contains(party->id())) continue;
        any_done = any_done || party->outcome().sharing_done;
        all_done = all_done && party->outcome().sharing_done;
    }
    if (!cfg.corrupt.contains(cfg.dealer) && !all_done) {
        r.violations.push_back("honest dealer's sharing did not terminate for every honest party");
    } else if (any_done && !all_done) {
        r.violations.push_back("some but not all honest parties terminated sharing");
    }
    if (any_done && info->has_reconstruction) {
        for (auto& party : parties) party->begin_reconstruction();
        run_phase(false, cfg.seed + 1, r.rec_metrics, r.rec_transcript);
        r.reconstruction_run = true;
    }

    fill_party_reports(r, parties);
    set_status(r);
    if (any_done) evaluate_contract(r);
    return r;
}

json metrics_json(const Metrics& m, bool sync) {
    json j = {{"p2p_bits", m.p2p_bits},
              {"bc_bits", m.bc_bits},
              {"p2p_elems", m.p2p_elems},
              {"bc_elems", m.bc_elems},
              {"rounds_total", m.rounds_total},
              {"rounds_with_broadcast", m.rounds_with_broadcast}};
    if (!sync) {
        j["async_steps"] = m.async_steps;
        j["acast_internal_bits"] = m.acast_internal_bits;
        j["max_pending_age"] = m.max_pending_age;
        j["fairness_bound"] = m.fairness_bound;
        j["fairness_overrides"] = m.fairness_overrides;
    }
    return j;
}

json parties_json(const PartySet& set) {
    json j = json::array();
    for (int m : set.members()) j.push_back(m + 1);
    return j;
}

json fe_json(const std::vector<Fe>& v) {
    json j = json::array();
    for (const Fe& e : v) j.push_back(e.value());
    return j;
}

}  // namespace

std::vector<std::string> scheme_names() {
    std::vector<std::string> out;
    for (const auto& s : sync_schemes()) out.push_back(s.name);
    for (const auto& s : async_schemes()) out.push_back(s.name);
    return out;
}

bool is_synchronous_scheme(const std::string& name) { return find_sync_scheme(name) != nullptr; }

void evaluate_contract(RunReport& r) {
    const ScenarioConfig& cfg = r.config;
    const FieldParams fp = field_for(cfg);
    Checker check{r, fp};
    r.committed.reset();
    const std::string contract = is_synchronous_scheme(cfg.scheme) ? find_sync_scheme(cfg.scheme)->contract
                                                                   : find_async_scheme(cfg.scheme)->contract;
    if (contract == "type-II") {
        check.type_two(cfg.scheme == "PCR" ? cfg.d : cfg.t, r.reconstruction_run);
    } else if (contract == "type-I") {
        check.type_one();
    } else if (contract == "wss") {
        check.weak();
    } else if (contract == "replicated") {
        check.replicated();
    } else if (contract == "wps") {
        check.wps();
    } else {
        check.one_shot();
    }
}

ScenarioConfig validate_config(ScenarioConfig cfg) {
    if (cfg.scheme.empty()) throw ConfigInvalid("no scheme given");
    const bool sync = is_synchronous_scheme(cfg.scheme);
    if (!sync && !find_async_scheme(cfg.scheme)) throw ConfigInvalid("unknown scheme '" + cfg.scheme + "'");
    if (cfg.n < 2 || cfg.n > 63) throw ConfigInvalid("n must lie in 2..63");
    if (cfg.t < 1) throw ConfigInvalid("t must be at least 1");
    if (cfg.L < 1) throw ConfigInvalid("L must be at least 1");
    if (cfg.trials < 1) throw ConfigInvalid("trials must be at least 1");
    if (cfg.p < 3 || cfg.p >= (uint64_t{1} << 32) || !is_prime(cfg.p)) {
        throw ConfigInvalid("field size " + std::to_string(cfg.p) + " is not a prime in 3..2^32");
    }
    if (cfg.d < 0) cfg.d = cfg.t;
    if (cfg.scheme != "PCR" && cfg.d != cfg.t) throw ConfigInvalid(cfg.scheme + " shares with degree t only");
    if (cfg.secrets.empty()) cfg.secrets = {0};
    if (cfg.secrets.size() == 1 && cfg.L > 1) {
        const uint64_t base = cfg.secrets[0];
        cfg.secrets.clear();
        for (int k = 0; k < cfg.L; ++k) cfg.secrets.push_back((base + static_cast<uint64_t>(k)) % cfg.p);
    }
    if (static_cast<int>(cfg.secrets.size()) != cfg.L) {
        throw ConfigInvalid("expected " + std::to_string(cfg.L) + " secrets, got " + std::to_string(cfg.secrets.size()));
    }
    for (auto& s : cfg.secrets) s %= cfg.p;
    if (cfg.dealer < 0 || cfg.dealer >= cfg.n) throw ConfigInvalid("dealer is not a party");
    if (!cfg.corrupt.subset_of(PartySet::all(cfg.n))) throw ConfigInvalid("corrupt set names a party beyond n");
    if (cfg.corrupt.size() > cfg.t) throw ConfigInvalid("corrupt set is larger than t");
    if (!contains(strategy_names(), cfg.adversary)) throw ConfigInvalid("unknown adversary '" + cfg.adversary + "'");
    if (!sync && !contains(scheduler_names(), cfg.scheduler)) {
        throw ConfigInvalid("unknown scheduler '" + cfg.scheduler + "'");
    }
    if (sync) {
        if (cfg.L != 1) throw ConfigInvalid(cfg.scheme + " shares a single secret");
        check_sync_bounds(cfg.scheme, cfg.n, cfg.t);
    } else {
        check_async_bounds(cfg.scheme, cfg.n, cfg.t, cfg.d, cfg.L);
    }
    try {
        (void)field_for(cfg);
    } catch (const FieldTooSmall& e) {
        throw ConfigInvalid(std::string("field too small: ") + e.what());
    }
    return cfg;
}

RunReport run_scenario(const ScenarioConfig& raw_cfg) {
    const ScenarioConfig cfg = validate_config(raw_cfg);
    return is_synchronous_scheme(cfg.scheme) ? run_sync_scenario(cfg) : run_async_scenario(cfg);
}

std::string report_json(const RunReport& r, bool include_transcript) {
    const ScenarioConfig& c = r.config;
    json cfg = {{"scheme", c.scheme},       {"n", c.n},
                {"t", c.t},                 {"d", c.d},
                {"L", c.L},                 {"p", c.p},
                {"secrets", c.secrets},     {"dealer", c.dealer + 1},
                {"adversary", c.adversary}, {"corrupt", parties_json(c.corrupt)},
                {"adversary_params", c.adversary_params}, {"seed", c.seed}};
    if (!r.synchronous) {
        cfg["scheduler"] = c.scheduler;
        cfg["scheduler_params"] = c.scheduler_params;
    }
    json parties = json::array();
    for (const auto& pr : r.parties) {
        json shares = json::array();
        for (const auto& s : pr.shares) shares.push_back(s ? json(s->value()) : json(nullptr));
        parties.push_back({{"party", pr.id + 1},
                           {"corrupt", pr.corrupt},
                           {"sharing_done", pr.sharing_done},
                           {"discarded", pr.discarded},
                           {"shares", shares},
                           {"rec_done", pr.rec_done},
                           {"rec_participant", pr.rec_participant},
                           {"output", pr.output ? fe_json(*pr.output) : json(nullptr)}});
    }
    json j = {{"config", cfg},
              {"model", r.synchronous ? "synchronous" : (find_async_scheme(c.scheme)->hybrid ? "hybrid" : "asynchronous")},
              {"status", r.status},
              {"bottom_count", r.bottom_count},
              {"committed", r.committed ? fe_json(*r.committed) : json(nullptr)},
              {"metrics", {{"sharing", metrics_json(r.share_metrics, r.synchronous)}}},
              {"reconstruction_run", r.reconstruction_run},
              {"parties", parties},
              {"violations", r.violations},
              {"passed", r.passed()}};
    if (r.reconstruction_run) j["metrics"]["reconstruction"] = metrics_json(r.rec_metrics, r.synchronous);
    if (include_transcript) {
        j["transcript"] = {{"sharing", r.share_transcript.serialize()},
                           {"reconstruction", r.rec_transcript.serialize()}};
    }
    return j.dump(2);
}

void write_artifacts(const RunReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigInvalid("cannot write report to '" + path + "'");
    out << report_json(report) << '\n';
    std::ofstream tr(path + ".transcript");
    if (!tr) throw ConfigInvalid("cannot write transcript to '" + path + ".transcript'");
    tr << "# sharing\n" << report.share_transcript.serialize();
    if (report.reconstruction_run) tr << "# reconstruction\n" << report.rec_transcript.serialize();
}

ParamMap parse_config_text(const std::string& text) {
    ParamMap out;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigInvalid("line " + std::to_string(lineno) + ": unterminated section");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigInvalid("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(std::string_view(line).substr(0, eq));
        if (key.empty()) throw ConfigInvalid("line " + std::to_string(lineno) + ": empty key");
        if (!section.empty()) key = section + "." + key;
        out[key] = trim(std::string_view(line).substr(eq + 1));
    }
    return out;
}

void apply_config(ScenarioConfig& cfg, const ParamMap& values) {
    for (const auto& [raw_key, value] : values) {
        std::string key = raw_key;
        std::replace(key.begin(), key.end(), '-', '_');
        if (key == "scheme") cfg.scheme = value;
        else if (key == "n") cfg.n = parse_int(key, value);
        else if (key == "t") cfg.t = parse_int(key, value);
        else if (key == "d") cfg.d = parse_int(key, value);
        else if (key == "L") cfg.L = parse_int(key, value);
        else if (key == "field_p" || key == "p") cfg.p = parse_u64(key, value);
        else if (key == "secret" || key == "secrets") {
            cfg.secrets.clear();
            for (const auto& item : split_list(value)) cfg.secrets.push_back(parse_u64(key, item));
        } else if (key == "adversary" || key == "adversary.strategy") cfg.adversary = value;
        else if (key == "corrupt" || key == "adversary.corrupt") cfg.corrupt = parse_parties(key, value);
        else if (key.starts_with("adversary.")) cfg.adversary_params[key.substr(10)] = value;
        else if (key == "scheduler" || key == "scheduler.name") cfg.scheduler = value;
        else if (key.starts_with("scheduler.")) cfg.scheduler_params[key.substr(10)] = value;
        else if (key == "seed") cfg.seed = parse_u64(key, value);
        else if (key == "trials") cfg.trials = parse_int(key, value);
        else if (key == "out") cfg.out = value;
        else if (key == "dealer") {
            const int dealer = parse_int(key, value);
            if (dealer < 1) throw ConfigInvalid("dealer is numbered from 1");
            cfg.dealer = dealer - 1;
        } else if (key == "step_budget") cfg.step_budget = parse_u64(key, value);
        else if (key == "transcript") cfg.record_transcript = value == "true" || value == "1";
        else throw ConfigInvalid("unknown configuration key '" + raw_key + "'");
    }
}

BatterySummary fuzz_battery(const BatteryConfig& bc) {
    BatterySummary summary;
    const bool sync = is_synchronous_scheme(bc.scheme);
    const std::vector<std::string> schedulers = sync ? std::vector<std::string>{"fifo"} : bc.schedulers;
    for (const auto& [n, t] : bc.grid) {
        PartySet corrupt;
        if (bc.corrupt_dealer) corrupt.insert(0);
        for (int i = n - 1; corrupt.size() < t; --i) corrupt.insert(i);
        for (const auto& strategy : bc.strategies) {
            for (const auto& scheduler : schedulers) {
                BatteryCell cell;
                cell.scheme = bc.scheme;
                cell.n = n;
                cell.t = t;
                cell.strategy = strategy;
                const auto colon = strategy.find(':');
                const std::string strategy_name = strategy.substr(0, colon);
                ParamMap strategy_params;
                if (colon != std::string::npos) {
                    std::istringstream items(strategy.substr(colon + 1));
                    for (std::string item; std::getline(items, item, ';');) {
                        const auto eq = item.find('=');
                        if (eq == std::string::npos) throw ConfigInvalid("malformed strategy parameter '" + item + "'");
                        strategy_params[item.substr(0, eq)] = item.substr(eq + 1);
                    }
                }
                cell.scheduler = sync ? "" : scheduler;
                cell.corrupt_dealer = bc.corrupt_dealer;
                for (int k = 0; k < bc.seeds; ++k) {
                    ScenarioConfig cfg;
                    cfg.scheme = bc.scheme;
                    cfg.n = n;
                    cfg.t = t;
                    cfg.d = bc.d;
                    cfg.L = bc.L;
                    cfg.p = bc.p;
                    cfg.secrets = {bc.secret};
                    cfg.adversary = strategy_name;
                    cfg.adversary_params = strategy_params;
                    cfg.corrupt = corrupt;
                    cfg.scheduler = scheduler;
                    cfg.seed = bc.first_seed + static_cast<uint64_t>(k);
                    cfg.record_transcript = false;
                    RunReport r = run_scenario(cfg);
                    ++cell.trials;
                    cell.worst_p2p_bits = std::max(cell.worst_p2p_bits, r.share_metrics.p2p_bits + r.rec_metrics.p2p_bits);
                    cell.worst_bc_bits = std::max(cell.worst_bc_bits, r.share_metrics.bc_bits + r.rec_metrics.bc_bits);
                    cell.worst_async_steps =
                        std::max(cell.worst_async_steps, r.share_metrics.async_steps + r.rec_metrics.async_steps);
                    if (!r.passed()) {
                        ++cell.failures;
                        if (cell.sample_violations.size() < 3) {
                            cell.sample_violations.push_back("seed " + std::to_string(cfg.seed) + ": " + r.violations[0]);
                        }
                    }
                }
                summary.total_runs += cell.trials;
                summary.total_failures += cell.failures;
                summary.cells.push_back(std::move(cell));
            }
        }
    }
    return summary;
}

std::string battery_json(const BatterySummary& s) {
    json cells = json::array();
    for (const auto& c : s.cells) {
        cells.push_back({{"scheme", c.scheme},
                         {"n", c.n},
                         {"t", c.t},
                         {"strategy", c.strategy},
                         {"scheduler", c.scheduler},
                         {"corrupt_dealer", c.corrupt_dealer},
                         {"trials", c.trials},
                         {"failures", c.failures},
                         {"passed", c.failures == 0},
                         {"sample_violations", c.sample_violations},
                         {"worst_p2p_bits", c.worst_p2p_bits},
                         {"worst_bc_bits", c.worst_bc_bits},
                         {"worst_async_steps", c.worst_async_steps}});
    }
    json j = {{"total_runs", s.total_runs}, {"total_failures", s.total_failures}, {"cells", cells}};
    return j.dump(2);
}

PrivacyResult enumerate_views(uint64_t p, int draws, const ViewFunction& view, uint64_t s0, uint64_t s1) {
    uint64_t states = 1;
    for (int k = 0; k < draws; ++k) {
        states *= p;
        if (states > kEnumerationLimit) {
            throw EnumerationTooLarge(std::to_string(p) + "^" + std::to_string(draws) + " states exceed the limit");
        }
    }
    struct Entry {
        uint64_t h1;
        uint64_t h2;
        uint64_t index;
        bool operator<(const Entry& o) const { return std::tie(h1, h2) < std::tie(o.h1, o.h2); }
    };
    auto assignment_at = [&](uint64_t index) {
        std::vector<uint64_t> a(static_cast<size_t>(draws));
        for (auto& v : a) {
            v = index % p;
            index /= p;
        }
        return a;
    };
    auto collect = [&](uint64_t secret) {
        std::vector<Entry> out;
        out.reserve(states);
        std::vector<uint64_t> a(static_cast<size_t>(draws), 0);
        for (uint64_t index = 0; index < states; ++index) {
            const std::string v = view(a, secret);
            uint64_t fnv = 1469598103934665603ULL;
            for (unsigned char ch : v) fnv = (fnv ^ ch) * 1099511628211ULL;
            out.push_back({std::hash<std::string>{}(v), fnv, index});
            for (auto& digit : a) {
                if (++digit < p) break;
                digit = 0;
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto v0 = collect(s0);
    const auto v1 = collect(s1);
    PrivacyResult result;
    result.states = states;
    result.equal = true;
    for (size_t k = 0; k < v0.size(); ++k) {
        if (v0[k].h1 == v1[k].h1 && v0[k].h2 == v1[k].h2) continue;
        result.equal = false;
        // The smaller of the two differing hashes is missing from the other multiset.
        const bool from_first = v0[k] < v1[k];
        const Entry& e = from_first ? v0[k] : v1[k];
        result.witness = "secret " + std::to_string(from_first ? s0 : s1) + " yields a view the other secret " +
                         "yields less often:\n" + view(assignment_at(e.index), from_first ? s0 : s1);
        break;
    }
    return result;
}

PrivacyResult privacy_exhaustive_check(const std::string& scheme, int n, int t, uint64_t p, uint64_t s0, uint64_t s1,
                                       PartySet corrupt) {
    if (corrupt.size() > t) throw ConfigInvalid("corrupt set is larger than t");
    if (scheme == "Shamir") {
        FieldParams fp(p, n, 0);
        ViewFunction view = [fp, t, corrupt](const std::vector<uint64_t>& a, uint64_t s) {
            std::vector<Fe> coeffs{fp.elem(s)};
            for (uint64_t v : a) coeffs.push_back(fp.elem(v));
            UniPoly q(fp.p(), coeffs);
            std::string out;
            for (int i : corrupt.members()) out += std::to_string(i + 1) + ":" + q.eval(fp.alpha(i)).to_string() + ";";
            (void)t;
            return out;
        };
        return enumerate_views(p, t, view, s0, s1);
    }

    ScenarioConfig base;
    base.scheme = scheme;
    base.n = n;
    base.t = t;
    base.p = p;
    base.corrupt = corrupt;
    base.secrets = {s0};
    base = validate_config(base);
    if (corrupt.contains(base.dealer)) throw ConfigInvalid("privacy is defined for an honest dealer");
    const FieldParams fp = field_for(base);
    const SchemeParams sp = params_for(base, fp);
    const bool sync = is_synchronous_scheme(scheme);

    auto selector = [corrupt](DrawTag tag) { return tag.peer < 0 || !corrupt.contains(tag.peer); };

    // Runs sharing with the given per-party assignments; returns the view and the per-party draw counts.
    auto run = [&](const std::vector<std::vector<uint64_t>>& slices, uint64_t secret, std::vector<size_t>* used) {
        std::vector<std::shared_ptr<EnumeratingSource>> sources;
        std::vector<std::shared_ptr<RandomSource>> rngs;
        for (int i = 0; i < n; ++i) {
            if (corrupt.contains(i)) {
                sources.push_back(nullptr);
                rngs.push_back(std::make_shared<CounterRng>(77, i));
            } else {
                auto src = std::make_shared<EnumeratingSource>(slices[static_cast<size_t>(i)], selector, 1000 + i);
                sources.push_back(src);
                rngs.push_back(src);
            }
        }
        Adversary adv = Adversary::passive(corrupt);
        const std::vector<Fe> secrets{fp.elem(secret)};
        if (sync) {
            std::vector<std::unique_ptr<SyncVssParty>> parties;
            std::vector<SyncParty*> raw;
            for (int i = 0; i < n; ++i) {
                parties.push_back(make_sync_party(scheme, sp, i, secrets, rngs[static_cast<size_t>(i)]));
                raw.push_back(parties.back().get());
            }
            run_sync(raw, adv, fp, find_sync_scheme(scheme)->share_rounds);
        } else {
            std::vector<std::unique_ptr<AsyncVssParty>> parties;
            std::vector<AsyncParty*> raw;
            for (int i = 0; i < n; ++i) {
                parties.push_back(make_async_party(scheme, sp, i, secrets, rngs[static_cast<size_t>(i)]));
                raw.push_back(parties.back().get());
            }
            auto scheduler = make_scheduler("fifo", {}, 1, corrupt, n);
            AsyncOptions opts;
            opts.hybrid = find_async_scheme(scheme)->hybrid;
            opts.record_transcript = false;
            run_async(raw, t, adv, *scheduler, fp, opts);
        }
        if (used) {
            used->clear();
            for (const auto& src : sources) used->push_back(src ? src->consumed() : 0);
        }
        return adv.view().serialize();
    };

    std::vector<size_t> counts;
    std::vector<size_t> counts_other;
    const std::vector<std::vector<uint64_t>> zeros(static_cast<size_t>(n), std::vector<uint64_t>(4096, 0));
    run(zeros, s0, &counts);
    run(zeros, s1, &counts_other);
    if (counts != counts_other) throw std::logic_error("randomness consumption depends on the secret");
    int draws = 0;
    for (size_t c : counts) draws += static_cast<int>(c);

    ViewFunction view = [&](const std::vector<uint64_t>& a, uint64_t secret) {
        std::vector<std::vector<uint64_t>> slices(static_cast<size_t>(n));
        size_t offset = 0;
        for (size_t i = 0; i < slices.size(); ++i) {
            slices[i].assign(a.begin() + static_cast<std::ptrdiff_t>(offset),
                             a.begin() + static_cast<std::ptrdiff_t>(offset + counts[i]));
            offset += counts[i];
        }
        return run(slices, secret, nullptr);
    };
    return enumerate_views(p, draws, view, s0, s1);
}

}  // namespace vsslab
