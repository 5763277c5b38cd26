// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vsslab/adversary.hpp"
#include "vsslab/avss.hpp"
#include "vsslab/codes.hpp"
#include "vsslab/engine.hpp"
#include "vsslab/graphs.hpp"
#include "vsslab/harness.hpp"
#include "vsslab/random.hpp"
#include "vsslab/vss_sync.hpp"

using namespace vsslab;

namespace {

constexpr double kRoundSignatureSeconds = 1.0;
constexpr double kCorrectnessSeconds = 120.0;
constexpr double kPrivacySeconds = 300.0;
constexpr double kScalingRatio = 5.0;
constexpr int kSeeds = 25;
constexpr uint64_t kP = 1009;
constexpr uint64_t kSecret = 42;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

int report(int id, const std::string& title, const Verdict& v) {
    std::printf("%s [%d] %s: %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.detail.c_str());
    std::fflush(stdout);
    return v.pass ? 0 : 1;
}

int resilience(const std::string& scheme) {
    if (const auto* s = find_sync_scheme(scheme)) return s->resilience_factor;
    return find_async_scheme(scheme)->resilience_factor;
}

std::string contract_of(const std::string& scheme) {
    if (const auto* s = find_sync_scheme(scheme)) return s->contract;
    return find_async_scheme(scheme)->contract;
}

bool has_reconstruction(const std::string& scheme) {
    if (find_sync_scheme(scheme)) return true;
    return find_async_scheme(scheme)->has_reconstruction;
}

ScenarioConfig base(const std::string& scheme, int t, uint64_t seed) {
    ScenarioConfig cfg;
    cfg.scheme = scheme;
    cfg.t = t;
    cfg.n = resilience(scheme) * t + 1;
    cfg.p = kP;
    cfg.secrets = {kSecret};
    cfg.seed = seed;
    cfg.record_transcript = false;
    return cfg;
}

std::string describe(const ScenarioConfig& cfg) {
    std::ostringstream s;
    s << cfg.scheme << " n=" << cfg.n << " t=" << cfg.t << " " << cfg.adversary << " " << cfg.scheduler
      << " seed=" << cfg.seed;
    return s.str();
}

std::vector<Point> honest_share_points(const RunReport& r) {
    std::vector<Point> pts;
    for (const auto& party : r.parties) {
        if (party.corrupt || party.shares.empty() || !party.shares[0]) continue;
        pts.emplace_back(Fe(static_cast<uint64_t>(party.id + 1), r.config.p), *party.shares[0]);
    }
    return pts;
}

// Exact fit of all points to one polynomial of degree <= d, by interpolating the first d+1.
std::optional<UniPoly> fits(const std::vector<Point>& pts, int d) {
    if (static_cast<int>(pts.size()) < d + 1) return std::nullopt;
    std::vector<Point> head(pts.begin(), pts.begin() + d + 1);
    UniPoly q = interpolate(head);
    for (const auto& [x, y] : pts) {
        if (q.eval(x) != y) return std::nullopt;
    }
    return q;
}

// 1. Sharing-phase round signatures.
Verdict round_signatures() {
    const std::map<std::string, std::pair<uint64_t, uint64_t>> expected{
        {"7BGW", {7, 5}},   {"5BGW", {5, 3}}, {"4GIKR", {4, 3}}, {"3GIKR", {3, 2}}, {"3FGGRS", {3, 2}},
        {"3KKK", {3, 1}},   {"3AKP", {3, 2}}, {"2GIKR", {2, 1}}, {"1GIKR", {1, 0}}};
    Verdict v;
    std::ostringstream detail;
    double slowest = 0;
    for (const auto& [scheme, pair] : expected) {
        const auto start = Clock::now();
        RunReport r = run_scenario(validate_config(base(scheme, 1, 1)));
        const double elapsed = seconds_since(start);
        slowest = std::max(slowest, elapsed);
        const auto& m = r.share_metrics;
        detail << scheme << "=(" << m.rounds_total << "," << m.rounds_with_broadcast << ") ";
        if (m.rounds_total != pair.first || m.rounds_with_broadcast != pair.second) {
            v.fail(scheme + " measured (" + std::to_string(m.rounds_total) + "," +
                   std::to_string(m.rounds_with_broadcast) + ")");
        }
        if (elapsed >= kRoundSignatureSeconds) v.fail(scheme + " took " + std::to_string(elapsed) + " s");
    }
    if (v.pass) v.detail = detail.str() + "slowest " + std::to_string(slowest) + " s";
    return v;
}

// 2. Honest dealer: every honest party outputs the secret (WPS: honest shares interpolate to it).
Verdict correctness_battery() {
    Verdict v;
    const auto start = Clock::now();
    int runs = 0;
    for (const auto& scheme : scheme_names()) {
        const bool sync = is_synchronous_scheme(scheme);
        const std::vector<std::string> schedulers = sync ? std::vector<std::string>{"fifo"} : scheduler_names();
        for (const auto& strategy : strategy_names()) {
            for (const auto& sched : schedulers) {
                for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
                    ScenarioConfig cfg = base(scheme, 1, seed);
                    cfg.adversary = strategy;
                    cfg.scheduler = sched;
                    cfg.corrupt = {cfg.n - 1};
                    RunReport r = run_scenario(validate_config(cfg));
                    ++runs;
                    if (!r.passed()) v.fail(describe(cfg) + ": " + r.violations.front());
                    for (const auto& party : r.parties) {
                        if (party.corrupt || !party.rec_participant || !has_reconstruction(scheme)) continue;
                        if (!party.output || party.output->at(0).value() != kSecret) {
                            v.fail(describe(cfg) + ": P" + std::to_string(party.id + 1) + " output differs");
                        }
                    }
                    if (!has_reconstruction(scheme) || contract_of(scheme) == "type-II") {
                        auto q = fits(honest_share_points(r), 1);
                        if (contract_of(scheme) == "type-II" || contract_of(scheme) == "wps") {
                            if (!q || q->eval(Fe(0, kP)).value() != kSecret) {
                                v.fail(describe(cfg) + ": honest shares do not interpolate to the secret");
                            }
                        }
                    }
                }
            }
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= kCorrectnessSeconds) v.fail("took " + std::to_string(elapsed) + " s");
    if (v.pass) v.detail = std::to_string(runs) + " runs in " + std::to_string(elapsed) + " s";
    return v;
}

// 3. Corrupt dealer: commitment per contract.
Verdict commitment_battery() {
    struct Attack {
        std::string strategy;
        ParamMap params;
    };
    const std::vector<Attack> attacks{{"inconsistent-dealer", {}},
                                      {"inconsistent-dealer", {{"split", "1"}}},
                                      {"crash", {}},
                                      {"crash", {{"from", "2"}}},
                                      {"garble", {}}};
    Verdict v;
    int runs = 0;
    int committed_runs = 0;
    for (const auto& scheme : scheme_names()) {
        const bool sync = is_synchronous_scheme(scheme);
        const std::string contract = contract_of(scheme);
        const std::vector<std::string> schedulers =
            sync ? std::vector<std::string>{"fifo"} : std::vector<std::string>{"seeded-random", "corrupt-first"};
        for (const auto& attack : attacks) {
            for (const auto& sched : schedulers) {
                for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
                    ScenarioConfig cfg = base(scheme, 1, seed);
                    cfg.adversary = attack.strategy;
                    cfg.adversary_params = attack.params;
                    cfg.scheduler = sched;
                    cfg.corrupt = {0};
                    RunReport r = run_scenario(validate_config(cfg));
                    ++runs;
                    const std::string where = describe(cfg) + (attack.params.empty() ? "" : " split=1");
                    if (!r.passed()) v.fail(where + ": " + r.violations.front());
                    std::vector<std::optional<std::vector<Fe>>> outs;
                    for (const auto& party : r.parties) {
                        if (!party.corrupt && party.rec_done) outs.push_back(party.output);
                    }
                    if (contract == "wss") {
                        std::optional<std::vector<Fe>> value;
                        for (const auto& o : outs) {
                            if (!o) continue;
                            if (value && *value != *o) v.fail(where + ": two distinct non-bottom outputs");
                            value = o;
                        }
                    } else if (contract == "wps") {
                        auto pts = honest_share_points(r);
                        if (!pts.empty()) {
                            if (static_cast<int>(pts.size()) < cfg.t + 1) v.fail(where + ": fewer than t+1 shares");
                            if (!fits(pts, cfg.t)) v.fail(where + ": honest shares do not fit degree t");
                        }
                    } else {
                        for (const auto& o : outs) {
                            if (o != outs.front()) v.fail(where + ": honest outputs differ");
                        }
                        if (contract == "type-II" && r.status == "shared") {
                            auto q = fits(honest_share_points(r), cfg.t);
                            if (!q) {
                                v.fail(where + ": honest shares do not fit one polynomial");
                            } else if (!outs.empty() && (!outs.front() || outs.front()->at(0) != q->eval(Fe(0, kP)))) {
                                v.fail(where + ": output is not the committed constant term");
                            }
                        }
                    }
                    if (r.status == "shared") ++committed_runs;
                }
            }
        }
    }
    if (v.pass) {
        v.detail = std::to_string(runs) + " runs, " + std::to_string(committed_runs) + " reached a sharing";
    }
    return v;
}

// 4. Exhaustive privacy.
Verdict privacy() {
    Verdict v;
    const auto start = Clock::now();
    std::ostringstream detail;
    struct Case {
        std::string scheme;
        int n;
    };
    for (const Case c : {Case{"1GIKR", 5}, Case{"WPS", 4}}) {
        for (int corrupt = 1; corrupt < c.n; ++corrupt) {
            PrivacyResult r = privacy_exhaustive_check(c.scheme, c.n, 1, 5, 0, 1, PartySet{corrupt});
            detail << c.scheme << "{P" << corrupt + 1 << "}:" << (r.equal ? "Equal" : "Distinguishable") << "/"
                   << r.states << " ";
            if (!r.equal) v.fail(c.scheme + " corrupt P" + std::to_string(corrupt + 1) + " " + r.witness);
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= kPrivacySeconds) v.fail("took " + std::to_string(elapsed) + " s");
    if (v.pass) v.detail = detail.str() + "in " + std::to_string(elapsed) + " s";
    return v;
}

// 5. Decoding boundary against the brute-force oracle.
Verdict rs_boundary() {
    Verdict v;
    const uint64_t p = 97;
    CounterRng rng(2024);
    int ambiguous = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = static_cast<int>(rng.below(5));
        const int r = static_cast<int>(rng.below(4));
        const int m = d + 2 * r + 1;
        std::vector<uint64_t> coeffs(static_cast<size_t>(d + 1));
        for (auto& c : coeffs) c = rng.below(p);
        // Distinct random evaluation points.
        std::vector<uint64_t> xs;
        while (static_cast<int>(xs.size()) < m) {
            const uint64_t x = 1 + rng.below(p - 1);
            if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
        }
        // Success side: m points, e <= r planted errors.
        const int errors = static_cast<int>(rng.below(static_cast<uint64_t>(r) + 1));
        std::vector<Point> pts;
        for (int i = 0; i < m; ++i) {
            uint64_t y = oracle::horner(coeffs, xs[static_cast<size_t>(i)], p);
            if (i < errors) y = (y + 1 + rng.below(p - 1)) % p;
            pts.emplace_back(Fe(xs[static_cast<size_t>(i)], p), Fe(y, p));
        }
        auto got = rs_decode_points(d, r, pts);
        auto candidates = oracle::decode_candidates(d, r, pts);
        const std::string where = "trial " + std::to_string(trial) + " d=" + std::to_string(d) + " r=" + std::to_string(r);
        if (candidates.size() != 1) v.fail(where + ": oracle found " + std::to_string(candidates.size()) + " candidates");
        if (!got) {
            v.fail(where + ": decode failed within the bound");
            continue;
        }
        for (int k = 0; k <= d; ++k) {
            if (got->coeff(k).value() != coeffs[static_cast<size_t>(k)]) v.fail(where + ": wrong polynomial");
        }
        if (!candidates.empty() && candidates[0] != *got) v.fail(where + ": differs from the oracle");

        // Failure side: m - 1 = d + 2r points, r of them moved onto a second polynomial that agrees
        // with the first on d points.
        std::vector<uint64_t> other = coeffs;
        // other = coeffs + prod_{j<d} (x - xs[j]), so both agree on xs[0..d-1].
        std::vector<uint64_t> prod{1};
        for (int j = 0; j < d; ++j) {
            std::vector<uint64_t> next(prod.size() + 1, 0);
            for (size_t k = 0; k < prod.size(); ++k) {
                next[k + 1] = (next[k + 1] + prod[k]) % p;
                next[k] = (next[k] + (p - xs[static_cast<size_t>(j)]) * prod[k]) % p;
            }
            prod = next;
        }
        other.resize(std::max(other.size(), prod.size()), 0);
        for (size_t k = 0; k < prod.size(); ++k) other[k] = (other[k] + prod[k]) % p;
        std::vector<Point> short_pts;
        int agree_first = 0;
        int agree_second = 0;
        for (int i = 0; i < m - 1; ++i) {
            const uint64_t x = xs[static_cast<size_t>(i)];
            const bool planted = i >= d + r;
            const uint64_t y = planted ? oracle::horner(other, x, p) : oracle::horner(coeffs, x, p);
            short_pts.emplace_back(Fe(x, p), Fe(y, p));
            agree_first += oracle::horner(coeffs, x, p) == y;
            agree_second += oracle::horner(other, x, p) == y;
        }
        const bool oracle_ambiguous = agree_first >= m - 1 - r && agree_second >= m - 1 - r;
        if (!oracle_ambiguous) {
            v.fail(where + ": construction is not ambiguous");
            continue;
        }
        ++ambiguous;
        if (rs_decode_points(d, r, short_pts).has_value()) v.fail(where + ": decode succeeded below the bound");
    }
    if (v.pass) v.detail = "1000 cases within the bound decoded, " + std::to_string(ambiguous) + " ambiguous cases rejected";
    return v;
}

// 6. Star finding against exhaustive search.
Verdict star_oracle() {
    Verdict v;
    int graphs = 0;
    int with_clique = 0;
    auto check = [&](const ConsistencyGraph& g, int n, int t) {
        ++graphs;
        auto star = find_star(g, n, t);
        const bool clique = oracle::clique_exists(g, n, n - t);
        with_clique += clique;
        if (star && !is_valid_star(g, *star, n, t)) v.fail("invalid star at n=" + std::to_string(n));
        if (star && !oracle::star_exists(g, n, t)) v.fail("star reported where none exists");
        if (clique && !star) v.fail("no star despite a clique of size n-t at n=" + std::to_string(n));
    };
    for (int n = 4; n <= 6; ++n) {
        const int t = (n - 1) / 3;
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
        }
        for (uint64_t mask = 0; mask < (uint64_t{1} << pairs.size()); ++mask) {
            ConsistencyGraph g(n);
            for (size_t k = 0; k < pairs.size(); ++k) {
                if (mask >> k & 1) g.add_edge(pairs[k].first, pairs[k].second);
            }
            check(g, n, t);
        }
    }
    CounterRng rng(88);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 8;
        const int t = 2;
        ConsistencyGraph g(n);
        // Plant a clique of size n - t in half the graphs, then add random edges.
        if (trial % 2 == 0) {
            for (int a = 0; a < n - t; ++a) {
                for (int b = a + 1; b < n - t; ++b) g.add_edge(a, b);
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (rng.below(10) < 6) g.add_edge(a, b);
            }
        }
        check(g, n, t);
    }
    if (v.pass) v.detail = std::to_string(graphs) + " graphs, " + std::to_string(with_clique) + " with an (n-t)-clique";
    return v;
}

// Party `sender` acasts one payload; every party records its deliveries.
class AcastParty final : public AsyncParty {
public:
    AcastParty(int id, int sender, const FieldParams& fp) : id_(id), sender_(sender), fp_(fp) {}
    std::vector<Outgoing> on_start() override {
        if (id_ != sender_) return {};
        return {acast_msg(id_, Payload{"m", {fp_.elem(42), fp_.elem(7)}, {}})};
    }
    std::vector<Outgoing> on_deliver(const Envelope& env) override {
        if (env.kind == Channel::broadcast) delivered.push_back(env);
        return {};
    }
    bool terminated() const override { return !delivered.empty(); }
    std::vector<Envelope> delivered;

private:
    int id_;
    int sender_;
    const FieldParams& fp_;
};

// 7. Reliable broadcast totality and agreement.
Verdict acast_properties() {
    Verdict v;
    static const FieldParams fp(101, 8, 0);
    int runs = 0;
    for (auto [n, t] : std::vector<std::pair<int, int>>{{4, 1}, {7, 2}}) {
        for (const bool corrupt_sender : {false, true}) {
            PartySet corrupt;
            if (corrupt_sender) corrupt.insert(0);
            for (int k = n - 1; corrupt.size() < t; --k) corrupt.insert(k);
            for (int schedule = 0; schedule < 100; ++schedule) {
                const uint64_t seed = static_cast<uint64_t>(schedule) + 1;
                const std::string sched = schedule % 4 == 0   ? "corrupt-first"
                                          : schedule % 4 == 1 ? "honest-last"
                                                              : "seeded-random";
                std::vector<std::unique_ptr<AcastParty>> parties;
                std::vector<AsyncParty*> raw;
                for (int i = 0; i < n; ++i) {
                    parties.push_back(std::make_unique<AcastParty>(i, 0, fp));
                    raw.push_back(parties.back().get());
                }
                StrategyEnv env{n, 0, corrupt, 101, {}};
                Adversary adv(corrupt, make_strategy(corrupt_sender ? "equivocate" : "garble", {}, seed, env));
                ParamMap sp;
                if (sched == "honest-last") sp["victim"] = std::to_string(1 + schedule % n);
                auto scheduler = make_scheduler(sched, sp, seed, corrupt, n);
                run_async(raw, t, adv, *scheduler, fp, {});
                ++runs;
                const std::string where = "n=" + std::to_string(n) + " " + sched + " seed " + std::to_string(seed);
                std::optional<Payload> seen;
                int delivered = 0;
                for (int i = 0; i < n; ++i) {
                    if (corrupt.contains(i)) continue;
                    const auto& d = parties[static_cast<size_t>(i)]->delivered;
                    if (d.size() > 1) v.fail(where + ": duplicate delivery");
                    if (d.empty()) continue;
                    ++delivered;
                    if (seen && *seen != d[0].msg) v.fail(where + ": honest parties delivered different payloads");
                    seen = d[0].msg;
                    if (!corrupt_sender && (d[0].msg.elems.at(0).value() != 42 || d[0].msg.elems.at(1).value() != 7)) {
                        v.fail(where + ": honest sender's payload altered");
                    }
                }
                const int honest = n - corrupt.size();
                if (!corrupt_sender && delivered != honest) v.fail(where + ": honest-sender totality violated");
                if (corrupt_sender && delivered != 0 && delivered != honest) v.fail(where + ": partial delivery");
            }
        }
    }
    if (v.pass) v.detail = std::to_string(runs) + " runs";
    return v;
}

// 8. Termination under adversarial scheduling.
Verdict async_termination() {
    Verdict v;
    int runs = 0;
    for (const std::string scheme : {"BCG", "PCR", "CHP", "PR"}) {
        for (const std::string sched : {"corrupt-first", "honest-last"}) {
            for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
                ScenarioConfig cfg = base(scheme, 1, seed);
                cfg.scheduler = sched;
                cfg.adversary = "garble";
                cfg.corrupt = {cfg.n - 1};
                cfg.scheduler_params["victim"] = std::to_string(1 + seed % static_cast<uint64_t>(cfg.n - 1));
                RunReport r = run_scenario(validate_config(cfg));
                ++runs;
                if (!r.passed()) v.fail(describe(cfg) + ": " + r.violations.front());
                for (const auto& party : r.parties) {
                    if (party.corrupt) continue;
                    if (!party.sharing_done || !party.rec_done) {
                        v.fail(describe(cfg) + ": P" + std::to_string(party.id + 1) + " did not terminate");
                    }
                }
            }
        }
    }
    if (v.pass) v.detail = std::to_string(runs) + " runs";
    return v;
}

// 9. Broadcast cost independent of the batch size.
Verdict chp_broadcast() {
    Verdict v;
    auto run = [&](int L) {
        ScenarioConfig cfg = base("CHP", 1, 3);
        cfg.L = L;
        cfg.secrets = {kSecret};
        RunReport r = run_scenario(validate_config(cfg));
        if (!r.passed()) v.fail("L=" + std::to_string(L) + ": " + r.violations.front());
        return r.share_metrics;
    };
    const Metrics one = run(1);
    const Metrics batch = run(5 - 3);
    std::ostringstream detail;
    detail << "bc elements L=1: " << one.bc_elems << ", L=2: " << batch.bc_elems << "; bc bits " << one.bc_bits
           << " vs " << batch.bc_bits;
    if (one.bc_elems != batch.bc_elems || one.bc_bits != batch.bc_bits) v.fail(detail.str());
    if (v.pass) v.detail = detail.str();
    return v;
}

// 10. Point-to-point growth of the seven-round scheme.
Verdict bgw_scaling() {
    Verdict v;
    auto elems = [&](int n, int t) {
        ScenarioConfig cfg = base("7BGW", t, 1);
        cfg.n = n;
        RunReport r = run_scenario(validate_config(cfg));
        if (!r.passed()) v.fail(r.violations.front());
        return r.share_metrics.p2p_elems;
    };
    const uint64_t small = elems(4, 1);
    const uint64_t large = elems(8, 2);
    const double ratio = static_cast<double>(large) / static_cast<double>(small);
    std::ostringstream detail;
    detail << "p2p elements " << small << " -> " << large << ", ratio " << ratio << " (limit " << kScalingRatio << ")";
    if (ratio > kScalingRatio) v.fail(detail.str());
    if (v.pass) v.detail = detail.str();
    return v;
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
    struct Criterion {
        std::string title;
        std::function<Verdict()> check;
    };
    const std::vector<Criterion> criteria{
        {"sharing-phase round signatures", round_signatures},
        {"honest-dealer correctness battery", correctness_battery},
        {"corrupt-dealer commitment battery", commitment_battery},
        {"exhaustive privacy", privacy},
        {"Reed-Solomon decoding boundary", rs_boundary},
        {"star finding vs exhaustive search", star_oracle},
        {"reliable broadcast totality and agreement", acast_properties},
        {"asynchronous termination under adversarial scheduling", async_termination},
        {"batched broadcast cost invariance", chp_broadcast},
        {"seven-round scheme communication scaling", bgw_scaling},
    };
    int failures = 0;
    std::vector<bool> selected(criteria.size(), argc == 1);
    for (int a = 1; a < argc; ++a) {
        const int k = std::atoi(argv[a]);
        if (k >= 1 && k <= static_cast<int>(criteria.size())) selected[static_cast<size_t>(k - 1)] = true;
    }
    int ran = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        if (!selected[k]) continue;
        ++ran;
        Verdict v;
        try {
            v = criteria[k].check();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        failures += report(static_cast<int>(k + 1), criteria[k].title, v);
    }
    std::printf("%d of %d criteria passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
}
