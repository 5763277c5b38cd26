#include <gtest/gtest.h>

#include <functional>

#include "vsslab/engine.hpp"
#include "vsslab/adversary.hpp"
#include "vsslab/poly.hpp"
#include "vsslab/errors.hpp"
#include "vsslab/vss_sync.hpp"

using namespace vsslab;

namespace {

struct SyncRun {
    std::vector<std::unique_ptr<SyncVssParty>> parties;
    RunResult share;
    RunResult rec;
};

SyncRun run_with(const std::string& scheme, int n, int t, uint64_t p, uint64_t secret, uint64_t seed, PartySet corrupt,
                 const std::function<std::unique_ptr<Strategy>(const StrategyEnv&)>& make) {
    FieldParams fp(p, n, 0);
    SchemeParams sp{fp, n, t, t, 1, 0};
    SyncRun run;
    for (int i = 0; i < n; ++i) {
        run.parties.push_back(make_sync_party(scheme, sp, i, {fp.elem(secret)}, std::make_shared<CounterRng>(seed, i)));
    }
    StrategyEnv env{n, 0, corrupt, p, {}};
    env.shadow_deal = [=]() {
        auto shadow = make_sync_party(scheme, sp, 0, {fp.elem(secret + 1)}, std::make_shared<CounterRng>(seed + 99, 0));
        return shadow->on_round(1, {});
    };
    Adversary adv(corrupt, make(env));
    std::vector<SyncParty*> raw;
    for (auto& party : run.parties) raw.push_back(party.get());
    const SyncSchemeInfo* info = find_sync_scheme(scheme);
    run.share = run_sync(raw, adv, fp, info->share_rounds);
    for (auto& party : run.parties) party->begin_reconstruction();
    run.rec = run_sync(raw, adv, fp, info->rec_rounds);
    return run;
}

SyncRun run_scheme(const std::string& scheme, int n, int t, uint64_t p, uint64_t secret, uint64_t seed,
                   PartySet corrupt = {}, const std::string& strategy = "passive", ParamMap params = {}) {
    return run_with(scheme, n, t, p, secret, seed, corrupt,
                    [&](const StrategyEnv& env) { return make_strategy(strategy, params, seed, env); });
}

// Corrupt dealer whose "deal" to party j carries j^2: no three shares lie on one line.
class QuadraticDeal final : public Strategy {
public:
    explicit QuadraticDeal(uint64_t p) : p_(p) {}
    std::string name() const override { return "quadratic-deal"; }
    std::vector<Outgoing> transform(const ActionContext&, int, std::vector<Outgoing> out,
                                    const AdversaryView&) override {
        for (auto& o : out) {
            if (o.msg.type == "deal") o.msg.elems = {Fe(static_cast<uint64_t>(o.to * o.to), p_)};
        }
        return out;
    }

private:
    uint64_t p_;
};

class AllSync : public ::testing::TestWithParam<std::string> {};

TEST_P(AllSync, HonestRunReconstructsSecretWithDeclaredRounds) {
    const std::string scheme = GetParam();
    const SyncSchemeInfo* info = find_sync_scheme(scheme);
    ASSERT_NE(info, nullptr);
    const int t = 1;
    const int n = info->resilience_factor * t + 1;
    auto run = run_scheme(scheme, n, t, 101, 42, 7);
    EXPECT_EQ(run.share.metrics.rounds_total, info->share_rounds);
    EXPECT_EQ(run.share.metrics.rounds_with_broadcast, info->share_broadcast_rounds);
    for (auto& party : run.parties) {
        const Outcome& o = party->outcome();
        EXPECT_TRUE(o.sharing_done);
        EXPECT_FALSE(o.discarded);
        if (!o.rec_participant) continue;
        ASSERT_TRUE(o.output.has_value()) << scheme << " party " << party->id();
        EXPECT_EQ(o.output->at(0).value(), 42u) << scheme << " party " << party->id();
    }
}

INSTANTIATE_TEST_SUITE_P(Schemes, AllSync,
                         ::testing::Values("7BGW", "5BGW", "4GIKR", "3GIKR", "3FGGRS-WSS", "3FGGRS", "3KKK-WSS", "3KKK",
                                           "3AKP", "2GIKR", "1GIKR"));

TEST(SyncAdversarial, BgwCorrectsOneWrongReconstructionShare) {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        auto run = run_scheme("7BGW", 4, 1, 101, 42, seed, {2}, "wrong-share-at-rec");
        for (auto& party : run.parties) {
            if (party->id() == 2) continue;
            ASSERT_TRUE(party->outcome().output.has_value());
            EXPECT_EQ(party->outcome().output->at(0).value(), 42u) << "seed " << seed;
        }
    }
}

TEST(SyncAdversarial, OneRoundSchemeOutputsBottomWhenNoThreeSharesAgree) {
    // Oracle: the four points (j, j^2) for j = 1..4 have no three on a line.
    const uint64_t p = 101;
    std::vector<Point> pts;
    for (uint64_t j = 1; j <= 4; ++j) pts.emplace_back(Fe(j, p), Fe(j * j, p));
    for (int skip = 0; skip < 4; ++skip) {
        std::vector<Point> three;
        for (int k = 0; k < 4; ++k) {
            if (k != skip) three.push_back(pts[static_cast<size_t>(k)]);
        }
        ASSERT_FALSE(fit_exact(three, 1).has_value());
    }
    auto run = run_with("1GIKR", 5, 1, p, 42, 1, {0},
                        [p](const StrategyEnv&) { return std::make_unique<QuadraticDeal>(p); });
    for (auto& party : run.parties) {
        if (party->id() == 0) continue;
        EXPECT_TRUE(party->outcome().rec_done);
        EXPECT_FALSE(party->outcome().output.has_value()) << "party " << party->id();
    }
}

TEST(SyncAdversarial, WeakSchemeOutputsCommittedValueOrBottom) {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        auto run = run_scheme("3FGGRS-WSS", 7, 2, 101, 42, seed, {0, 6}, "wrong-share-at-rec");
        std::optional<std::vector<Fe>> value;
        for (auto& party : run.parties) {
            if (party->id() == 0 || party->id() == 6) continue;
            const auto& out = party->outcome().output;
            if (!out) continue;
            if (!value) value = *out;
            EXPECT_EQ(*value, *out) << "seed " << seed;
        }
        if (value) EXPECT_EQ(value->at(0).value(), 42u);
    }
}

TEST(SyncAdversarial, InconsistentDealerIsDiscardedUnanimously) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        auto run = run_scheme("7BGW", 4, 1, 101, 42, seed, {0}, "inconsistent-dealer");
        for (auto& party : run.parties) {
            if (party->id() == 0) continue;
            EXPECT_TRUE(party->outcome().discarded);
            ASSERT_TRUE(party->outcome().output.has_value());
            EXPECT_EQ(party->outcome().output->at(0).value(), 0u);
        }
    }
}

TEST(SyncAdversarial, InconsistentDealerWithOneVictimStillCommitsToOnePolynomial) {
    for (const std::string scheme : {"7BGW", "5BGW", "4GIKR", "3KKK", "3AKP"}) {
        auto run = run_scheme(scheme, 4, 1, 101, 42, 3, {0}, "inconsistent-dealer", {{"split", "1"}});
        std::vector<Point> pts;
        for (auto& party : run.parties) {
            if (party->id() == 0) continue;
            ASSERT_TRUE(party->outcome().shares[0].has_value()) << scheme;
            pts.emplace_back(Fe(static_cast<uint64_t>(party->id() + 1), 101), *party->outcome().shares[0]);
        }
        auto q = fit_exact(pts, 1);
        ASSERT_TRUE(q.has_value()) << scheme;
        for (auto& party : run.parties) {
            if (party->id() == 0) continue;
            ASSERT_TRUE(party->outcome().output.has_value()) << scheme;
            EXPECT_EQ(party->outcome().output->at(0), q->eval(Fe(0, 101))) << scheme;
        }
    }
}

TEST(SyncAdversarial, AkpEarlyShareMatchesFinalShareUnderHonestDealer) {
    auto run = run_scheme("3AKP", 4, 1, 101, 42, 2);
    for (auto& party : run.parties) {
        const auto& early = party->outcome().early;
        ASSERT_TRUE(early.has_value()) << party->id();
        ASSERT_TRUE(early->share.has_value());
        EXPECT_EQ(*early->share, *party->outcome().shares[0]);
    }
}

TEST(SyncBounds, ResilienceIsEnforced) {
    EXPECT_THROW(check_sync_bounds("2GIKR", 4, 1), ConfigBound);
    EXPECT_THROW(check_sync_bounds("7BGW", 3, 1), ConfigBound);
    EXPECT_THROW(check_sync_bounds("3GIKR", 10, 3), ConfigBound);
    EXPECT_NO_THROW(check_sync_bounds("2GIKR", 5, 1));
    EXPECT_NO_THROW(check_sync_bounds("7BGW", 7, 2));
}

}  // namespace

