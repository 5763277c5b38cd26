#include <gtest/gtest.h>

#include "vsslab/adversary.hpp"
#include "vsslab/errors.hpp"
#include "vsslab/harness.hpp"
#include "vsslab/protocol.hpp"
#include "vsslab/vss_sync.hpp"

using namespace vsslab;

namespace {

constexpr uint64_t kP = 1009;

Outgoing p2p(int from, int to, const std::string& type, std::vector<uint64_t> values) {
    Payload m{type, {}, {}};
    for (uint64_t v : values) m.elems.push_back(Fe(v, kP));
    return send_to(from, to, std::move(m));
}

std::unique_ptr<Strategy> strategy(const std::string& name, ParamMap params = {}, StrategyEnv env = {4, 0, {0}, kP, {}}) {
    return make_strategy(name, params, 5, env);
}

Envelope envelope(int sender, int receiver, uint64_t id) {
    Envelope e;
    e.id = id;
    e.sender = sender;
    e.receiver = receiver;
    e.sent_step = id;
    return e;
}

}  // namespace

TEST(Strategies, PassiveKeepsPrescription) {
    auto s = strategy("passive");
    std::vector<Outgoing> out{p2p(0, 1, "deal", {1, 2}), p2p(0, 2, "deal", {3})};
    auto got = s->transform({}, 0, out, AdversaryView{});
    ASSERT_EQ(got.size(), 2u);
    EXPECT_EQ(got[0].msg, out[0].msg);
    EXPECT_EQ(got[1].msg, out[1].msg);
}

TEST(Strategies, CrashSilencesFromTriggerRound) {
    auto s = strategy("crash", {{"from", "3"}});
    std::vector<Outgoing> out{p2p(0, 1, "x", {1})};
    EXPECT_EQ(s->transform({true, 2, 0}, 0, out, {}).size(), 1u);
    EXPECT_TRUE(s->transform({true, 3, 0}, 0, out, {}).empty());
    EXPECT_TRUE(s->transform({false, 0, 7}, 0, out, {}).empty());
    EXPECT_EQ(s->transform({false, 0, 2}, 0, out, {}).size(), 1u);
}

TEST(Strategies, GarbleChangesOnlyFieldElementsAndIsSeeded) {
    std::vector<Outgoing> out{p2p(0, 1, "deal", {1, 2, 3, 4, 5, 6, 7, 8})};
    out[0].msg.ids = {3, 1};
    auto a = strategy("garble")->transform({}, 0, out, {});
    auto b = strategy("garble")->transform({}, 0, out, {});
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].msg.type, "deal");
    EXPECT_EQ(a[0].msg.ids, out[0].msg.ids);
    EXPECT_EQ(a[0].msg.elems.size(), 8u);
    EXPECT_NE(a[0].msg.elems, out[0].msg.elems);
    EXPECT_EQ(a[0].msg, b[0].msg);
}

TEST(Strategies, WrongShareAtRecTouchesOnlyReconstructionMessages) {
    auto s = strategy("wrong-share-at-rec");
    std::vector<Outgoing> out{p2p(0, 1, "deal", {1, 2, 3, 4}), p2p(0, 1, "rec-share", {1, 2, 3, 4})};
    auto got = s->transform({}, 0, out, {});
    EXPECT_EQ(got[0].msg, out[0].msg);
    EXPECT_NE(got[1].msg.elems, out[1].msg.elems);
}

TEST(Strategies, PadMismatchAltersOnlyRegisteredPads) {
    auto s = strategy("pad-mismatch");
    std::vector<Outgoing> out{p2p(1, 2, "pad", {10}), p2p(1, 0, "pad-register", {10, 20}),
                              p2p(1, 0, "w2:pad-register", {5})};
    auto got = s->transform({}, 1, out, {});
    EXPECT_EQ(got[0].msg, out[0].msg);
    EXPECT_EQ(got[1].msg.elems[0].value(), 11u);
    EXPECT_EQ(got[1].msg.elems[1].value(), 21u);
    EXPECT_EQ(got[2].msg.elems[0].value(), 6u);
}

TEST(Strategies, InconsistentDealerSwapsDealsForSplitTargets) {
    StrategyEnv env{4, 0, {0}, kP, {}};
    env.shadow_deal = [] {
        return std::vector<Outgoing>{p2p(0, 1, "deal", {901}), p2p(0, 2, "deal", {902}), p2p(0, 3, "deal", {903})};
    };
    auto s = strategy("inconsistent-dealer", {{"split", "2"}}, env);
    std::vector<Outgoing> out{p2p(0, 1, "deal", {1}), p2p(0, 2, "deal", {2}), p2p(0, 3, "deal", {3}),
                              p2p(0, 3, "other", {4})};
    auto got = s->transform({}, 0, out, {});
    EXPECT_EQ(got[0].msg.elems[0].value(), 1u);
    EXPECT_EQ(got[1].msg.elems[0].value(), 902u);
    EXPECT_EQ(got[2].msg.elems[0].value(), 903u);
    EXPECT_EQ(got[3].msg.elems[0].value(), 4u);
    // Non-dealer corrupt parties are unaffected.
    auto other = s->transform({}, 1, {p2p(1, 2, "deal", {7})}, {});
    EXPECT_EQ(other[0].msg.elems[0].value(), 7u);
}

TEST(Strategies, EquivocateAltersInitToOddReceivers) {
    auto s = strategy("equivocate");
    std::vector<Outgoing> out;
    for (int to = 0; to < 4; ++to) {
        Outgoing o = p2p(0, to, "m", {5});
        o.channel = Channel::acast;
        o.acast = AcastHeader{0, 0, BrachaPhase::init};
        out.push_back(o);
    }
    auto got = s->transform({}, 0, out, {});
    EXPECT_EQ(got[0].msg.elems[0].value(), 5u);
    EXPECT_EQ(got[1].msg.elems[0].value(), 6u);
    EXPECT_EQ(got[2].msg.elems[0].value(), 5u);
    EXPECT_EQ(got[3].msg.elems[0].value(), 6u);
}

TEST(Strategies, UnknownNameIsConfigInvalid) {
    EXPECT_THROW(strategy("byzantine-magic"), ConfigInvalid);
    EXPECT_THROW(make_scheduler("chaos", {}, 1, {}, 4), ConfigInvalid);
}

TEST(Schedulers, CorruptFirstPrefersCorruptReceiversThenSenders) {
    auto s = make_scheduler("corrupt-first", {}, 1, {3}, 4);
    std::deque<Envelope> q{envelope(0, 1, 0), envelope(3, 1, 1), envelope(1, 3, 2)};
    EXPECT_EQ(s->pick(q), 2u);
    q.pop_back();
    EXPECT_EQ(s->pick(q), 1u);
    q.pop_back();
    EXPECT_EQ(s->pick(q), 0u);
}

TEST(Schedulers, HonestLastDelaysVictimWhileOthersPending) {
    auto s = make_scheduler("honest-last", {{"victim", "2"}}, 1, {}, 4);
    std::deque<Envelope> q{envelope(0, 1, 0), envelope(0, 1, 1), envelope(0, 2, 2)};
    EXPECT_EQ(s->pick(q), 2u);
    std::deque<Envelope> only{envelope(0, 1, 0)};
    EXPECT_EQ(s->pick(only), 0u);
}

TEST(Schedulers, SeededRandomIsReproducible) {
    std::deque<Envelope> q;
    for (uint64_t k = 0; k < 10; ++k) q.push_back(envelope(0, 1, k));
    auto a = make_scheduler("seeded-random", {}, 9, {}, 4);
    auto b = make_scheduler("seeded-random", {}, 9, {}, 4);
    std::vector<size_t> pa, pb;
    for (int k = 0; k < 20; ++k) {
        pa.push_back(a->pick(q));
        pb.push_back(b->pick(q));
    }
    EXPECT_EQ(pa, pb);
    for (size_t v : pa) EXPECT_LT(v, q.size());
}

TEST(AdversaryView, SerializationDistinguishesContent) {
    AdversaryView a, b;
    Envelope e = envelope(0, 1, 0);
    e.msg = Payload{"deal", {Fe(4, kP)}, {2}};
    a.record(e);
    b.record(e);
    EXPECT_EQ(a.serialize(), b.serialize());
    e.msg.elems[0] = Fe(5, kP);
    b.record(e);
    EXPECT_NE(a.serialize(), b.serialize());
}

TEST(AdversaryView, RecordsExactlyTheTrafficToCorruptParties) {
    const FieldParams fp(kP, 4, 0);
    const SchemeParams sp{fp, 4, 1, 1, 1, 0};
    std::vector<std::unique_ptr<SyncVssParty>> parties;
    std::vector<SyncParty*> raw;
    for (int i = 0; i < 4; ++i) {
        parties.push_back(make_sync_party("7BGW", sp, i, {fp.elem(4)}, std::make_shared<CounterRng>(3, i)));
        raw.push_back(parties.back().get());
    }
    Adversary adv = Adversary::passive({2});
    RunResult run = run_sync(raw, adv, fp, 7);
    size_t to_corrupt = 0;
    for (const auto& ev : run.transcript.events) {
        if (ev.receiver == 2) ++to_corrupt;
    }
    ASSERT_FALSE(adv.view().received().empty());
    for (const auto& env : adv.view().received()) EXPECT_EQ(env.receiver, 2);
    EXPECT_EQ(adv.view().received().size(), to_corrupt);
}
