#include "vsslab/adversary.hpp"

#include <charconv>

#include "vsslab/errors.hpp"

namespace vsslab {

namespace {

const char* channel_code(Channel c) {
    switch (c) {
        case Channel::p2p: return "p";
        case Channel::broadcast: return "b";
        case Channel::acast: return "a";
    }
    return "?";
}

void append_num(std::string& out, int64_t v) {
    char buf[24];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, end);
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int param_int(const ParamMap& params, const std::string& key, int fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw ConfigInvalid("strategy parameter " + key + " is not an integer");
    }
}

class Passive final : public Strategy {
public:
    std::string name() const override { return "passive"; }
    std::vector<Outgoing> transform(const ActionContext&, int, std::vector<Outgoing> out,
                                    const AdversaryView&) override {
        return out;
    }
};

class Crash final : public Strategy {
public:
    explicit Crash(int trigger) : trigger_(trigger) {}
    std::string name() const override { return "crash"; }
    std::vector<Outgoing> transform(const ActionContext& ctx, int, std::vector<Outgoing> out,
                                    const AdversaryView&) override {
        const uint64_t now = ctx.sync ? static_cast<uint64_t>(ctx.round) : ctx.step;
        if (now >= static_cast<uint64_t>(trigger_)) return {};
        return out;
    }

private:
    int trigger_;
};

// Replaces field elements of selected messages with seeded random values.
class Garble final : public Strategy {
public:
    Garble(std::string name, uint64_t seed, uint64_t p, std::function<bool(const Outgoing&)> selected)
        : name_(std::move(name)), rng_(seed, 0x6A7B), p_(p), selected_(std::move(selected)) {}
    std::string name() const override { return name_; }
    std::vector<Outgoing> transform(const ActionContext&, int, std::vector<Outgoing> out,
                                    const AdversaryView&) override {
        for (auto& o : out) {
            if (!selected_(o)) continue;
            for (auto& e : o.msg.elems) e = rng_.field(p_);
        }
        return out;
    }

private:
    std::string name_;
    CounterRng rng_;
    uint64_t p_;
    std::function<bool(const Outgoing&)> selected_;
};

class PadMismatch final : public Strategy {
public:
    explicit PadMismatch(uint64_t p) : p_(p) {}
    std::string name() const override { return "pad-mismatch"; }
    std::vector<Outgoing> transform(const ActionContext&, int, std::vector<Outgoing> out,
                                    const AdversaryView&) override {
        for (auto& o : out) {
            if (!ends_with(o.msg.type, "pad-register")) continue;
            for (auto& e : o.msg.elems) e += Fe(1, p_);
        }
        return out;
    }

private:
    uint64_t p_;
};

// A corrupt dealer hands the shadow dealer's dealing to a subset of honest parties.
class InconsistentDealer final : public Strategy {
public:
    InconsistentDealer(const StrategyEnv& env, int split) : env_(env) {
        std::vector<int> honest = (PartySet::all(env.n) - env.corrupt).members();
        if (split < 0) split = static_cast<int>((honest.size() + 1) / 2);
        for (size_t k = honest.size() - std::min(honest.size(), static_cast<size_t>(split)); k < honest.size(); ++k) {
            targets_.insert(honest[k]);
        }
    }
    std::string name() const override { return "inconsistent-dealer"; }
    std::vector<Outgoing> transform(const ActionContext&, int party, std::vector<Outgoing> out,
                                    const AdversaryView&) override {
        if (party != env_.dealer || !env_.shadow_deal) return out;
        bool dealing = false;
        for (const auto& o : out) dealing = dealing || ends_with(o.msg.type, "deal");
        if (!dealing) return out;
        std::vector<Outgoing> shadow = env_.shadow_deal();
        for (auto& o : out) {
            if (!ends_with(o.msg.type, "deal") || !targets_.contains(o.to)) continue;
            for (const auto& s : shadow) {
                if (s.msg.type == o.msg.type && s.to == o.to) o.msg = s.msg;
            }
        }
        return out;
    }

private:
    StrategyEnv env_;
    PartySet targets_;
};

// Sends a different broadcast payload to odd-numbered receivers.
class Equivocate final : public Strategy {
public:
    explicit Equivocate(uint64_t p) : p_(p) {}
    std::string name() const override { return "equivocate"; }
    std::vector<Outgoing> transform(const ActionContext&, int, std::vector<Outgoing> out,
                                    const AdversaryView&) override {
        for (auto& o : out) {
            if (!o.acast || o.acast->phase != BrachaPhase::init || o.to % 2 == 0) continue;
            if (o.msg.elems.empty()) {
                o.msg.ids.push_back(o.to);
            } else {
                for (auto& e : o.msg.elems) e += Fe(1, p_);
            }
        }
        return out;
    }

private:
    uint64_t p_;
};

class Fifo final : public Scheduler {
public:
    std::string name() const override { return "fifo"; }
    size_t pick(const std::deque<Envelope>&) override { return 0; }
};

class Lifo final : public Scheduler {
public:
    std::string name() const override { return "lifo"; }
    size_t pick(const std::deque<Envelope>& pending) override { return pending.size() - 1; }
};

class CorruptFirst final : public Scheduler {
public:
    explicit CorruptFirst(PartySet corrupt) : corrupt_(corrupt) {}
    std::string name() const override { return "corrupt-first"; }
    size_t pick(const std::deque<Envelope>& pending) override {
        for (size_t k = 0; k < pending.size(); ++k) {
            if (corrupt_.contains(pending[k].receiver)) return k;
        }
        for (size_t k = 0; k < pending.size(); ++k) {
            if (corrupt_.contains(pending[k].sender)) return k;
        }
        return 0;
    }

private:
    PartySet corrupt_;
};

class HonestLast final : public Scheduler {
public:
    explicit HonestLast(int victim) : victim_(victim) {}
    std::string name() const override { return "honest-last"; }
    size_t pick(const std::deque<Envelope>& pending) override {
        for (size_t k = 0; k < pending.size(); ++k) {
            if (pending[k].receiver != victim_) return k;
        }
        return 0;
    }

private:
    int victim_;
};

class SeededRandom final : public Scheduler {
public:
    explicit SeededRandom(uint64_t seed) : rng_(seed, 0x5C4E) {}
    std::string name() const override { return "seeded-random"; }
    size_t pick(const std::deque<Envelope>& pending) override { return rng_.below(pending.size()); }

private:
    CounterRng rng_;
};

}  // namespace

void AdversaryView::record(const Envelope& env) { received_.push_back(env); }

std::string AdversaryView::serialize() const {
    std::string out;
    out.reserve(64 * received_.size());
    for (const auto& in : inputs_) out.append("in:").append(in).push_back('\n');
    for (const auto& e : received_) {
        out += channel_code(e.kind);
        append_num(out, e.sender);
        out.push_back('>');
        append_num(out, e.receiver);
        out.push_back(':');
        out += e.msg.type;
        if (e.acast) {
            out.push_back('@');
            append_num(out, e.acast->origin);
            out.push_back('.');
            append_num(out, e.acast->seq);
            out.push_back('.');
            append_num(out, static_cast<int>(e.acast->phase));
        }
        out.push_back('[');
        for (const auto& v : e.msg.elems) {
            append_num(out, static_cast<int64_t>(v.value()));
            out.push_back(',');
        }
        out.append("](");
        for (int id : e.msg.ids) {
            append_num(out, id);
            out.push_back(',');
        }
        out.append(")\n");
    }
    return out;
}

std::vector<std::string> strategy_names() {
    return {"passive", "crash", "garble", "wrong-share-at-rec", "pad-mismatch", "inconsistent-dealer", "equivocate"};
}

std::unique_ptr<Strategy> make_strategy(const std::string& name, const ParamMap& params, uint64_t seed,
                                        const StrategyEnv& env) {
    if (name == "passive") return std::make_unique<Passive>();
    if (name == "crash") return std::make_unique<Crash>(param_int(params, "from", 0));
    if (name == "garble") {
        return std::make_unique<Garble>("garble", seed, env.p, [](const Outgoing&) { return true; });
    }
    if (name == "wrong-share-at-rec") {
        return std::make_unique<Garble>("wrong-share-at-rec", seed, env.p,
                                        [](const Outgoing& o) { return starts_with(o.msg.type, "rec"); });
    }
    if (name == "pad-mismatch") return std::make_unique<PadMismatch>(env.p);
    if (name == "inconsistent-dealer") return std::make_unique<InconsistentDealer>(env, param_int(params, "split", -1));
    if (name == "equivocate") return std::make_unique<Equivocate>(env.p);
    throw ConfigInvalid("unknown adversary strategy: " + name);
}

Adversary::Adversary(PartySet corrupt, std::unique_ptr<Strategy> strategy)
    : corrupt_(corrupt), strategy_(std::move(strategy)) {}

Adversary Adversary::passive(PartySet corrupt) { return Adversary(corrupt, std::make_unique<Passive>()); }

std::vector<Outgoing> Adversary::act(const ActionContext& ctx, int party, std::vector<Outgoing> prescription) {
    auto out = strategy_->transform(ctx, party, std::move(prescription), view_);
    for (const auto& o : out) {
        if (o.from != party || !corrupt_.contains(o.from)) {
            throw OriginViolation("strategy emitted a message with a foreign sender");
        }
    }
    return out;
}

std::vector<std::string> scheduler_names() { return {"fifo", "lifo", "corrupt-first", "honest-last", "seeded-random"}; }

std::unique_ptr<Scheduler> make_scheduler(const std::string& name, const ParamMap& params, uint64_t seed,
                                          PartySet corrupt, int n) {
    if (name == "fifo") return std::make_unique<Fifo>();
    if (name == "lifo") return std::make_unique<Lifo>();
    if (name == "corrupt-first") return std::make_unique<CorruptFirst>(corrupt);
    if (name == "honest-last") {
        int victim = param_int(params, "victim", 0) - 1;
        if (victim < 0) {
            auto honest = (PartySet::all(n) - corrupt).members();
            victim = honest.empty() ? 0 : honest.back();
        }
        return std::make_unique<HonestLast>(victim);
    }
    if (name == "seeded-random") return std::make_unique<SeededRandom>(seed);
    throw ConfigInvalid("unknown scheduler: " + name);
}

}  // namespace vsslab
