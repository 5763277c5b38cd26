#include "vsslab/engine.hpp"

#include <map>

#include "vsslab/errors.hpp"

namespace vsslab {

namespace {

const char* phase_name(BrachaPhase phase) {
    switch (phase) {
        case BrachaPhase::init: return "init";
        case BrachaPhase::echo: return "echo";
        case BrachaPhase::ready: return "ready";
    }
    return "?";
}

void check_origin(const std::vector<Outgoing>& out, int party) {
    for (const auto& o : out) {
        if (o.from != party) throw OriginViolation("party emitted a message under another identity");
    }
}

}  // namespace

RunResult run_sync(std::span<SyncParty* const> parties, Adversary& adversary, const FieldParams& fp, int max_rounds) {
    const int n = static_cast<int>(parties.size());
    RunResult result;
    std::vector<std::vector<Envelope>> inbox(static_cast<size_t>(n));
    uint64_t next_id = 0;
    uint64_t step = 0;
    auto honest_halted = [&] {
        for (int i = 0; i < n; ++i) {
            if (!adversary.is_corrupt(i) && !parties[static_cast<size_t>(i)]->halted()) return false;
        }
        return true;
    };
    for (int round = 1; !honest_halted(); ++round) {
        if (round > max_rounds + 1) throw RoundOverrun("honest parties still running after the round limit");
        std::vector<Outgoing> sent;
        for (int i = 0; i < n; ++i) {
            if (adversary.is_corrupt(i) || parties[static_cast<size_t>(i)]->halted()) continue;
            auto out = parties[static_cast<size_t>(i)]->on_round(round, inbox[static_cast<size_t>(i)]);
            check_origin(out, i);
            sent.insert(sent.end(), out.begin(), out.end());
        }
        // Rushing: corrupt parties act after honest messages of this round exist.
        for (int i = 0; i < n; ++i) {
            if (!adversary.is_corrupt(i)) continue;
            std::vector<Outgoing> prescription;
            if (!parties[static_cast<size_t>(i)]->halted()) {
                prescription = parties[static_cast<size_t>(i)]->on_round(round, inbox[static_cast<size_t>(i)]);
            }
            auto out = adversary.act(ActionContext{true, round, step}, i, std::move(prescription));
            sent.insert(sent.end(), out.begin(), out.end());
        }
        for (auto& box : inbox) box.clear();
        bool any_broadcast = false;
        for (auto& o : sent) {
            Envelope env;
            env.id = next_id++;
            env.kind = o.channel == Channel::p2p ? Channel::p2p : Channel::broadcast;
            env.sender = o.from;
            env.round = round;
            env.msg = std::move(o.msg);
            env.size_bits = payload_bits(env.msg, fp);
            if (env.kind == Channel::p2p) {
                if (o.to < 0 || o.to >= n) continue;
                env.receiver = o.to;
                result.metrics.p2p_bits += env.size_bits;
                result.metrics.p2p_elems += env.msg.elems.size();
                result.transcript.events.push_back(
                    {step++, round, "p2p", env.sender, env.receiver, env.msg.type, env.size_bits});
                if (adversary.is_corrupt(env.receiver)) adversary.view().record(env);
                inbox[static_cast<size_t>(env.receiver)].push_back(env);
            } else {
                any_broadcast = true;
                result.metrics.bc_bits += env.size_bits;
                result.metrics.bc_elems += env.msg.elems.size();
                for (int r = 0; r < n; ++r) {
                    Envelope copy = env;
                    copy.receiver = r;
                    result.transcript.events.push_back({step++, round, "bcast", copy.sender, r, copy.msg.type,
                                                        copy.size_bits});
                    if (adversary.is_corrupt(r)) adversary.view().record(copy);
                    inbox[static_cast<size_t>(r)].push_back(std::move(copy));
                }
            }
        }
        if (!sent.empty()) result.metrics.rounds_total = round;
        if (any_broadcast) ++result.metrics.rounds_with_broadcast;
    }
    result.all_honest_terminated = true;
    return result;
}

namespace {

// Bracha reliable broadcast state of one party for one (origin, seq) instance.
struct BrachaInstance {
    bool echoed = false;
    bool readied = false;
    bool delivered = false;
    PartySet echo_from;
    PartySet ready_from;
    std::vector<std::pair<Payload, PartySet>> echoes;
    std::vector<std::pair<Payload, PartySet>> readies;
};

PartySet& tally(std::vector<std::pair<Payload, PartySet>>& table, const Payload& msg) {
    for (auto& [m, s] : table) {
        if (m == msg) return s;
    }
    table.emplace_back(msg, PartySet{});
    return table.back().second;
}

class AsyncEngine {
public:
    AsyncEngine(std::span<AsyncParty* const> parties, int t, Adversary& adversary, Scheduler& scheduler,
                const FieldParams& fp, const AsyncOptions& options)
        : parties_(parties), n_(static_cast<int>(parties.size())), t_(t), adversary_(adversary),
          scheduler_(scheduler), fp_(fp), options_(options), bracha_(static_cast<size_t>(n_)),
          next_seq_(static_cast<size_t>(n_), 0) {}

    RunResult run() {
        if (options_.hybrid) {
            run_sync_round();
        } else {
            for (int i = 0; i < n_; ++i) emit(i, party(i).on_start());
        }
        while (!honest_terminated() && !pending_.empty()) {
            if (step_ >= options_.step_budget) throw Livelock("step budget exhausted before termination");
            deliver_one();
        }
        result_.all_honest_terminated = honest_terminated();
        result_.metrics.async_steps = step_;
        result_.metrics.fairness_bound = current_bound();
        return std::move(result_);
    }

private:
    AsyncParty& party(int i) { return *parties_[static_cast<size_t>(i)]; }

    bool honest_terminated() {
        for (int i = 0; i < n_; ++i) {
            if (!adversary_.is_corrupt(i) && !party(i).terminated()) return false;
        }
        return true;
    }

    uint64_t current_bound() const {
        if (options_.fairness_bound > 0) return options_.fairness_bound;
        return 4 * std::max<uint64_t>(high_water_, 1);
    }

    void record(const Envelope& env, const char* kind, const std::string& type) {
        if (!options_.record_transcript) return;
        result_.transcript.events.push_back(
            {step_, env.round, kind, env.sender, env.receiver, type, env.size_bits});
    }

    void run_sync_round() {
        std::vector<Outgoing> sent;
        for (int i = 0; i < n_; ++i) {
            auto out = party(i).on_sync_round();
            if (adversary_.is_corrupt(i)) {
                out = adversary_.act(ActionContext{true, 1, 0}, i, std::move(out));
            } else {
                check_origin(out, i);
            }
            sent.insert(sent.end(), out.begin(), out.end());
        }
        std::vector<std::vector<Envelope>> inbox(static_cast<size_t>(n_));
        for (auto& o : sent) {
            if (o.channel != Channel::p2p || o.to < 0 || o.to >= n_) continue;
            Envelope env;
            env.id = next_id_++;
            env.kind = Channel::p2p;
            env.sender = o.from;
            env.receiver = o.to;
            env.round = 1;
            env.msg = std::move(o.msg);
            env.size_bits = payload_bits(env.msg, fp_);
            result_.metrics.p2p_bits += env.size_bits;
            result_.metrics.p2p_elems += env.msg.elems.size();
            record(env, "p2p", env.msg.type);
            if (adversary_.is_corrupt(env.receiver)) adversary_.view().record(env);
            inbox[static_cast<size_t>(env.receiver)].push_back(std::move(env));
        }
        if (!sent.empty()) result_.metrics.rounds_total = 1;
        for (int i = 0; i < n_; ++i) emit(i, party(i).on_sync_end(inbox[static_cast<size_t>(i)]));
    }

    // Expands broadcast requests into Bracha init messages, applies the strategy for corrupt
    // parties and queues the result.
    void emit(int from, std::vector<Outgoing> out) {
        std::vector<Outgoing> expanded;
        for (auto& o : out) {
            if (o.from != from) throw OriginViolation("party emitted a message under another identity");
            if (o.channel == Channel::acast && !o.acast) {
                const int seq = next_seq_[static_cast<size_t>(from)]++;
                const uint64_t bits = payload_bits(o.msg, fp_);
                result_.metrics.bc_bits += bits;
                result_.metrics.bc_elems += o.msg.elems.size();
                for (int r = 0; r < n_; ++r) {
                    Outgoing init = o;
                    init.to = r;
                    init.acast = AcastHeader{from, seq, BrachaPhase::init};
                    expanded.push_back(std::move(init));
                }
            } else if (o.channel == Channel::broadcast) {
                throw std::logic_error("asynchronous parties must broadcast through acast");
            } else {
                expanded.push_back(std::move(o));
            }
        }
        if (adversary_.is_corrupt(from)) {
            expanded = adversary_.act(ActionContext{false, 0, step_}, from, std::move(expanded));
        }
        for (auto& o : expanded) enqueue(std::move(o));
    }

    void enqueue(Outgoing o) {
        if (o.to < 0 || o.to >= n_) return;
        Envelope env;
        env.id = next_id_++;
        env.kind = o.acast ? Channel::acast : Channel::p2p;
        env.sender = o.from;
        env.receiver = o.to;
        env.sent_step = step_;
        env.msg = std::move(o.msg);
        env.acast = o.acast;
        env.size_bits = payload_bits(env.msg, fp_);
        if (env.kind == Channel::p2p) {
            result_.metrics.p2p_bits += env.size_bits;
            result_.metrics.p2p_elems += env.msg.elems.size();
        } else {
            result_.metrics.acast_internal_bits += env.size_bits;
        }
        pending_.push_back(std::move(env));
        high_water_ = std::max<uint64_t>(high_water_, pending_.size());
    }

    void deliver_one() {
        const uint64_t bound = current_bound();
        const uint64_t oldest_age = step_ - pending_.front().sent_step;
        size_t index;
        if (oldest_age + pending_.size() >= bound) {
            index = 0;
            ++result_.metrics.fairness_overrides;
        } else {
            index = scheduler_.pick(pending_);
            if (index >= pending_.size()) index = 0;
        }
        Envelope env = std::move(pending_[index]);
        pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(index));
        result_.metrics.max_pending_age = std::max(result_.metrics.max_pending_age, step_ - env.sent_step);
        ++step_;
        const int r = env.receiver;
        if (adversary_.is_corrupt(r)) adversary_.view().record(env);
        if (env.kind == Channel::p2p) {
            record(env, "p2p", env.msg.type);
            emit(r, party(r).on_deliver(env));
            return;
        }
        if (options_.record_transcript) {
            record(env, "acast", std::string(phase_name(env.acast->phase)) + ":" + env.msg.type);
        }
        handle_bracha(env);
    }

    void send_phase(int from, const AcastHeader& head, BrachaPhase phase, const Payload& msg) {
        std::vector<Outgoing> out;
        for (int r = 0; r < n_; ++r) {
            Outgoing o;
            o.channel = Channel::acast;
            o.from = from;
            o.to = r;
            o.msg = msg;
            o.acast = AcastHeader{head.origin, head.seq, phase};
            out.push_back(std::move(o));
        }
        if (adversary_.is_corrupt(from)) out = adversary_.act(ActionContext{false, 0, step_}, from, std::move(out));
        for (auto& o : out) enqueue(std::move(o));
    }

    void handle_bracha(const Envelope& env) {
        const int me = env.receiver;
        const AcastHeader& head = *env.acast;
        if (head.origin < 0 || head.origin >= n_) return;
        auto& inst = bracha_[static_cast<size_t>(me)][{head.origin, head.seq}];
        const int echo_threshold = (n_ + t_ + 2) / 2;
        switch (head.phase) {
            case BrachaPhase::init:
                if (env.sender != head.origin || inst.echoed) return;
                inst.echoed = true;
                send_phase(me, head, BrachaPhase::echo, env.msg);
                return;
            case BrachaPhase::echo: {
                if (inst.echo_from.contains(env.sender)) return;
                inst.echo_from.insert(env.sender);
                PartySet& s = tally(inst.echoes, env.msg);
                s.insert(env.sender);
                if (!inst.readied && s.size() >= echo_threshold) {
                    inst.readied = true;
                    send_phase(me, head, BrachaPhase::ready, env.msg);
                }
                return;
            }
            case BrachaPhase::ready: {
                if (inst.ready_from.contains(env.sender)) return;
                inst.ready_from.insert(env.sender);
                PartySet& s = tally(inst.readies, env.msg);
                s.insert(env.sender);
                if (!inst.readied && s.size() >= t_ + 1) {
                    inst.readied = true;
                    send_phase(me, head, BrachaPhase::ready, env.msg);
                }
                if (!inst.delivered && s.size() >= 2 * t_ + 1) {
                    inst.delivered = true;
                    Envelope out;
                    out.id = env.id;
                    out.kind = Channel::broadcast;
                    out.sender = head.origin;
                    out.receiver = me;
                    out.msg = env.msg;
                    out.size_bits = env.size_bits;
                    out.acast = AcastHeader{head.origin, head.seq, BrachaPhase::ready};
                    record(out, "bcast", env.msg.type);
                    emit(me, party(me).on_deliver(out));
                }
                return;
            }
        }
    }

    std::span<AsyncParty* const> parties_;
    int n_;
    int t_;
    Adversary& adversary_;
    Scheduler& scheduler_;
    const FieldParams& fp_;
    AsyncOptions options_;
    RunResult result_;
    std::deque<Envelope> pending_;
    std::vector<std::map<std::pair<int, int>, BrachaInstance>> bracha_;
    std::vector<int> next_seq_;
    uint64_t next_id_ = 0;
    uint64_t step_ = 0;
    uint64_t high_water_ = 0;
};

}  // namespace

RunResult run_async(std::span<AsyncParty* const> parties, int t, Adversary& adversary, Scheduler& scheduler,
                    const FieldParams& fp, const AsyncOptions& options) {
    AsyncEngine engine(parties, t, adversary, scheduler, fp, options);
    return engine.run();
}

}  // namespace vsslab
