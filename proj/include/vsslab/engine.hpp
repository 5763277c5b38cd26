#pragma once

#include <span>
#include <vector>

#include "vsslab/adversary.hpp"
#include "vsslab/message.hpp"

namespace vsslab {

// Party in a synchronous protocol. on_round(r, inbox) receives the messages of round r-1 and
// returns the messages of round r.
class SyncParty {
public:
    virtual ~SyncParty() = default;
    virtual std::vector<Outgoing> on_round(int round, std::span<const Envelope> inbox) = 0;
    virtual bool halted() const = 0;
};

// Party in an asynchronous or hybrid protocol.
class AsyncParty {
public:
    virtual ~AsyncParty() = default;
    virtual std::vector<Outgoing> on_start() { return {}; }
    // Hybrid model: messages of the synchronous round, then their delivery at the boundary.
    virtual std::vector<Outgoing> on_sync_round() { return {}; }
    virtual std::vector<Outgoing> on_sync_end(std::span<const Envelope>) { return {}; }
    // Point-to-point message or a completed broadcast (kind broadcast, sender = origin).
    virtual std::vector<Outgoing> on_deliver(const Envelope& env) = 0;
    virtual bool terminated() const = 0;
};

struct RunResult {
    Transcript transcript;
    Metrics metrics;
    bool all_honest_terminated = false;
};

RunResult run_sync(std::span<SyncParty* const> parties, Adversary& adversary, const FieldParams& fp, int max_rounds);

struct AsyncOptions {
    bool hybrid = false;
    uint64_t step_budget = 5'000'000;
    // Zero selects four times the pending-queue high-water mark.
    uint64_t fairness_bound = 0;
    bool record_transcript = true;
};

RunResult run_async(std::span<AsyncParty* const> parties, int t, Adversary& adversary, Scheduler& scheduler,
                    const FieldParams& fp, const AsyncOptions& options = {});

}  // namespace vsslab
