#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vsslab/graphs.hpp"
#include "vsslab/message.hpp"
#include "vsslab/random.hpp"

namespace vsslab {

using ParamMap = std::map<std::string, std::string>;

// Everything the corrupt parties have seen: their inputs and every envelope delivered to them.
class AdversaryView {
public:
    void record_input(const std::string& note) { inputs_.push_back(note); }
    void record(const Envelope& env);
    const std::vector<Envelope>& received() const { return received_; }
    // Canonical text of the view; equal views serialize identically.
    std::string serialize() const;

private:
    std::vector<std::string> inputs_;
    std::vector<Envelope> received_;
};

struct ActionContext {
    bool sync = true;
    int round = 0;
    uint64_t step = 0;
};

class Strategy {
public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    // Maps the honest prescription of a corrupt party to what it actually sends.
    virtual std::vector<Outgoing> transform(const ActionContext& ctx, int party, std::vector<Outgoing> prescription,
                                            const AdversaryView& view) = 0;
};

// Dealing messages of a second, independently seeded dealer instance.
using ShadowDeal = std::function<std::vector<Outgoing>()>;

struct StrategyEnv {
    int n = 0;
    int dealer = 0;
    PartySet corrupt;
    uint64_t p = 2;
    ShadowDeal shadow_deal;
};

std::vector<std::string> strategy_names();
std::unique_ptr<Strategy> make_strategy(const std::string& name, const ParamMap& params, uint64_t seed,
                                        const StrategyEnv& env);

class Adversary {
public:
    Adversary(PartySet corrupt, std::unique_ptr<Strategy> strategy);
    static Adversary passive(PartySet corrupt = {});

    bool is_corrupt(int party) const { return corrupt_.contains(party); }
    const PartySet& corrupt() const { return corrupt_; }
    AdversaryView& view() { return view_; }
    const AdversaryView& view() const { return view_; }
    const Strategy& strategy() const { return *strategy_; }

    // Applies the strategy and enforces that every output originates from `party`.
    std::vector<Outgoing> act(const ActionContext& ctx, int party, std::vector<Outgoing> prescription);

private:
    PartySet corrupt_;
    std::unique_ptr<Strategy> strategy_;
    AdversaryView view_;
};

class Scheduler {
public:
    virtual ~Scheduler() = default;
    virtual std::string name() const = 0;
    // Index into the pending queue, which is ordered oldest first and non-empty.
    virtual size_t pick(const std::deque<Envelope>& pending) = 0;
};

std::vector<std::string> scheduler_names();
// Params: "victim" (party index from 1) for honest-last.
std::unique_ptr<Scheduler> make_scheduler(const std::string& name, const ParamMap& params, uint64_t seed,
                                          PartySet corrupt, int n);

}  // namespace vsslab
