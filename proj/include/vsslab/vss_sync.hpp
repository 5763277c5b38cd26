#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vsslab/engine.hpp"
#include "vsslab/protocol.hpp"

namespace vsslab {

// Synchronous sharing scheme party. The same object runs sharing and then, after
// begin_reconstruction(), reconstruction as a second engine run.
class SyncVssParty : public SyncParty {
public:
    SyncVssParty(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng);

    std::vector<Outgoing> on_round(int round, std::span<const Envelope> inbox) final;
    bool halted() const final { return halted_; }
    void begin_reconstruction();
    const Outcome& outcome() const { return outcome_; }
    int id() const { return me_; }

protected:
    virtual std::vector<Outgoing> share_round(int round, const Inbox& in) = 0;
    // Default: every party sends its share to all, then error-corrects with degree t and t errors.
    virtual std::vector<Outgoing> rec_round(int round, const Inbox& in);

    void finish_sharing();
    void finish_reconstruction(std::optional<std::vector<Fe>> output);
    bool is_dealer() const { return me_ == sp_.dealer; }
    Fe alpha(int party) const { return sp_.fp.alpha(party); }
    uint64_t p() const { return sp_.fp.p(); }
    PayloadReader reader(const Payload* msg) const { return PayloadReader(msg, sp_.fp); }

    SchemeParams sp_;
    int me_;
    std::vector<Fe> secrets_;
    std::shared_ptr<RandomSource> rng_;
    Outcome outcome_;

private:
    bool reconstructing_ = false;
    bool halted_ = false;
};

struct SyncSchemeInfo {
    std::string name;
    int share_rounds;
    int share_broadcast_rounds;
    int rec_rounds;
    // Resilience: n must exceed factor * t.
    int resilience_factor;
    std::string contract;  // "type-II", "type-I", "wss", "replicated", "one-shot"
};

const std::vector<SyncSchemeInfo>& sync_schemes();
const SyncSchemeInfo* find_sync_scheme(const std::string& name);

// Throws ConfigBound when (n, t) is outside the scheme's resilience.
void check_sync_bounds(const std::string& scheme, int n, int t);

std::unique_ptr<SyncVssParty> make_sync_party(const std::string& scheme, const SchemeParams& sp, int id,
                                              std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng);

}  // namespace vsslab
