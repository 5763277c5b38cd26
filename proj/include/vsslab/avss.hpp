#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vsslab/codes.hpp"
#include "vsslab/engine.hpp"
#include "vsslab/protocol.hpp"

namespace vsslab {

// Asynchronous or hybrid sharing scheme party. Sharing and reconstruction are two engine runs
// over the same objects, separated by begin_reconstruction().
class AsyncVssParty : public AsyncParty {
public:
    AsyncVssParty(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng);

    std::vector<Outgoing> on_start() final;
    std::vector<Outgoing> on_sync_round() final;
    std::vector<Outgoing> on_sync_end(std::span<const Envelope> inbox) final;
    std::vector<Outgoing> on_deliver(const Envelope& env) final;
    bool terminated() const final { return terminated_; }

    void begin_reconstruction();
    const Outcome& outcome() const { return outcome_; }
    int id() const { return me_; }

protected:
    virtual std::vector<Outgoing> share_start() { return {}; }
    virtual std::vector<Outgoing> share_sync_round() { return {}; }
    virtual std::vector<Outgoing> share_sync_end(const Inbox&) { return {}; }
    virtual std::vector<Outgoing> share_deliver(const Envelope& env) = 0;
    // Default: send all shares to everyone, then online error correction per secret.
    virtual std::vector<Outgoing> rec_start();
    virtual std::vector<Outgoing> rec_deliver(const Envelope& env);
    virtual int rec_degree() const { return sp_.t; }

    void finish_sharing();
    void finish_reconstruction(std::optional<std::vector<Fe>> output);
    bool is_dealer() const { return me_ == sp_.dealer; }
    Fe alpha(int party) const { return sp_.fp.alpha(party); }
    uint64_t p() const { return sp_.fp.p(); }

    SchemeParams sp_;
    int me_;
    std::vector<Fe> secrets_;
    std::shared_ptr<RandomSource> rng_;
    Outcome outcome_;

private:
    bool reconstructing_ = false;
    bool terminated_ = false;
    std::vector<OecState> rec_oec_;
};

struct AsyncSchemeInfo {
    std::string name;
    bool hybrid;
    // Sharing needs n > factor * t.
    int resilience_factor;
    bool has_reconstruction;
    std::string contract;  // "type-II" or "wps"
};

const std::vector<AsyncSchemeInfo>& async_schemes();
const AsyncSchemeInfo* find_async_scheme(const std::string& name);

// Throws ConfigBound for (n, t, d, L) outside the scheme's bounds.
void check_async_bounds(const std::string& scheme, int n, int t, int d, int secrets);

// Number of auxiliary evaluation points the scheme needs for (n, t, L).
int async_betas_needed(const std::string& scheme, int n, int t, int secrets);

std::unique_ptr<AsyncVssParty> make_async_party(const std::string& scheme, const SchemeParams& sp, int id,
                                                std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng);

}  // namespace vsslab
