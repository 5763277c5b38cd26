#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsslab/field.hpp"
#include "vsslab/graphs.hpp"
#include "vsslab/message.hpp"
#include "vsslab/poly.hpp"
#include "vsslab/random.hpp"

namespace vsslab {

// Public parameters of one sharing instance.
struct SchemeParams {
    FieldParams fp;
    int n = 0;
    int t = 0;
    int d = 0;        // sharing degree (PCR), equal to t elsewhere
    int secrets = 1;  // number of secrets (CHP)
    int dealer = 0;
};

// Values revealed before the dispute round of a sharing (tentative share and sub-shares).
struct EarlyKnowledge {
    std::optional<Fe> share;
    std::vector<std::pair<int, Fe>> subshares;
};

// What one party holds after sharing and reconstruction.
struct Outcome {
    bool sharing_done = false;
    bool discarded = false;
    // One entry per secret; nullopt when the party holds no share.
    std::vector<std::optional<Fe>> shares;
    // Replicated pieces (indexed by subset) for replicated sharing.
    std::vector<std::optional<Fe>> pieces;
    bool rec_done = false;
    bool rec_participant = true;
    // Reconstructed secrets; nullopt is the failure symbol.
    std::optional<std::vector<Fe>> output;
    std::optional<EarlyKnowledge> early;
    PartySet accepted_set;
};

// Lookup over the messages a party received.
class Inbox {
public:
    explicit Inbox(std::span<const Envelope> envs) : envs_(envs) {}
    const Payload* find(int sender, std::string_view type, Channel kind) const;
    const Payload* p2p(int sender, std::string_view type) const { return find(sender, type, Channel::p2p); }
    const Payload* bcast(int sender, std::string_view type) const { return find(sender, type, Channel::broadcast); }

private:
    std::span<const Envelope> envs_;
};

Outgoing send_to(int from, int to, Payload msg);
Outgoing broadcast_msg(int from, Payload msg);
Outgoing acast_msg(int from, Payload msg);

void append_poly(Payload& msg, const UniPoly& q, int degree);
UniPoly read_poly(const PayloadReader& reader, size_t offset, int degree, uint64_t p);

// Exact fit of degree <= d, else error correction with the largest admissible error count.
std::optional<UniPoly> robust_fit(std::span<const Point> points, int d);

}  // namespace vsslab
