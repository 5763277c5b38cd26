#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vsslab/field.hpp"

namespace vsslab {

enum class Channel { p2p, broadcast, acast };
enum class BrachaPhase { init, echo, ready };

struct AcastHeader {
    int origin = -1;
    int seq = 0;
    BrachaPhase phase = BrachaPhase::init;
    friend bool operator==(const AcastHeader&, const AcastHeader&) = default;
};

// Typed protocol message: a type tag, field elements and party ids or flags.
struct Payload {
    std::string type;
    std::vector<Fe> elems;
    std::vector<int> ids;
    friend bool operator==(const Payload&, const Payload&) = default;
};

// Message as emitted by a party. `to` is ignored for broadcast and acast requests.
struct Outgoing {
    Channel channel = Channel::p2p;
    int from = -1;
    int to = -1;
    Payload msg;
    std::optional<AcastHeader> acast;
};

struct Envelope {
    uint64_t id = 0;
    Channel kind = Channel::p2p;
    int sender = -1;
    int receiver = -1;
    int round = 0;
    uint64_t sent_step = 0;
    Payload msg;
    uint64_t size_bits = 0;
    std::optional<AcastHeader> acast;
};

uint64_t payload_bits(const Payload& msg, const FieldParams& fp);

struct Metrics {
    uint64_t p2p_bits = 0;
    uint64_t bc_bits = 0;
    uint64_t p2p_elems = 0;
    uint64_t bc_elems = 0;
    uint64_t acast_internal_bits = 0;
    int rounds_total = 0;
    int rounds_with_broadcast = 0;
    uint64_t async_steps = 0;
    uint64_t max_pending_age = 0;
    uint64_t fairness_bound = 0;
    uint64_t fairness_overrides = 0;
};

struct TranscriptEvent {
    uint64_t step = 0;
    int round = 0;
    std::string kind;
    int sender = -1;
    int receiver = -1;
    std::string msgtype;
    uint64_t bits = 0;
    friend bool operator==(const TranscriptEvent&, const TranscriptEvent&) = default;
};

struct Transcript {
    std::vector<TranscriptEvent> events;
    // Line format: step|round|kind|sender|receiver|msgtype|bits, parties numbered from 1.
    std::string serialize() const;
    friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Reads fixed-layout message fields with zero substitution for missing or short data.
class PayloadReader {
public:
    PayloadReader(const Payload* msg, const FieldParams& fp) : msg_(msg), fp_(fp) {}
    bool present() const { return msg_ != nullptr; }
    Fe elem(size_t index) const;
    int id(size_t index, int fallback = -1) const;
    size_t elem_count() const { return msg_ ? msg_->elems.size() : 0; }
    size_t id_count() const { return msg_ ? msg_->ids.size() : 0; }
    std::vector<Fe> elems(size_t offset, size_t count) const;

private:
    const Payload* msg_;
    const FieldParams& fp_;
};

}  // namespace vsslab
