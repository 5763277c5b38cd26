#include "vsslab/protocol.hpp"

#include "vsslab/codes.hpp"

namespace vsslab {

const Payload* Inbox::find(int sender, std::string_view type, Channel kind) const {
    for (const auto& e : envs_) {
        if (e.sender == sender && e.kind == kind && e.msg.type == type) return &e.msg;
    }
    return nullptr;
}

Outgoing send_to(int from, int to, Payload msg) {
    Outgoing o;
    o.channel = Channel::p2p;
    o.from = from;
    o.to = to;
    o.msg = std::move(msg);
    return o;
}

Outgoing broadcast_msg(int from, Payload msg) {
    Outgoing o;
    o.channel = Channel::broadcast;
    o.from = from;
    o.msg = std::move(msg);
    return o;
}

Outgoing acast_msg(int from, Payload msg) {
    Outgoing o;
    o.channel = Channel::acast;
    o.from = from;
    o.msg = std::move(msg);
    return o;
}

void append_poly(Payload& msg, const UniPoly& q, int degree) {
    for (const auto& c : q.padded(degree + 1)) msg.elems.push_back(c);
}

UniPoly read_poly(const PayloadReader& reader, size_t offset, int degree, uint64_t p) {
    return UniPoly(p, reader.elems(offset, static_cast<size_t>(degree + 1)));
}

std::optional<UniPoly> robust_fit(std::span<const Point> points, int d) {
    if (static_cast<int>(points.size()) < d + 1) return std::nullopt;
    if (auto q = fit_exact(points, d)) return q;
    const int r = (static_cast<int>(points.size()) - d - 1) / 2;
    if (r < 1) return std::nullopt;
    return rs_decode_points(d, r, points);
}

}  // namespace vsslab
