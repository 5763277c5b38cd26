#include "vsslab/message.hpp"

namespace vsslab {

uint64_t payload_bits(const Payload& msg, const FieldParams& fp) {
    return msg.elems.size() * fp.elem_bits() + msg.ids.size() * fp.id_bits();
}

std::string Transcript::serialize() const {
    std::string out;
    for (const auto& e : events) {
        out += std::to_string(e.step) + "|" + std::to_string(e.round) + "|" + e.kind + "|" +
               std::to_string(e.sender + 1) + "|" + std::to_string(e.receiver + 1) + "|" + e.msgtype + "|" +
               std::to_string(e.bits) + "\n";
    }
    return out;
}

Fe PayloadReader::elem(size_t index) const {
    if (msg_ == nullptr || index >= msg_->elems.size()) return fp_.zero();
    return fp_.elem(msg_->elems[index].value());
}

int PayloadReader::id(size_t index, int fallback) const {
    if (msg_ == nullptr || index >= msg_->ids.size()) return fallback;
    return msg_->ids[index];
}

std::vector<Fe> PayloadReader::elems(size_t offset, size_t count) const {
    std::vector<Fe> out;
    out.reserve(count);
    for (size_t k = 0; k < count; ++k) out.push_back(elem(offset + k));
    return out;
}

}  // namespace vsslab
