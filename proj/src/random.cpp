#include "vsslab/random.hpp"

#include <stdexcept>

namespace vsslab {

uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

uint64_t CounterRng::next() {
    return mix64(mix64(seed_) ^ mix64(stream_ * 0xD1B54A32D192ED03ull + 1) ^ (counter_++ * 0xA24BAED4963EE407ull));
}

uint64_t CounterRng::draw(uint64_t bound, DrawTag) {
    if (bound == 0) throw std::invalid_argument("empty range");
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        uint64_t v = next();
        if (v < limit) return v % bound;
    }
}

EnumeratingSource::EnumeratingSource(std::vector<uint64_t> assignment, Selector selected,
                                     uint64_t fallback_seed)
    : assignment_(std::move(assignment)), selected_(std::move(selected)), fallback_(fallback_seed) {}

uint64_t EnumeratingSource::draw(uint64_t bound, DrawTag tag) {
    if (!selected_(tag)) return fallback_.below(bound, tag);
    uint64_t v = cursor_ < assignment_.size() ? assignment_[cursor_] : 0;
    ++cursor_;
    return v % bound;
}

}  // namespace vsslab
