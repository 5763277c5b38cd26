#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "vsslab/field.hpp"

namespace vsslab {

// Identifies what a draw is used for. Pads carry the receiving peer.
struct DrawTag {
    int peer = -1;
};

class RandomSource {
public:
    virtual ~RandomSource() = default;
    uint64_t below(uint64_t bound, DrawTag tag = {}) { return draw(bound, tag); }
    Fe field(uint64_t p, DrawTag tag = {}) { return Fe(draw(p, tag), p); }

protected:
    virtual uint64_t draw(uint64_t bound, DrawTag tag) = 0;
};

// Counter-based generator: output k of stream (seed, stream) is a mix of the three.
class CounterRng final : public RandomSource {
public:
    explicit CounterRng(uint64_t seed, uint64_t stream = 0) : seed_(seed), stream_(stream) {}
    uint64_t next();

protected:
    uint64_t draw(uint64_t bound, DrawTag tag) override;

private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_ = 0;
};

uint64_t mix64(uint64_t x);

// Serves draws selected by a predicate from a fixed assignment, in order, and
// every other draw from a fallback generator. Used to enumerate randomness.
class EnumeratingSource final : public RandomSource {
public:
    using Selector = std::function<bool(DrawTag)>;
    EnumeratingSource(std::vector<uint64_t> assignment, Selector selected, uint64_t fallback_seed);

    size_t consumed() const { return cursor_; }

protected:
    uint64_t draw(uint64_t bound, DrawTag tag) override;

private:
    std::vector<uint64_t> assignment_;
    Selector selected_;
    CounterRng fallback_;
    size_t cursor_ = 0;
};

}  // namespace vsslab
