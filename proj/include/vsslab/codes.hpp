#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vsslab/field.hpp"
#include "vsslab/graphs.hpp"
#include "vsslab/poly.hpp"

namespace vsslab {

struct ShareEntry {
    int party;
    Fe value;
};

// Claimed shares keyed by party, in the order received.
class ShareSet {
public:
    // Returns false when the party already has an entry.
    bool insert(int party, const Fe& value);
    bool contains(int party) const;
    size_t size() const { return entries_.size(); }
    const std::vector<ShareEntry>& entries() const { return entries_; }
    std::vector<Point> points(const FieldParams& fp) const;

private:
    std::vector<ShareEntry> entries_;
};

// Berlekamp-Welch decoding. Returns the degree-<=d polynomial within distance r of the points,
// or nullopt when |points| < d + 2r + 1 or none exists.
std::optional<UniPoly> rs_decode_points(int d, int r, std::span<const Point> points);
std::optional<UniPoly> rs_decode(int d, int r, const ShareSet& shares, const FieldParams& fp);

// Online error correction over a fixed source set.
class OecState {
public:
    OecState(PartySet sources, int d, int t, FieldParams fp);

    void feed(int party, const Fe& share);
    bool done() const { return result_.has_value(); }
    const std::optional<UniPoly>& result() const { return result_; }
    const ShareSet& fed() const { return fed_; }
    int degree() const { return d_; }

private:
    void try_decode();

    PartySet sources_;
    int d_;
    int t_;
    FieldParams fp_;
    ShareSet fed_;
    std::optional<UniPoly> result_;
};

OecState oec_feed(OecState state, int party, const Fe& share);

}  // namespace vsslab
