#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace vsslab {

// Set of party indices below 64.
class PartySet {
public:
    PartySet() = default;
    PartySet(std::initializer_list<int> parties);
    static PartySet all(int n);
    static PartySet from_bits(uint64_t bits) { PartySet s; s.bits_ = bits; return s; }

    void insert(int party) { bits_ |= bit(party); }
    void erase(int party) { bits_ &= ~bit(party); }
    bool contains(int party) const { return party >= 0 && party < 64 && (bits_ & bit(party)) != 0; }
    int size() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    uint64_t bits() const { return bits_; }
    bool subset_of(const PartySet& other) const { return (bits_ & ~other.bits_) == 0; }
    std::vector<int> members() const;
    std::string to_string() const;

    friend PartySet operator&(PartySet a, PartySet b) { return from_bits(a.bits_ & b.bits_); }
    friend PartySet operator|(PartySet a, PartySet b) { return from_bits(a.bits_ | b.bits_); }
    friend PartySet operator-(PartySet a, PartySet b) { return from_bits(a.bits_ & ~b.bits_); }
    friend bool operator==(PartySet a, PartySet b) = default;

private:
    static uint64_t bit(int party) { return uint64_t{1} << party; }
    uint64_t bits_ = 0;
};

// Undirected graph on parties 0..n-1; every node is adjacent to itself.
class ConsistencyGraph {
public:
    explicit ConsistencyGraph(int n);

    int n() const { return n_; }
    // Returns true when the edge is new.
    bool add_edge(int a, int b);
    bool has_edge(int a, int b) const { return adj_.at(static_cast<size_t>(a)).contains(b); }
    PartySet neighbors(int a) const { return adj_.at(static_cast<size_t>(a)); }
    int edge_count() const { return edges_; }

private:
    int n_;
    int edges_ = 0;
    std::vector<PartySet> adj_;
};

struct Star {
    PartySet C;
    PartySet D;
    friend bool operator==(const Star&, const Star&) = default;
};

struct EFPair {
    PartySet E;
    PartySet F;
    Star star;
};

bool is_valid_star(const ConsistencyGraph& g, const Star& star, int n, int t);

// Maximal matching in the complement graph, then removal of matched nodes and triangle heads.
std::optional<Star> find_star(const ConsistencyGraph& g, int n, int t);

EFPair expand_ef(const ConsistencyGraph& g, const Star& star, int d, int t);

// Checks that every member of F has 2t+1 neighbours in C and every member of E has d+t+1 in F.
bool ef_conditions_hold(const ConsistencyGraph& g, const EFPair& ef, int d, int t);

// Iteratively removes nodes of `within` with fewer than threshold neighbours (self included)
// among the survivors.
PartySet prune_low_degree(const ConsistencyGraph& g, int threshold, PartySet within);
PartySet prune_low_degree(const ConsistencyGraph& g, int threshold);

}  // namespace vsslab
