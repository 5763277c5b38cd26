#include "vsslab/graphs.hpp"

#include <stdexcept>

namespace vsslab {

PartySet::PartySet(std::initializer_list<int> parties) {
    for (int p : parties) insert(p);
}

PartySet PartySet::all(int n) {
    if (n < 0 || n > 64) throw std::invalid_argument("party count out of range");
    return from_bits(n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1);
}

std::vector<int> PartySet::members() const {
    std::vector<int> out;
    for (uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
}

std::string PartySet::to_string() const {
    std::string out = "{";
    for (int m : members()) {
        if (out.size() > 1) out += ",";
        out += "P" + std::to_string(m + 1);
    }
    return out + "}";
}

ConsistencyGraph::ConsistencyGraph(int n) : n_(n), adj_(static_cast<size_t>(n)) {
    if (n < 1 || n > 64) throw std::invalid_argument("graph size out of range");
    for (int i = 0; i < n; ++i) adj_[static_cast<size_t>(i)].insert(i);
}

bool ConsistencyGraph::add_edge(int a, int b) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) throw std::out_of_range("edge endpoint out of range");
    if (a == b || has_edge(a, b)) return false;
    adj_[static_cast<size_t>(a)].insert(b);
    adj_[static_cast<size_t>(b)].insert(a);
    ++edges_;
    return true;
}

bool is_valid_star(const ConsistencyGraph& g, const Star& star, int n, int t) {
    const PartySet everyone = PartySet::all(n);
    if (!star.C.subset_of(everyone) || !star.D.subset_of(everyone)) return false;
    if (!star.C.subset_of(star.D)) return false;
    if (star.C.size() < n - 2 * t || star.D.size() < n - t) return false;
    for (int c : star.C.members()) {
        if (!star.D.subset_of(g.neighbors(c))) return false;
    }
    return true;
}

std::optional<Star> find_star(const ConsistencyGraph& g, int n, int t) {
    const PartySet everyone = PartySet::all(n);
    PartySet matched;
    std::vector<std::pair<int, int>> matching;
    for (int a = 0; a < n; ++a) {
        if (matched.contains(a)) continue;
        for (int b = a + 1; b < n; ++b) {
            if (matched.contains(b) || g.has_edge(a, b)) continue;
            matched.insert(a);
            matched.insert(b);
            matching.emplace_back(a, b);
            break;
        }
    }
    PartySet heads;
    for (int v : (everyone - matched).members()) {
        for (const auto& [a, b] : matching) {
            if (!g.has_edge(v, a) && !g.has_edge(v, b)) {
                heads.insert(v);
                break;
            }
        }
    }
    Star star;
    star.C = everyone - matched - heads;
    for (int v = 0; v < n; ++v) {
        if (star.C.subset_of(g.neighbors(v))) star.D.insert(v);
    }
    if (!is_valid_star(g, star, n, t)) return std::nullopt;
    return star;
}

EFPair expand_ef(const ConsistencyGraph& g, const Star& star, int d, int t) {
    EFPair out;
    out.star = star;
    out.F = star.D;
    for (int v = 0; v < g.n(); ++v) {
        if ((g.neighbors(v) & star.C).size() >= 2 * t + 1) out.F.insert(v);
    }
    for (int v = 0; v < g.n(); ++v) {
        if ((g.neighbors(v) & out.F).size() >= d + t + 1) out.E.insert(v);
    }
    return out;
}

bool ef_conditions_hold(const ConsistencyGraph& g, const EFPair& ef, int d, int t) {
    for (int v : ef.F.members()) {
        if (v >= g.n() || (g.neighbors(v) & ef.star.C).size() < 2 * t + 1) return false;
    }
    for (int v : ef.E.members()) {
        if (v >= g.n() || (g.neighbors(v) & ef.F).size() < d + t + 1) return false;
    }
    return true;
}

PartySet prune_low_degree(const ConsistencyGraph& g, int threshold, PartySet within) {
    PartySet alive = within & PartySet::all(g.n());
    for (bool changed = true; changed;) {
        changed = false;
        for (int v : alive.members()) {
            if ((g.neighbors(v) & alive).size() < threshold) {
                alive.erase(v);
                changed = true;
            }
        }
    }
    return alive;
}

PartySet prune_low_degree(const ConsistencyGraph& g, int threshold) {
    return prune_low_degree(g, threshold, PartySet::all(g.n()));
}

}  // namespace vsslab
