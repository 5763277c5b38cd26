#pragma once

// Building blocks shared by the synchronous schemes.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vsslab/bipoly.hpp"
#include "vsslab/protocol.hpp"

namespace vsslab::detail {

using PairKey = std::pair<int, int>;

// Dealer-side bivariate dealing with F(0, y) = q, rows f_i = F(x, alpha_i), columns g_i = F(alpha_i, y).
struct Dealing {
    std::optional<BiPoly> F;
    UniPoly row;
    UniPoly col;
};

// Weak sharing with pads and a dispute round: rounds 1-3 of the four-round pad-based scheme.
// Message types are prefixed with the instance tag.
class PadWss {
public:
    PadWss(const SchemeParams& sp, int me, int dealer, std::string tag, RandomSource& rng);

    void set_polynomial(const UniPoly& q);
    void round1(std::vector<Outgoing>& out);
    void round2(const Inbox& in, std::vector<Outgoing>& out);
    void round3(const Inbox& in, std::vector<Outgoing>& out);
    void conclude(const Inbox& in);

    // Optional fourth round: resolution of unhappy parties.
    void round4(std::vector<Outgoing>& out);
    // Returns false when the dealer must be discarded.
    bool conclude4(const Inbox& in);

    void rec_round1(std::vector<Outgoing>& out) const;
    std::optional<UniPoly> rec_conclude(const Inbox& in) const;

    const UniPoly& row() const { return row_; }
    const UniPoly& col() const { return col_; }
    PartySet unhappy() const { return unhappy_; }
    PartySet happy() const { return PartySet::all(sp_.n) - unhappy_; }
    bool discarded() const { return discarded_; }
    std::string type(const char* name) const { return tag_ + name; }

private:
    SchemeParams sp_;
    int me_;
    int dealer_;
    std::string tag_;
    RandomSource& rng_;
    std::optional<BiPoly> F_;
    UniPoly row_, col_;
    std::vector<Fe> pad_sent_, pad_recv_;
    std::vector<PairKey> disputes_;
    PartySet unhappy_;
    bool discarded_ = false;
};

// Weak sharing where pads are registered with the dealer: the three-round single-broadcast scheme.
class KkkWss {
public:
    KkkWss(const SchemeParams& sp, int me, int dealer, std::string tag, RandomSource& rng);

    void set_polynomial(const UniPoly& q);
    void round1(std::vector<Outgoing>& out);
    void round2(const Inbox& in, std::vector<Outgoing>& out);
    void round3(const Inbox& in, std::vector<Outgoing>& out);
    void conclude(const Inbox& in);

    void rec_round1(std::vector<Outgoing>& out) const;
    std::optional<UniPoly> rec_conclude(const Inbox& in) const;

    const UniPoly& row() const { return row_; }
    PartySet unhappy() const { return unhappy_; }
    PartySet happy() const { return PartySet::all(sp_.n) - unhappy_; }
    bool discarded() const { return discarded_; }
    std::string type(const char* name) const { return tag_ + name; }

private:
    SchemeParams sp_;
    int me_;
    int dealer_;
    std::string tag_;
    RandomSource& rng_;
    std::optional<BiPoly> F_;
    UniPoly row_, col_;
    std::vector<Fe> pad_sent_, pad_recv_;
    std::vector<std::vector<Fe>> registered_, confirmed_;
    PartySet unhappy_;
    bool discarded_ = false;
};

// Weak reconstruction shared by both weak schemes: happy parties reveal their row and column,
// survivors of degree pruning must interpolate exactly.
void reveal_slices(const SchemeParams& sp, int me, const PartySet& happy, const UniPoly& row, const UniPoly& col,
                   const std::string& type, std::vector<Outgoing>& out);
std::optional<UniPoly> weak_reconstruct(const SchemeParams& sp, const PartySet& happy, const Inbox& in,
                                        const std::string& type);

}  // namespace vsslab::detail
