#include "vsslab/vss_sync.hpp"

#include <map>

#include "vsslab/bipoly.hpp"
#include "vsslab/codes.hpp"
#include "vsslab/errors.hpp"
#include "wss_components.hpp"

namespace vsslab {

using detail::KkkWss;
using detail::PadWss;
using detail::PairKey;

// ---------------------------------------------------------------- base

SyncVssParty::SyncVssParty(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
    : sp_(sp), me_(id), secrets_(std::move(secrets)), rng_(std::move(rng)) {
    outcome_.shares.assign(static_cast<size_t>(sp.secrets), std::nullopt);
}

std::vector<Outgoing> SyncVssParty::on_round(int round, std::span<const Envelope> inbox) {
    Inbox in(inbox);
    return reconstructing_ ? rec_round(round, in) : share_round(round, in);
}

void SyncVssParty::begin_reconstruction() {
    reconstructing_ = true;
    halted_ = false;
}

void SyncVssParty::finish_sharing() {
    outcome_.sharing_done = true;
    halted_ = true;
}

void SyncVssParty::finish_reconstruction(std::optional<std::vector<Fe>> output) {
    outcome_.rec_done = true;
    outcome_.output = std::move(output);
    halted_ = true;
}

std::vector<Outgoing> SyncVssParty::rec_round(int round, const Inbox& in) {
    const FieldParams& fp = sp_.fp;
    if (round == 1) {
        Payload m{"rec-share", {}, {}};
        m.elems.push_back(outcome_.shares[0].value_or(fp.zero()));
        std::vector<Outgoing> out;
        for (int j = 0; j < sp_.n; ++j) out.push_back(send_to(me_, j, m));
        return out;
    }
    ShareSet w;
    for (int j = 0; j < sp_.n; ++j) w.insert(j, PayloadReader(in.p2p(j, "rec-share"), fp).elem(0));
    auto q = rs_decode(sp_.t, sp_.t, w, fp);
    if (q) {
        finish_reconstruction(std::vector<Fe>{q->eval(fp.zero())});
    } else {
        finish_reconstruction(std::nullopt);
    }
    return {};
}

namespace {

Payload msg(std::string type) { return Payload{std::move(type), {}, {}}; }

// Reads a list of (id, value) entries into a map.
std::map<int, Fe> id_values(const PayloadReader& r) {
    std::map<int, Fe> out;
    for (size_t k = 0; k < r.id_count(); ++k) out.emplace(r.id(k), r.elem(k));
    return out;
}

Fe value_or_zero(const std::map<int, Fe>& m, int key, const FieldParams& fp) {
    auto it = m.find(key);
    return it == m.end() ? fp.zero() : it->second;
}

// Bivariate dealing with F(0, y) = q; sends rows and columns as "deal".
BiPoly deal_rows_cols(const SchemeParams& sp, int me, const Fe& secret, RandomSource& rng, std::vector<Outgoing>& out) {
    UniPoly q = sample_sharing_poly(secret, sp.t, rng);
    std::vector<UniPoly> qs{q};
    BiPoly F = embed_bivariate(qs, EmbedMode::at_x0, sp.t, sp.t, rng);
    for (int i = 0; i < sp.n; ++i) {
        Payload m = msg("deal");
        append_poly(m, F.row_at(sp.fp.alpha(i)), sp.t);
        append_poly(m, F.col_at(sp.fp.alpha(i)), sp.t);
        out.push_back(send_to(me, i, std::move(m)));
    }
    return F;
}

// Symmetric dealing of rows only.
BiPoly deal_symmetric_rows(const SchemeParams& sp, int me, const Fe& secret, RandomSource& rng,
                           std::vector<Outgoing>& out) {
    UniPoly q = sample_sharing_poly(secret, sp.t, rng);
    std::vector<UniPoly> qs{q};
    BiPoly F = embed_bivariate(qs, EmbedMode::symmetric_x0, sp.t, sp.t, rng);
    for (int i = 0; i < sp.n; ++i) {
        Payload m = msg("deal");
        append_poly(m, F.row_at(sp.fp.alpha(i)), sp.t);
        out.push_back(send_to(me, i, std::move(m)));
    }
    return F;
}

// ---------------------------------------------------------------- seven-round scheme

class Bgw7 final : public SyncVssParty {
public:
    using SyncVssParty::SyncVssParty;

protected:
    std::vector<Outgoing> share_round(int round, const Inbox& in) override {
        const FieldParams& fp = sp_.fp;
        const int n = sp_.n;
        std::vector<Outgoing> out;
        switch (round) {
            case 1:
                if (is_dealer()) F_ = deal_rows_cols(sp_, me_, secrets_.at(0), *rng_, out);
                break;
            case 2: {
                PayloadReader deal(in.p2p(sp_.dealer, "deal"), fp);
                f_ = read_poly(deal, 0, sp_.t, p());
                g_ = read_poly(deal, static_cast<size_t>(sp_.t + 1), sp_.t, p());
                for (int j = 0; j < n; ++j) {
                    Payload m = msg("pair");
                    m.elems.push_back(f_.eval(alpha(j)));
                    out.push_back(send_to(me_, j, std::move(m)));
                }
                break;
            }
            case 3: {
                Payload m = msg("complaints");
                for (int j = 0; j < n; ++j) {
                    if (PayloadReader(in.p2p(j, "pair"), fp).elem(0) != g_.eval(alpha(j))) m.ids.push_back(j);
                }
                out.push_back(broadcast_msg(me_, std::move(m)));
                break;
            }
            case 4: {
                lists_.assign(static_cast<size_t>(n), PartySet{});
                for (int k = 0; k < n; ++k) {
                    PayloadReader r(in.bcast(k, "complaints"), fp);
                    for (size_t x = 0; x < r.id_count(); ++x) {
                        const int j = r.id(x);
                        if (j >= 0 && j < n) lists_[static_cast<size_t>(k)].insert(j);
                    }
                }
                if (is_dealer() && F_) {
                    Payload m = msg("resolve");
                    for (int k = 0; k < n; ++k) {
                        for (int j : lists_[static_cast<size_t>(k)].members()) {
                            m.ids.insert(m.ids.end(), {k, j});
                            m.elems.push_back(F_->eval(alpha(k), alpha(j)));
                        }
                    }
                    out.push_back(broadcast_msg(me_, std::move(m)));
                }
                break;
            }
            case 5: {
                PayloadReader r(in.bcast(sp_.dealer, "resolve"), fp);
                std::map<PairKey, Fe> resolved;
                for (size_t x = 0; 2 * x + 1 < r.id_count(); ++x) resolved.emplace(PairKey{r.id(2 * x), r.id(2 * x + 1)}, r.elem(x));
                auto value = [&](int k, int j) {
                    auto it = resolved.find({k, j});
                    return it == resolved.end() ? fp.zero() : it->second;
                };
                const PartySet& mine = lists_[static_cast<size_t>(me_)];
                bool accuse = mine.size() > sp_.t || mine.contains(me_);
                for (int k = 0; k < n && !accuse; ++k) {
                    if (lists_[static_cast<size_t>(k)].contains(me_) && value(k, me_) != f_.eval(alpha(k))) accuse = true;
                }
                for (int j : mine.members()) {
                    if (value(me_, j) != g_.eval(alpha(j))) accuse = true;
                }
                Payload m = msg("accuse");
                m.ids.push_back(accuse ? 1 : 0);
                out.push_back(broadcast_msg(me_, std::move(m)));
                break;
            }
            case 6: {
                accusers_ = PartySet{};
                for (int k = 0; k < n; ++k) {
                    if (PayloadReader(in.bcast(k, "accuse"), fp).id(0, 0) == 1) accusers_.insert(k);
                }
                if (is_dealer() && F_) {
                    Payload m = msg("reveal");
                    for (int k : accusers_.members()) {
                        m.ids.push_back(k);
                        append_poly(m, F_->row_at(alpha(k)), sp_.t);
                        append_poly(m, F_->col_at(alpha(k)), sp_.t);
                    }
                    out.push_back(broadcast_msg(me_, std::move(m)));
                }
                break;
            }
            case 7: {
                PayloadReader r(in.bcast(sp_.dealer, "reveal"), fp);
                const size_t width = static_cast<size_t>(2 * (sp_.t + 1));
                std::map<int, std::pair<UniPoly, UniPoly>> revealed;
                for (int k : accusers_.members()) {
                    size_t pos = r.id_count();
                    for (size_t x = 0; x < r.id_count(); ++x) {
                        if (r.id(x) == k) pos = x;
                    }
                    const PayloadReader& src = r;
                    size_t base = pos * width;
                    if (pos == r.id_count()) base = r.elem_count() + width;  // absent: zero polynomials
                    revealed.emplace(k, std::pair{read_poly(src, base, sp_.t, p()),
                                                  read_poly(src, base + static_cast<size_t>(sp_.t + 1), sp_.t, p())});
                }
                if (auto it = revealed.find(me_); it != revealed.end()) {
                    f_ = it->second.first;
                    g_ = it->second.second;
                }
                bool accuse = false;
                for (const auto& [k, fg] : revealed) {
                    if (fg.first.eval(alpha(me_)) != g_.eval(alpha(k)) || fg.second.eval(alpha(me_)) != f_.eval(alpha(k))) {
                        accuse = true;
                    }
                }
                Payload m = msg("accuse-again");
                m.ids.push_back(accuse ? 1 : 0);
                out.push_back(broadcast_msg(me_, std::move(m)));
                break;
            }
            default: {
                for (int k = 0; k < n; ++k) {
                    if (PayloadReader(in.bcast(k, "accuse-again"), fp).id(0, 0) == 1) accusers_.insert(k);
                }
                outcome_.discarded = accusers_.size() > sp_.t;
                outcome_.shares[0] = outcome_.discarded ? fp.zero() : f_.eval(fp.zero());
                finish_sharing();
            }
        }
        return out;
    }

private:
    std::optional<BiPoly> F_;
    UniPoly f_{2}, g_{2};
    std::vector<PartySet> lists_;
    PartySet accusers_;
};

// ---------------------------------------------------------------- five-round scheme

class Bgw5 final : public SyncVssParty {
public:
    using SyncVssParty::SyncVssParty;

protected:
    std::vector<Outgoing> share_round(int round, const Inbox& in) override {
        const FieldParams& fp = sp_.fp;
        const int n = sp_.n;
        std::vector<Outgoing> out;
        switch (round) {
            case 1:
                if (is_dealer()) F_ = deal_rows_cols(sp_, me_, secrets_.at(0), *rng_, out);
                break;
            case 2: {
                PayloadReader deal(in.p2p(sp_.dealer, "deal"), fp);
                f_ = read_poly(deal, 0, sp_.t, p());
                g_ = read_poly(deal, static_cast<size_t>(sp_.t + 1), sp_.t, p());
                for (int j = 0; j < n; ++j) {
                    Payload m = msg("pair");
                    m.elems.push_back(f_.eval(alpha(j)));
                    out.push_back(send_to(me_, j, std::move(m)));
                }
                break;
            }
            case 3: {
                Payload m = msg("complaint");
                for (int j = 0; j < n; ++j) {
                    if (PayloadReader(in.p2p(j, "pair"), fp).elem(0) != g_.eval(alpha(j))) {
                        m.ids.push_back(j);
                        m.elems.push_back(g_.eval(alpha(j)));
                    }
                }
                out.push_back(broadcast_msg(me_, std::move(m)));
                break;
            }
            case 4: {
                complaints_.clear();
                for (int i = 0; i < n; ++i) {
                    PayloadReader r(in.bcast(i, "complaint"), fp);
                    for (size_t x = 0; x < r.id_count(); ++x) {
                        const int j = r.id(x);
                        if (j >= 0 && j < n) complaints_[{i, j}] = r.elem(x);
                    }
                }
                if (is_dealer() && F_) {
                    Payload m = msg("resolve");
                    for (const auto& [key, v] : complaints_) {
                        m.ids.insert(m.ids.end(), {key.first, key.second});
                        m.elems.push_back(F_->eval(alpha(key.first), alpha(key.second)));
                    }
                    out.push_back(broadcast_msg(me_, std::move(m)));
                }
                Payload m = msg("respond");
                for (const auto& [key, v] : complaints_) {
                    if (key.second != me_) continue;
                    m.ids.push_back(key.first);
                    m.elems.push_back(f_.eval(alpha(key.first)));
                }
                out.push_back(broadcast_msg(me_, std::move(m)));
                break;
            }
            case 5: {
                PayloadReader r(in.bcast(sp_.dealer, "resolve"), fp);
                std::map<PairKey, Fe> resolved;
                for (size_t x = 0; 2 * x + 1 < r.id_count(); ++x) resolved.emplace(PairKey{r.id(2 * x), r.id(2 * x + 1)}, r.elem(x));
                std::vector<std::map<int, Fe>> responses(static_cast<size_t>(n));
                for (int j = 0; j < n; ++j) responses[static_cast<size_t>(j)] = id_values(PayloadReader(in.bcast(j, "respond"), fp));
                unhappy_ = PartySet{};
                for (const auto& [key, g_val] : complaints_) {
                    auto it = resolved.find(key);
                    const Fe d = it == resolved.end() ? fp.zero() : it->second;
                    if (g_val != d) unhappy_.insert(key.first);
                    if (value_or_zero(responses[static_cast<size_t>(key.second)], key.first, fp) != d) unhappy_.insert(key.second);
                }
                outcome_.discarded = unhappy_.size() > sp_.t;
                if (is_dealer() && F_) {
                    Payload m = msg("uh-rows");
                    for (int i : unhappy_.members()) {
                        m.ids.push_back(i);
                        append_poly(m, F_->row_at(alpha(i)), sp_.t);
                    }
                    out.push_back(broadcast_msg(me_, std::move(m)));
                }
                if (!unhappy_.contains(me_)) {
                    Payload m = msg("uh-vals");
                    for (int i : unhappy_.members()) {
                        m.ids.push_back(i);
                        m.elems.push_back(g_.eval(alpha(i)));
                    }
                    out.push_back(broadcast_msg(me_, std::move(m)));
                }
                break;
            }
            default: {
                if (!outcome_.discarded) {
                    PayloadReader rows(in.bcast(sp_.dealer, "uh-rows"), fp);
                    for (int i : unhappy_.members()) {
                        UniPoly f_i(p());
                        for (size_t x = 0; x < rows.id_count(); ++x) {
                            if (rows.id(x) == i) f_i = read_poly(rows, x * static_cast<size_t>(sp_.t + 1), sp_.t, p());
                        }
                        int matches = 0;
                        for (int j : (PartySet::all(n) - unhappy_).members()) {
                            auto vals = id_values(PayloadReader(in.bcast(j, "uh-vals"), fp));
                            if (value_or_zero(vals, i, fp) == f_i.eval(alpha(j))) ++matches;
                        }
                        if (matches <= 2 * sp_.t) outcome_.discarded = true;
                        if (i == me_) f_ = f_i;
                    }
                }
                outcome_.shares[0] = outcome_.discarded ? fp.zero() : f_.eval(fp.zero());
                finish_sharing();
            }
        }
        return out;
    }

private:
    std::optional<BiPoly> F_;
    UniPoly f_{2}, g_{2};
    std::map<PairKey, Fe> complaints_;
    PartySet unhappy_;
};

// ---------------------------------------------------------------- pad-based schemes (four rounds, weak)

class PadScheme final : public SyncVssParty {
public:
    PadScheme(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng, bool weak)
        : SyncVssParty(sp, id, std::move(secrets), std::move(rng)), weak_(weak), wss_(sp, id, sp.dealer, "", *rng_) {}

protected:
    std::vector<Outgoing> share_round(int round, const Inbox& in) override {
        std::vector<Outgoing> out;
        switch (round) {
            case 1:
                if (is_dealer()) wss_.set_polynomial(sample_sharing_poly(secrets_.at(0), sp_.t, *rng_));
                wss_.round1(out);
                break;
            case 2:
                wss_.round2(in, out);
                break;
            case 3:
                wss_.round3(in, out);
                break;
            case 4:
                wss_.conclude(in);
                if (weak_) {
                    conclude_weak();
                } else {
                    wss_.round4(out);
                }
                break;
            default:
                outcome_.discarded = !wss_.conclude4(in);
                outcome_.shares[0] = outcome_.discarded ? sp_.fp.zero() : wss_.row().eval(sp_.fp.zero());
                finish_sharing();
        }
        return out;
    }

    std::vector<Outgoing> rec_round(int round, const Inbox& in) override {
        if (!weak_) return SyncVssParty::rec_round(round, in);
        std::vector<Outgoing> out;
        if (round == 1) {
            wss_.rec_round1(out);
            return out;
        }
        auto q = wss_.rec_conclude(in);
        if (q) {
            finish_reconstruction(std::vector<Fe>{q->eval(sp_.fp.zero())});
        } else {
            finish_reconstruction(std::nullopt);
        }
        return out;
    }

private:
    void conclude_weak() {
        outcome_.discarded = wss_.discarded();
        outcome_.accepted_set = wss_.happy();
        if (outcome_.discarded) {
            outcome_.shares[0] = sp_.fp.zero();
        } else if (wss_.happy().contains(me_)) {
            outcome_.shares[0] = wss_.row().eval(sp_.fp.zero());
        }
        finish_sharing();
    }

    bool weak_;
    PadWss wss_;
};

// ---------------------------------------------------------------- pad-registered weak scheme (three rounds)

class KkkWeak final : public SyncVssParty {
public:
    KkkWeak(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : SyncVssParty(sp, id, std::move(secrets), std::move(rng)), wss_(sp, id, sp.dealer, "", *rng_) {}

protected:
    std::vector<Outgoing> share_round(int round, const Inbox& in) override {
        std::vector<Outgoing> out;
        switch (round) {
            case 1:
                if (is_dealer()) wss_.set_polynomial(sample_sharing_poly(secrets_.at(0), sp_.t, *rng_));
                wss_.round1(out);
                break;
            case 2:
                wss_.round2(in, out);
                break;
            case 3:
                wss_.round3(in, out);
                break;
            default:
                wss_.conclude(in);
                outcome_.discarded = wss_.discarded();
                outcome_.accepted_set = wss_.happy();
                if (outcome_.discarded) {
                    outcome_.shares[0] = sp_.fp.zero();
                } else if (wss_.happy().contains(me_)) {
                    outcome_.shares[0] = wss_.row().eval(sp_.fp.zero());
                }
                finish_sharing();
        }
        return out;
    }

    std::vector<Outgoing> rec_round(int round, const Inbox& in) override {
        std::vector<Outgoing> out;
        if (round == 1) {
            wss_.rec_round1(out);
            return out;
        }
        auto q = wss_.rec_conclude(in);
        if (q) {
            finish_reconstruction(std::vector<Fe>{q->eval(sp_.fp.zero())});
        } else {
            finish_reconstruction(std::nullopt);
        }
        return out;
    }

private:
    KkkWss wss_;
};

// Iterated removal shared by the three-round strong schemes: drop j from V while |V n W_j| < n - t.
PartySet settle_accepted(PartySet accepted, const std::vector<PartySet>& supporters, int threshold) {
    for (bool changed = true; changed;) {
        changed = false;
        for (int j : accepted.members()) {
            if ((accepted & supporters[static_cast<size_t>(j)]).size() < threshold) {
                accepted.erase(j);
                changed = true;
            }
        }
    }
    return accepted;
}

// Sub-share completion: P_i outside V interpolates A_j(alpha_i) - r'_ji over supporting j in V.
std::optional<Fe> complete_share(const SchemeParams& sp, int me, const PartySet& accepted,
                                 const std::vector<PartySet>& supporters, const std::vector<UniPoly>& masked_rows,
                                 const std::vector<Fe>& blinding_shares) {
    std::vector<Point> pts;
    for (int j : accepted.members()) {
        if (!supporters[static_cast<size_t>(j)].contains(me)) continue;
        pts.emplace_back(sp.fp.alpha(j), masked_rows[static_cast<size_t>(j)].eval(sp.fp.alpha(me)) -
                                             blinding_shares[static_cast<size_t>(j)]);
    }
    auto f = robust_fit(pts, sp.t);
    if (!f) return std::nullopt;
    return f->eval(sp.fp.zero());
}

// ---------------------------------------------------------------- blinded strong scheme from weak instances

class FggrsStrong final : public SyncVssParty {
public:
    FggrsStrong(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : SyncVssParty(sp, id, std::move(secrets), std::move(rng)) {
        for (int j = 0; j < sp.n; ++j) wss_.emplace_back(sp, id, j, "w" + std::to_string(j + 1) + ":", *rng_);
    }

protected:
    std::vector<Outgoing> share_round(int round, const Inbox& in) override {
        const FieldParams& fp = sp_.fp;
        const int n = sp_.n;
        std::vector<Outgoing> out;
        switch (round) {
            case 1: {
                if (is_dealer()) F_ = deal_rows_cols(sp_, me_, secrets_.at(0), *rng_, out);
                blind_ = sample_sharing_poly(rng_->field(p()), sp_.t, *rng_);
                wss_[static_cast<size_t>(me_)].set_polynomial(blind_);
                for (auto& w : wss_) w.round1(out);
                break;
            }
            case 2: {
                PayloadReader deal(in.p2p(sp_.dealer, "deal"), fp);
                f_ = read_poly(deal, 0, sp_.t, p());
                g_ = read_poly(deal, static_cast<size_t>(sp_.t + 1), sp_.t, p());
                for (auto& w : wss_) w.round2(in, out);
                Payload m = msg("masked");
                append_poly(m, f_ + blind_, sp_.t);
                for (int j = 0; j < n; ++j) m.elems.push_back(g_.eval(alpha(j)) + blinding_share(j));
                out.push_back(broadcast_msg(me_, std::move(m)));
                break;
            }
            case 3: {
                read_masked(in);
                disputes_.clear();
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        if (masked_rows_[static_cast<size_t>(i)].eval(alpha(j)) != masked_vals_[static_cast<size_t>(j)][static_cast<size_t>(i)]) {
                            disputes_.emplace_back(i, j);
                        }
                    }
                }
                if (is_dealer() && F_) {
                    Payload m = msg("resolve");
                    for (auto [i, j] : disputes_) {
                        m.ids.insert(m.ids.end(), {i, j});
                        m.elems.push_back(F_->eval(alpha(j), alpha(i)));
                    }
                    out.push_back(broadcast_msg(me_, std::move(m)));
                }
                Payload m = msg("dispute");
                for (auto [i, j] : disputes_) {
                    if (i == me_) {
                        m.ids.insert(m.ids.end(), {0, j});
                        m.elems.push_back(f_.eval(alpha(j)));
                    }
                    if (j == me_) {
                        m.ids.insert(m.ids.end(), {1, i});
                        m.elems.push_back(g_.eval(alpha(i)));
                    }
                }
                out.push_back(broadcast_msg(me_, std::move(m)));
                for (auto& w : wss_) w.round3(in, out);
                break;
            }
            default: {
                for (auto& w : wss_) w.conclude(in);
                PartySet unhappy = unhappy_from_disputes(in);
                PartySet accepted = PartySet::all(n) - unhappy;
                std::vector<PartySet> supporters(static_cast<size_t>(n));
                for (int j = 0; j < n; ++j) {
                    PartySet w = wss_[static_cast<size_t>(j)].happy();
                    for (int i = 0; i < n; ++i) {
                        if (masked_rows_[static_cast<size_t>(j)].eval(alpha(i)) != masked_vals_[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
                            w.erase(i);
                        }
                    }
                    supporters[static_cast<size_t>(j)] = w;
                }
                accepted_ = settle_accepted(accepted, supporters, n - sp_.t);
                outcome_.accepted_set = accepted_;
                outcome_.discarded = accepted_.size() < n - sp_.t;
                if (outcome_.discarded) {
                    outcome_.shares[0] = fp.zero();
                } else if (accepted_.contains(me_)) {
                    outcome_.shares[0] = f_.eval(fp.zero());
                }
                finish_sharing();
            }
        }
        return out;
    }

    std::vector<Outgoing> rec_round(int round, const Inbox& in) override {
        const FieldParams& fp = sp_.fp;
        std::vector<Outgoing> out;
        if (outcome_.discarded) {
            finish_reconstruction(std::vector<Fe>{fp.zero()});
            return out;
        }
        if (round == 1) {
            for (int j : accepted_.members()) wss_[static_cast<size_t>(j)].rec_round1(out);
            return out;
        }
        std::vector<Point> pts;
        for (int j : accepted_.members()) {
            auto r_j = wss_[static_cast<size_t>(j)].rec_conclude(in);
            if (!r_j) continue;
            UniPoly f_j = masked_rows_[static_cast<size_t>(j)] - *r_j;
            pts.emplace_back(alpha(j), f_j.eval(fp.zero()));
        }
        auto q = fit_exact(pts, sp_.t);
        if (q && static_cast<int>(pts.size()) >= sp_.t + 1) {
            finish_reconstruction(std::vector<Fe>{q->eval(fp.zero())});
        } else {
            finish_reconstruction(std::nullopt);
        }
        return out;
    }

private:
    Fe blinding_share(int j) const { return wss_[static_cast<size_t>(j)].row().eval(sp_.fp.zero()); }

    void read_masked(const Inbox& in) {
        const int n = sp_.n;
        masked_rows_.assign(static_cast<size_t>(n), UniPoly(p()));
        masked_vals_.assign(static_cast<size_t>(n), std::vector<Fe>(static_cast<size_t>(n), sp_.fp.zero()));
        for (int k = 0; k < n; ++k) {
            PayloadReader r(in.bcast(k, "masked"), sp_.fp);
            masked_rows_[static_cast<size_t>(k)] = read_poly(r, 0, sp_.t, p());
            masked_vals_[static_cast<size_t>(k)] = r.elems(static_cast<size_t>(sp_.t + 1), static_cast<size_t>(n));
        }
    }

    PartySet unhappy_from_disputes(const Inbox& in) const {
        const FieldParams& fp = sp_.fp;
        std::map<PairKey, Fe> resolved, row_vals, col_vals;
        PayloadReader res(in.bcast(sp_.dealer, "resolve"), fp);
        for (size_t k = 0; 2 * k + 1 < res.id_count(); ++k) resolved.emplace(PairKey{res.id(2 * k), res.id(2 * k + 1)}, res.elem(k));
        for (int party = 0; party < sp_.n; ++party) {
            PayloadReader r(in.bcast(party, "dispute"), fp);
            for (size_t k = 0; 2 * k + 1 < r.id_count(); ++k) {
                const int role = r.id(2 * k);
                const int other = r.id(2 * k + 1);
                if (role == 0) row_vals.emplace(PairKey{party, other}, r.elem(k));
                if (role == 1) col_vals.emplace(PairKey{other, party}, r.elem(k));
            }
        }
        auto get = [&](const std::map<PairKey, Fe>& m, PairKey key) {
            auto it = m.find(key);
            return it == m.end() ? fp.zero() : it->second;
        };
        PartySet unhappy;
        for (auto key : disputes_) {
            const Fe d = get(resolved, key);
            if (get(row_vals, key) != d) unhappy.insert(key.first);
            if (get(col_vals, key) != d) unhappy.insert(key.second);
        }
        return unhappy;
    }

    std::optional<BiPoly> F_;
    UniPoly f_{2}, g_{2}, blind_{2};
    std::vector<PadWss> wss_;
    std::vector<UniPoly> masked_rows_;
    std::vector<std::vector<Fe>> masked_vals_;
    std::vector<PairKey> disputes_;
    PartySet accepted_;
};

// ---------------------------------------------------------------- single-broadcast strong scheme

class KkkStrong final : public SyncVssParty {
public:
    KkkStrong(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : SyncVssParty(sp, id, std::move(secrets), std::move(rng)) {
        for (int j = 0; j < sp.n; ++j) wss_.emplace_back(sp, id, j, "w" + std::to_string(j + 1) + ":", *rng_);
    }

protected:
    struct Entry {
        bool disagree = false;
        Fe row_value, row_pad, col_value, col_pad;
    };

    std::vector<Outgoing> share_round(int round, const Inbox& in) override {
        const FieldParams& fp = sp_.fp;
        const int n = sp_.n;
        std::vector<Outgoing> out;
        switch (round) {
            case 1: {
                if (is_dealer()) F_ = deal_symmetric_rows(sp_, me_, secrets_.at(0), *rng_, out);
                blind_ = sample_sharing_poly(rng_->field(p()), sp_.t, *rng_);
                wss_[static_cast<size_t>(me_)].set_polynomial(blind_);
                Payload reg = msg("pad-register");
                append_poly(reg, blind_, sp_.t);
                out.push_back(send_to(me_, sp_.dealer, std::move(reg)));
                for (auto& w : wss_) w.round1(out);
                break;
            }
            case 2: {
                f_ = read_poly(PayloadReader(in.p2p(sp_.dealer, "deal"), fp), 0, sp_.t, p());
                if (is_dealer()) {
                    registered_.assign(static_cast<size_t>(n), UniPoly(p()));
                    for (int j = 0; j < n; ++j) registered_[static_cast<size_t>(j)] = read_poly(PayloadReader(in.p2p(j, "pad-register"), fp), 0, sp_.t, p());
                }
                for (int j = 0; j < n; ++j) {
                    Payload m = msg("pair");
                    m.elems.push_back(f_.eval(alpha(j)));
                    out.push_back(send_to(me_, j, std::move(m)));
                }
                for (auto& w : wss_) w.round2(in, out);
                Payload confirm = msg("pad-confirm");
                for (int j = 0; j < n; ++j) confirm.elems.push_back(blinding_share(j));
                out.push_back(send_to(me_, sp_.dealer, std::move(confirm)));
                break;
            }
            case 3: {
                Payload masked = msg("masked-row");
                append_poly(masked, f_ + blind_, sp_.t);
                out.push_back(broadcast_msg(me_, std::move(masked)));
                Payload verdict = msg("verdict");
                for (int j = 0; j < n; ++j) {
                    const Fe own = f_.eval(alpha(j));
                    if (PayloadReader(in.p2p(j, "pair"), fp).elem(0) != own) {
                        verdict.ids.push_back(1);
                        verdict.elems.insert(verdict.elems.end(), {own, blind_.eval(alpha(j)), own, blinding_share(j)});
                    } else {
                        verdict.ids.push_back(0);
                        verdict.elems.push_back(own + blinding_share(j));
                    }
                }
                out.push_back(broadcast_msg(me_, std::move(verdict)));
                if (is_dealer() && F_) {
                    std::vector<std::vector<Fe>> confirmed(static_cast<size_t>(n));
                    for (int k = 0; k < n; ++k) confirmed[static_cast<size_t>(k)] = PayloadReader(in.p2p(k, "pad-confirm"), fp).elems(0, static_cast<size_t>(n));
                    Payload check = msg("pad-check");
                    for (int j = 0; j < n; ++j) {
                        for (int k = 0; k < n; ++k) {
                            const Fe r1 = registered_[static_cast<size_t>(j)].eval(alpha(k));
                            const Fe r2 = confirmed[static_cast<size_t>(k)][static_cast<size_t>(j)];
                            const Fe v = F_->eval(alpha(k), alpha(j));
                            check.ids.push_back(r1 != r2 ? 1 : 0);
                            check.elems.push_back(r1 != r2 ? v : v + r1);
                        }
                    }
                    out.push_back(broadcast_msg(me_, std::move(check)));
                }
                for (auto& w : wss_) w.round3(in, out);
                break;
            }
            default:
                conclude(in);
                finish_sharing();
        }
        return out;
    }

private:
    Fe blinding_share(int j) const { return wss_[static_cast<size_t>(j)].row().eval(sp_.fp.zero()); }

    std::vector<Entry> parse_verdict(const PayloadReader& r) const {
        const FieldParams& fp = sp_.fp;
        std::vector<Entry> entries(static_cast<size_t>(sp_.n), Entry{false, fp.zero(), fp.zero(), fp.zero(), fp.zero()});
        size_t cursor = 0;
        for (int j = 0; j < sp_.n; ++j) {
            Entry& e = entries[static_cast<size_t>(j)];
            e.disagree = r.id(static_cast<size_t>(j), 0) == 1;
            if (e.disagree) {
                e.row_value = r.elem(cursor);
                e.row_pad = r.elem(cursor + 1);
                e.col_value = r.elem(cursor + 2);
                e.col_pad = r.elem(cursor + 3);
                cursor += 4;
            } else {
                e.col_value = r.elem(cursor);
                cursor += 1;
            }
        }
        return entries;
    }

    void conclude(const Inbox& in) {
        const FieldParams& fp = sp_.fp;
        const int n = sp_.n;
        for (auto& w : wss_) w.conclude(in);
        std::vector<UniPoly> masked(static_cast<size_t>(n), UniPoly(p()));
        std::vector<std::vector<Entry>> verdicts(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) {
            masked[static_cast<size_t>(k)] = read_poly(PayloadReader(in.bcast(k, "masked-row"), fp), 0, sp_.t, p());
            verdicts[static_cast<size_t>(k)] = parse_verdict(PayloadReader(in.bcast(k, "verdict"), fp));
        }
        auto entry = [&](int who, int about) -> const Entry& { return verdicts[static_cast<size_t>(who)][static_cast<size_t>(about)]; };
        PayloadReader check(in.bcast(sp_.dealer, "pad-check"), fp);
        PartySet unhappy;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Entry& row = entry(i, j);
                const Entry& col = entry(j, i);
                if (!row.disagree || !col.disagree || row.row_pad != col.col_pad) continue;
                const size_t idx = static_cast<size_t>(i * n + j);
                const Fe shift = check.id(idx, 0) == 1 ? fp.zero() : row.row_pad;
                const Fe d = check.elem(idx);
                if (d != row.row_value + shift) unhappy.insert(i);
                if (d != col.col_value + shift) unhappy.insert(j);
            }
        }
        PartySet accepted = PartySet::all(n) - unhappy;
        std::vector<PartySet> supporters(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) supporters[static_cast<size_t>(j)] = wss_[static_cast<size_t>(j)].happy();
        for (bool changed = true; changed;) {
            changed = false;
            for (int j : accepted.members()) {
                bool drop = supporters[static_cast<size_t>(j)].size() < n - sp_.t;
                for (int i = 0; i < n && !drop; ++i) {
                    const Entry& e = entry(j, i);
                    if (e.disagree && masked[static_cast<size_t>(j)].eval(alpha(i)) != e.row_value + e.row_pad) drop = true;
                }
                if (drop) {
                    accepted.erase(j);
                    changed = true;
                }
            }
            for (int j : accepted.members()) {
                PartySet& w = supporters[static_cast<size_t>(j)];
                for (int i : w.members()) {
                    const Entry& from_i = entry(i, j);
                    const Entry& from_j = entry(j, i);
                    bool drop = !from_i.disagree && masked[static_cast<size_t>(j)].eval(alpha(i)) != from_i.col_value;
                    if (from_j.disagree && (!from_i.disagree || from_i.col_pad != from_j.row_pad)) drop = true;
                    if (drop) {
                        w.erase(i);
                        changed = true;
                    }
                }
            }
            PartySet settled = settle_accepted(accepted, supporters, n - sp_.t);
            if (settled != accepted) {
                accepted = settled;
                changed = true;
            }
        }
        outcome_.accepted_set = accepted;
        outcome_.discarded = accepted.size() < n - sp_.t;
        if (outcome_.discarded) {
            outcome_.shares[0] = fp.zero();
        } else if (accepted.contains(me_)) {
            outcome_.shares[0] = f_.eval(fp.zero());
        } else {
            std::vector<Fe> blinding(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) blinding[static_cast<size_t>(j)] = blinding_share(j);
            outcome_.shares[0] = complete_share(sp_, me_, accepted, supporters, masked, blinding);
        }
    }

    std::optional<BiPoly> F_;
    UniPoly f_{2}, blind_{2};
    std::vector<UniPoly> registered_;
    std::vector<KkkWss> wss_;
};

// ---------------------------------------------------------------- early-knowledge strong scheme

class AkpStrong final : public SyncVssParty {
public:
    AkpStrong(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : SyncVssParty(sp, id, std::move(secrets), std::move(rng)) {
        for (int j = 0; j < sp.n; ++j) wss_.emplace_back(sp, id, j, "w" + std::to_string(j + 1) + ":", *rng_);
    }

protected:
    std::vector<Outgoing> share_round(int round, const Inbox& in) override {
        const FieldParams& fp = sp_.fp;
        const int n = sp_.n;
        std::vector<Outgoing> out;
        switch (round) {
            case 1:
                if (is_dealer()) F_ = deal_symmetric_rows(sp_, me_, secrets_.at(0), *rng_, out);
                blind_ = sample_sharing_poly(rng_->field(p()), sp_.t, *rng_);
                wss_[static_cast<size_t>(me_)].set_polynomial(blind_);
                for (auto& w : wss_) w.round1(out);
                break;
            case 2: {
                f_ = read_poly(PayloadReader(in.p2p(sp_.dealer, "deal"), fp), 0, sp_.t, p());
                for (auto& w : wss_) w.round2(in, out);
                Payload m = msg("masked");
                append_poly(m, f_ + blind_, sp_.t);
                for (int j = 0; j < n; ++j) m.elems.push_back(f_.eval(alpha(j)) + blinding_share(j));
                out.push_back(broadcast_msg(me_, std::move(m)));
                break;
            }
            case 3: {
                masked_rows_.assign(static_cast<size_t>(n), UniPoly(p()));
                masked_vals_.assign(static_cast<size_t>(n), {});
                for (int k = 0; k < n; ++k) {
                    PayloadReader r(in.bcast(k, "masked"), fp);
                    masked_rows_[static_cast<size_t>(k)] = read_poly(r, 0, sp_.t, p());
                    masked_vals_[static_cast<size_t>(k)] = r.elems(static_cast<size_t>(sp_.t + 1), static_cast<size_t>(n));
                }
                EarlyKnowledge early;
                early.share = f_.eval(fp.zero());
                for (int j = 0; j < n; ++j) {
                    early.subshares.emplace_back(j, masked_rows_[static_cast<size_t>(j)].eval(alpha(me_)) - blinding_share(j));
                }
                outcome_.early = early;
                disputes_.clear();
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        if (masked_rows_[static_cast<size_t>(i)].eval(alpha(j)) != masked_vals_[static_cast<size_t>(j)][static_cast<size_t>(i)]) {
                            disputes_.emplace_back(i, j);
                        }
                    }
                }
                if (is_dealer() && F_) {
                    Payload m = msg("resolve");
                    for (auto [i, j] : disputes_) {
                        m.ids.insert(m.ids.end(), {i, j});
                        m.elems.push_back(F_->eval(alpha(j), alpha(i)));
                    }
                    out.push_back(broadcast_msg(me_, std::move(m)));
                }
                Payload m = msg("dispute");
                for (auto [i, j] : disputes_) {
                    if (i == me_) {
                        m.ids.insert(m.ids.end(), {0, j});
                        m.elems.insert(m.elems.end(), {f_.eval(alpha(j)), blind_.eval(alpha(j))});
                    }
                    if (j == me_) {
                        m.ids.insert(m.ids.end(), {1, i});
                        m.elems.insert(m.elems.end(), {f_.eval(alpha(i)), blinding_share(i)});
                    }
                }
                out.push_back(broadcast_msg(me_, std::move(m)));
                for (auto& w : wss_) w.round3(in, out);
                break;
            }
            default:
                conclude(in);
                finish_sharing();
        }
        return out;
    }

private:
    struct Claim {
        Fe value, pad;
    };

    Fe blinding_share(int j) const { return wss_[static_cast<size_t>(j)].row().eval(sp_.fp.zero()); }

    void conclude(const Inbox& in) {
        const FieldParams& fp = sp_.fp;
        const int n = sp_.n;
        for (auto& w : wss_) w.conclude(in);
        std::map<PairKey, Fe> resolved;
        std::map<PairKey, Claim> row_claims, col_claims;
        PayloadReader res(in.bcast(sp_.dealer, "resolve"), fp);
        for (size_t k = 0; 2 * k + 1 < res.id_count(); ++k) resolved.emplace(PairKey{res.id(2 * k), res.id(2 * k + 1)}, res.elem(k));
        for (int party = 0; party < n; ++party) {
            PayloadReader r(in.bcast(party, "dispute"), fp);
            for (size_t k = 0; 2 * k + 1 < r.id_count(); ++k) {
                const int role = r.id(2 * k);
                const int other = r.id(2 * k + 1);
                Claim c{r.elem(2 * k), r.elem(2 * k + 1)};
                if (role == 0) row_claims.emplace(PairKey{party, other}, c);
                if (role == 1) col_claims.emplace(PairKey{other, party}, c);
            }
        }
        const Claim none{fp.zero(), fp.zero()};
        auto claim = [&](const std::map<PairKey, Claim>& m, PairKey key) {
            auto it = m.find(key);
            return it == m.end() ? none : it->second;
        };
        PartySet unhappy;
        for (auto key : disputes_) {
            auto it = resolved.find(key);
            const Fe d = it == resolved.end() ? fp.zero() : it->second;
            if (claim(row_claims, key).value != d) unhappy.insert(key.first);
            if (claim(col_claims, key).value != d) unhappy.insert(key.second);
        }
        PartySet accepted = PartySet::all(n) - unhappy;
        std::vector<PartySet> supporters(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) supporters[static_cast<size_t>(j)] = wss_[static_cast<size_t>(j)].happy();
        for (auto key : disputes_) {
            const auto [j, i] = key;
            if (claim(row_claims, key).pad != claim(col_claims, key).pad) supporters[static_cast<size_t>(j)].erase(i);
            if (masked_rows_[static_cast<size_t>(j)].eval(alpha(i)) != claim(row_claims, key).value + claim(row_claims, key).pad) {
                accepted.erase(j);
            }
        }
        accepted = settle_accepted(accepted, supporters, n - sp_.t);
        outcome_.accepted_set = accepted;
        outcome_.discarded = accepted.size() < n - sp_.t;
        if (outcome_.discarded) {
            outcome_.shares[0] = fp.zero();
        } else if (accepted.contains(me_)) {
            outcome_.shares[0] = f_.eval(fp.zero());
        } else {
            std::vector<Fe> blinding(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) blinding[static_cast<size_t>(j)] = blinding_share(j);
            outcome_.shares[0] = complete_share(sp_, me_, accepted, supporters, masked_rows_, blinding);
        }
    }

    std::optional<BiPoly> F_;
    UniPoly f_{2}, blind_{2};
    std::vector<PadWss> wss_;
    std::vector<UniPoly> masked_rows_;
    std::vector<std::vector<Fe>> masked_vals_;
    std::vector<PairKey> disputes_;
};

// ---------------------------------------------------------------- two-round star scheme

class GikrStar final : public SyncVssParty {
public:
    using SyncVssParty::SyncVssParty;

protected:
    std::vector<Outgoing> share_round(int round, const Inbox& in) override {
        const FieldParams& fp = sp_.fp;
        const int n = sp_.n;
        std::vector<Outgoing> out;
        switch (round) {
            case 1:
                if (is_dealer()) deal_rows_cols(sp_, me_, secrets_.at(0), *rng_, out);
                pads_.clear();
                for (int j = 0; j < n; ++j) {
                    pads_.push_back(rng_->field(p(), DrawTag{j}));
                    Payload m = msg("pad");
                    m.elems.push_back(pads_.back());
                    out.push_back(send_to(me_, j, std::move(m)));
                }
                break;
            case 2: {
                PayloadReader deal(in.p2p(sp_.dealer, "deal"), fp);
                f_ = read_poly(deal, 0, sp_.t, p());
                UniPoly g = read_poly(deal, static_cast<size_t>(sp_.t + 1), sp_.t, p());
                Payload m = msg("masked");
                for (int j = 0; j < n; ++j) m.elems.push_back(f_.eval(alpha(j)) + pads_[static_cast<size_t>(j)]);
                for (int j = 0; j < n; ++j) m.elems.push_back(g.eval(alpha(j)) + PayloadReader(in.p2p(j, "pad"), fp).elem(0));
                out.push_back(broadcast_msg(me_, std::move(m)));
                break;
            }
            default: {
                const size_t un = static_cast<size_t>(n);
                std::vector<std::vector<Fe>> a(un), b(un);
                for (int k = 0; k < n; ++k) {
                    PayloadReader r(in.bcast(k, "masked"), fp);
                    a[static_cast<size_t>(k)] = r.elems(0, un);
                    b[static_cast<size_t>(k)] = r.elems(un, un);
                }
                ConsistencyGraph g(n);
                for (int l = 0; l < n; ++l) {
                    for (int m = l + 1; m < n; ++m) {
                        const size_t ul = static_cast<size_t>(l), um = static_cast<size_t>(m);
                        if (a[ul][um] == b[um][ul] && a[um][ul] == b[ul][um]) g.add_edge(l, m);
                    }
                }
                auto star = find_star(g, n, sp_.t);
                if (!star) {
                    outcome_.discarded = true;
                    outcome_.shares[0] = fp.zero();
                } else if (star->C.contains(me_)) {
                    outcome_.accepted_set = star->C;
                    outcome_.shares[0] = f_.eval(fp.zero());
                } else {
                    outcome_.accepted_set = star->C;
                    std::vector<Point> pts;
                    for (int j : star->D.members()) {
                        pts.emplace_back(alpha(j), b[static_cast<size_t>(j)][static_cast<size_t>(me_)] - pads_[static_cast<size_t>(j)]);
                    }
                    auto f = rs_decode_points(sp_.t, sp_.t, pts);
                    outcome_.shares[0] = f ? f->eval(fp.zero()) : fp.zero();
                }
                finish_sharing();
            }
        }
        return out;
    }

private:
    UniPoly f_{2};
    std::vector<Fe> pads_;
};

// ---------------------------------------------------------------- one-round scheme (n = 5, t = 1)

class GikrOneRound final : public SyncVssParty {
public:
    GikrOneRound(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : SyncVssParty(sp, id, std::move(secrets), std::move(rng)) {
        outcome_.rec_participant = !is_dealer();
    }

    // Shareholders are the non-dealers, evaluated at 1..n-1 in index order.
    int holder_rank(int party) const { return party < sp_.dealer ? party : party - 1; }

protected:
    std::vector<Outgoing> share_round(int round, const Inbox& in) override {
        std::vector<Outgoing> out;
        if (round == 1) {
            if (is_dealer()) {
                UniPoly q = sample_sharing_poly(secrets_.at(0), sp_.t, *rng_);
                for (int i = 0; i < sp_.n; ++i) {
                    if (i == me_) continue;
                    Payload m = msg("deal");
                    m.elems.push_back(q.eval(alpha(holder_rank(i))));
                    out.push_back(send_to(me_, i, std::move(m)));
                }
            }
            return out;
        }
        if (!is_dealer()) outcome_.shares[0] = PayloadReader(in.p2p(sp_.dealer, "deal"), sp_.fp).elem(0);
        finish_sharing();
        return out;
    }

    std::vector<Outgoing> rec_round(int round, const Inbox& in) override {
        const FieldParams& fp = sp_.fp;
        std::vector<Outgoing> out;
        if (is_dealer()) {
            finish_reconstruction(std::nullopt);
            outcome_.rec_done = true;
            return out;
        }
        if (round == 1) {
            for (int j = 0; j < sp_.n; ++j) {
                if (j == sp_.dealer) continue;
                Payload m = msg("rec-share");
                m.elems.push_back(outcome_.shares[0].value_or(fp.zero()));
                out.push_back(send_to(me_, j, std::move(m)));
            }
            return out;
        }
        ShareSet w;
        for (int j = 0; j < sp_.n; ++j) {
            if (j != sp_.dealer) w.insert(holder_rank(j), PayloadReader(in.p2p(j, "rec-share"), fp).elem(0));
        }
        auto q = rs_decode(sp_.t, sp_.t, w, fp);
        if (q) {
            finish_reconstruction(std::vector<Fe>{q->eval(fp.zero())});
        } else {
            finish_reconstruction(std::nullopt);
        }
        return out;
    }
};

// ---------------------------------------------------------------- replicated scheme

std::vector<PartySet> all_t_subsets(int n, int t) {
    std::vector<PartySet> out;
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
        if (std::popcount(bits) == t) out.push_back(PartySet::from_bits(bits));
    }
    // Lexicographic order of sorted member lists.
    std::sort(out.begin(), out.end(), [](const PartySet& a, const PartySet& b) { return a.members() < b.members(); });
    return out;
}

class Replicated final : public SyncVssParty {
public:
    Replicated(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : SyncVssParty(sp, id, std::move(secrets), std::move(rng)) {
        for (const auto& excluded : all_t_subsets(sp.n, sp.t)) groups_.push_back(PartySet::all(sp.n) - excluded);
        outcome_.pieces.assign(groups_.size(), std::nullopt);
    }

protected:
    std::vector<Outgoing> share_round(int round, const Inbox& in) override {
        const FieldParams& fp = sp_.fp;
        const int n = sp_.n;
        const size_t K = groups_.size();
        std::vector<Outgoing> out;
        switch (round) {
            case 1: {
                if (is_dealer()) {
                    pieces_.clear();
                    Fe sum = fp.zero();
                    for (size_t k = 0; k + 1 < K; ++k) {
                        pieces_.push_back(rng_->field(p()));
                        sum += pieces_.back();
                    }
                    pieces_.push_back(secrets_.at(0) - sum);
                    for (int i = 0; i < n; ++i) {
                        Payload m = msg("deal");
                        for (size_t k = 0; k < K; ++k) {
                            if (!groups_[k].contains(i)) continue;
                            m.ids.push_back(static_cast<int>(k));
                            m.elems.push_back(pieces_[k]);
                        }
                        out.push_back(send_to(me_, i, std::move(m)));
                    }
                }
                pads_.assign(K, std::vector<Fe>(static_cast<size_t>(n), fp.zero()));
                for (int j = me_ + 1; j < n; ++j) {
                    Payload m = msg("pad");
                    for (size_t k = 0; k < K; ++k) {
                        if (!groups_[k].contains(me_) || !groups_[k].contains(j)) continue;
                        pads_[k][static_cast<size_t>(j)] = rng_->field(p(), DrawTag{j});
                        m.ids.push_back(static_cast<int>(k));
                        m.elems.push_back(pads_[k][static_cast<size_t>(j)]);
                    }
                    out.push_back(send_to(me_, j, std::move(m)));
                }
                break;
            }
            case 2: {
                PayloadReader deal(in.p2p(sp_.dealer, "deal"), fp);
                held_.assign(K, fp.zero());
                for (size_t x = 0; x < deal.id_count(); ++x) {
                    const int k = deal.id(x);
                    if (k >= 0 && static_cast<size_t>(k) < K && groups_[static_cast<size_t>(k)].contains(me_)) held_[static_cast<size_t>(k)] = deal.elem(x);
                }
                for (int j = 0; j < me_; ++j) {
                    PayloadReader r(in.p2p(j, "pad"), fp);
                    for (size_t x = 0; x < r.id_count(); ++x) {
                        const int k = r.id(x);
                        if (k >= 0 && static_cast<size_t>(k) < K) pads_[static_cast<size_t>(k)][static_cast<size_t>(j)] = r.elem(x);
                    }
                }
                Payload m = msg("masked");
                for (size_t k = 0; k < K; ++k) {
                    if (!groups_[k].contains(me_)) continue;
                    for (int j : groups_[k].members()) {
                        if (j == me_) continue;
                        m.ids.insert(m.ids.end(), {static_cast<int>(k), j});
                        m.elems.push_back(held_[k] + pads_[k][static_cast<size_t>(j)]);
                    }
                }
                out.push_back(broadcast_msg(me_, std::move(m)));
                break;
            }
            case 3: {
                std::map<std::tuple<int, int, int>, Fe> masked;
                for (int i = 0; i < n; ++i) {
                    PayloadReader r(in.bcast(i, "masked"), fp);
                    for (size_t x = 0; 2 * x + 1 < r.id_count(); ++x) masked.emplace(std::tuple{r.id(2 * x), i, r.id(2 * x + 1)}, r.elem(x));
                }
                auto value = [&](int k, int i, int j) {
                    auto it = masked.find({k, i, j});
                    return it == masked.end() ? fp.zero() : it->second;
                };
                conflicted_.assign(K, false);
                for (size_t k = 0; k < K; ++k) {
                    auto members = groups_[k].members();
                    for (size_t a = 0; a < members.size(); ++a) {
                        for (size_t b = a + 1; b < members.size(); ++b) {
                            if (value(static_cast<int>(k), members[a], members[b]) != value(static_cast<int>(k), members[b], members[a])) {
                                conflicted_[k] = true;
                            }
                        }
                    }
                }
                if (is_dealer()) {
                    Payload m = msg("reveal");
                    for (size_t k = 0; k < K; ++k) {
                        if (!conflicted_[k]) continue;
                        m.ids.push_back(static_cast<int>(k));
                        m.elems.push_back(pieces_[k]);
                    }
                    out.push_back(broadcast_msg(me_, std::move(m)));
                }
                break;
            }
            default: {
                PayloadReader r(in.bcast(sp_.dealer, "reveal"), fp);
                auto revealed = id_values(r);
                for (size_t k = 0; k < K; ++k) {
                    if (conflicted_[k]) held_[k] = value_or_zero(revealed, static_cast<int>(k), fp);
                    if (groups_[k].contains(me_)) outcome_.pieces[k] = held_[k];
                }
                finish_sharing();
            }
        }
        return out;
    }

    std::vector<Outgoing> rec_round(int round, const Inbox& in) override {
        const FieldParams& fp = sp_.fp;
        const size_t K = groups_.size();
        std::vector<Outgoing> out;
        if (round == 1) {
            for (int j = 0; j < sp_.n; ++j) {
                Payload m = msg("rec-pieces");
                for (size_t k = 0; k < K; ++k) {
                    if (!groups_[k].contains(me_) || groups_[k].contains(j)) continue;
                    m.ids.push_back(static_cast<int>(k));
                    m.elems.push_back(held_[k]);
                }
                if (!m.ids.empty()) out.push_back(send_to(me_, j, std::move(m)));
            }
            return out;
        }
        Fe secret = fp.zero();
        for (size_t k = 0; k < K; ++k) {
            if (groups_[k].contains(me_)) {
                secret += held_[k];
                continue;
            }
            std::map<uint64_t, int> votes;
            for (int j : groups_[k].members()) {
                auto vals = id_values(PayloadReader(in.p2p(j, "rec-pieces"), fp));
                ++votes[value_or_zero(vals, static_cast<int>(k), fp).value()];
            }
            Fe piece = fp.zero();
            for (const auto& [v, count] : votes) {
                if (count >= sp_.t + 1) piece = fp.elem(v);
            }
            secret += piece;
        }
        finish_reconstruction(std::vector<Fe>{secret});
        return out;
    }

private:
    std::vector<PartySet> groups_;
    std::vector<Fe> pieces_;
    std::vector<Fe> held_;
    std::vector<std::vector<Fe>> pads_;
    std::vector<bool> conflicted_;
};

}  // namespace

const std::vector<SyncSchemeInfo>& sync_schemes() {
    static const std::vector<SyncSchemeInfo> table{
        {"7BGW", 7, 5, 1, 3, "type-II"},
        {"5BGW", 5, 3, 1, 3, "type-II"},
        {"4GIKR", 4, 3, 1, 3, "type-II"},
        {"3GIKR", 3, 2, 1, 3, "replicated"},
        {"3FGGRS-WSS", 3, 2, 1, 3, "wss"},
        {"3FGGRS", 3, 2, 1, 3, "type-I"},
        {"3KKK-WSS", 3, 1, 1, 3, "wss"},
        {"3KKK", 3, 1, 1, 3, "type-II"},
        {"3AKP", 3, 2, 1, 3, "type-II"},
        {"2GIKR", 2, 1, 1, 4, "type-II"},
        {"1GIKR", 1, 0, 1, 4, "one-shot"},
    };
    return table;
}

const SyncSchemeInfo* find_sync_scheme(const std::string& name) {
    for (const auto& info : sync_schemes()) {
        if (info.name == name) return &info;
    }
    return nullptr;
}

void check_sync_bounds(const std::string& scheme, int n, int t) {
    const SyncSchemeInfo* info = find_sync_scheme(scheme);
    if (info == nullptr) throw ConfigInvalid("unknown synchronous scheme: " + scheme);
    if (t < 1 || n > 64) throw ConfigBound(scheme + " needs t >= 1 and n <= 64");
    if (n <= info->resilience_factor * t) {
        throw ConfigBound(scheme + " needs n > " + std::to_string(info->resilience_factor) + "t");
    }
    if (scheme == "1GIKR" && (n != 5 || t != 1)) throw ConfigBound("1GIKR is defined for n = 5, t = 1 only");
    if (scheme == "3GIKR" && n > 8) throw ConfigBound("3GIKR is limited to n <= 8");
}

std::unique_ptr<SyncVssParty> make_sync_party(const std::string& scheme, const SchemeParams& sp, int id,
                                              std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng) {
    if (scheme == "7BGW") return std::make_unique<Bgw7>(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "5BGW") return std::make_unique<Bgw5>(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "4GIKR") return std::make_unique<PadScheme>(sp, id, std::move(secrets), std::move(rng), false);
    if (scheme == "3FGGRS-WSS") return std::make_unique<PadScheme>(sp, id, std::move(secrets), std::move(rng), true);
    if (scheme == "3FGGRS") return std::make_unique<FggrsStrong>(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "3KKK-WSS") return std::make_unique<KkkWeak>(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "3KKK") return std::make_unique<KkkStrong>(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "3AKP") return std::make_unique<AkpStrong>(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "2GIKR") return std::make_unique<GikrStar>(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "1GIKR") return std::make_unique<GikrOneRound>(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "3GIKR") return std::make_unique<Replicated>(sp, id, std::move(secrets), std::move(rng));
    throw ConfigInvalid("unknown synchronous scheme: " + scheme);
}

}  // namespace vsslab
