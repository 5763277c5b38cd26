#include "wss_components.hpp"

namespace vsslab::detail {

namespace {

Payload make_payload(std::string type) {
    Payload m;
    m.type = std::move(type);
    return m;
}

Fe lookup(const std::map<PairKey, Fe>& table, PairKey key, const FieldParams& fp) {
    auto it = table.find(key);
    return it == table.end() ? fp.zero() : it->second;
}

bool valid_party(int id, int n) { return id >= 0 && id < n; }

}  // namespace

// ---------------------------------------------------------------- PadWss

PadWss::PadWss(const SchemeParams& sp, int me, int dealer, std::string tag, RandomSource& rng)
    : sp_(sp), me_(me), dealer_(dealer), tag_(std::move(tag)), rng_(rng), row_(sp.fp.p()), col_(sp.fp.p()),
      pad_sent_(static_cast<size_t>(sp.n), sp.fp.zero()), pad_recv_(static_cast<size_t>(sp.n), sp.fp.zero()) {}

void PadWss::set_polynomial(const UniPoly& q) {
    std::vector<UniPoly> qs{q};
    F_ = embed_bivariate(qs, EmbedMode::at_x0, sp_.t, sp_.t, rng_);
}

void PadWss::round1(std::vector<Outgoing>& out) {
    const FieldParams& fp = sp_.fp;
    if (me_ == dealer_ && F_) {
        for (int i = 0; i < sp_.n; ++i) {
            Payload m = make_payload(type("deal"));
            append_poly(m, F_->row_at(fp.alpha(i)), sp_.t);
            append_poly(m, F_->col_at(fp.alpha(i)), sp_.t);
            out.push_back(send_to(me_, i, std::move(m)));
        }
    }
    for (int j = 0; j < sp_.n; ++j) {
        pad_sent_[static_cast<size_t>(j)] = rng_.field(fp.p(), DrawTag{j});
        Payload m = make_payload(type("pad"));
        m.elems.push_back(pad_sent_[static_cast<size_t>(j)]);
        out.push_back(send_to(me_, j, std::move(m)));
    }
}

void PadWss::round2(const Inbox& in, std::vector<Outgoing>& out) {
    const FieldParams& fp = sp_.fp;
    PayloadReader deal(in.p2p(dealer_, type("deal")), fp);
    row_ = read_poly(deal, 0, sp_.t, fp.p());
    col_ = read_poly(deal, static_cast<size_t>(sp_.t + 1), sp_.t, fp.p());
    for (int j = 0; j < sp_.n; ++j) pad_recv_[static_cast<size_t>(j)] = PayloadReader(in.p2p(j, type("pad")), fp).elem(0);
    Payload m = make_payload(type("masked"));
    for (int j = 0; j < sp_.n; ++j) m.elems.push_back(row_.eval(fp.alpha(j)) + pad_sent_[static_cast<size_t>(j)]);
    for (int j = 0; j < sp_.n; ++j) m.elems.push_back(col_.eval(fp.alpha(j)) + pad_recv_[static_cast<size_t>(j)]);
    out.push_back(broadcast_msg(me_, std::move(m)));
}

void PadWss::round3(const Inbox& in, std::vector<Outgoing>& out) {
    const FieldParams& fp = sp_.fp;
    const size_t n = static_cast<size_t>(sp_.n);
    std::vector<PayloadReader> masked;
    for (int k = 0; k < sp_.n; ++k) masked.emplace_back(in.bcast(k, type("masked")), fp);
    disputes_.clear();
    for (int i = 0; i < sp_.n; ++i) {
        for (int j = 0; j < sp_.n; ++j) {
            Fe a_ij = masked[static_cast<size_t>(i)].elem(static_cast<size_t>(j));
            Fe b_ji = masked[static_cast<size_t>(j)].elem(n + static_cast<size_t>(i));
            if (a_ij != b_ji) disputes_.emplace_back(i, j);
        }
    }
    if (me_ == dealer_ && F_) {
        Payload m = make_payload(type("resolve"));
        for (auto [i, j] : disputes_) {
            m.ids.push_back(i);
            m.ids.push_back(j);
            m.elems.push_back(F_->eval(fp.alpha(j), fp.alpha(i)));
        }
        out.push_back(broadcast_msg(me_, std::move(m)));
    }
    Payload m = make_payload(type("dispute"));
    for (auto [i, j] : disputes_) {
        if (i == me_) {
            m.ids.insert(m.ids.end(), {0, j});
            m.elems.push_back(row_.eval(fp.alpha(j)));
        }
        if (j == me_) {
            m.ids.insert(m.ids.end(), {1, i});
            m.elems.push_back(col_.eval(fp.alpha(i)));
        }
    }
    out.push_back(broadcast_msg(me_, std::move(m)));
}

void PadWss::conclude(const Inbox& in) {
    const FieldParams& fp = sp_.fp;
    std::map<PairKey, Fe> resolved, row_vals, col_vals;
    PayloadReader res(in.bcast(dealer_, type("resolve")), fp);
    for (size_t k = 0; 2 * k + 1 < res.id_count(); ++k) resolved.emplace(PairKey{res.id(2 * k), res.id(2 * k + 1)}, res.elem(k));
    for (int party = 0; party < sp_.n; ++party) {
        PayloadReader r(in.bcast(party, type("dispute")), fp);
        for (size_t k = 0; 2 * k + 1 < r.id_count(); ++k) {
            const int role = r.id(2 * k);
            const int other = r.id(2 * k + 1);
            if (!valid_party(other, sp_.n)) continue;
            if (role == 0) row_vals.emplace(PairKey{party, other}, r.elem(k));
            if (role == 1) col_vals.emplace(PairKey{other, party}, r.elem(k));
        }
    }
    unhappy_ = PartySet{};
    for (auto key : disputes_) {
        Fe d = lookup(resolved, key, fp);
        if (lookup(row_vals, key, fp) != d) unhappy_.insert(key.first);
        if (lookup(col_vals, key, fp) != d) unhappy_.insert(key.second);
    }
    discarded_ = unhappy_.size() > sp_.t;
}

void PadWss::round4(std::vector<Outgoing>& out) {
    const FieldParams& fp = sp_.fp;
    if (me_ == dealer_ && F_) {
        Payload m = make_payload(type("uh-rows"));
        for (int i : unhappy_.members()) {
            m.ids.push_back(i);
            append_poly(m, F_->row_at(fp.alpha(i)), sp_.t);
        }
        out.push_back(broadcast_msg(me_, std::move(m)));
    }
    if (!unhappy_.contains(me_)) {
        Payload m = make_payload(type("uh-vals"));
        for (int i : unhappy_.members()) {
            m.ids.push_back(i);
            m.elems.push_back(col_.eval(fp.alpha(i)));
        }
        out.push_back(broadcast_msg(me_, std::move(m)));
    }
}

bool PadWss::conclude4(const Inbox& in) {
    if (discarded_) return false;
    const FieldParams& fp = sp_.fp;
    PayloadReader rows(in.bcast(dealer_, type("uh-rows")), fp);
    for (int i : unhappy_.members()) {
        UniPoly f_i(fp.p());
        for (size_t k = 0; k < rows.id_count(); ++k) {
            if (rows.id(k) == i) {
                f_i = read_poly(rows, k * static_cast<size_t>(sp_.t + 1), sp_.t, fp.p());
                break;
            }
        }
        int matches = 0;
        for (int j : (PartySet::all(sp_.n) - unhappy_).members()) {
            PayloadReader vals(in.bcast(j, type("uh-vals")), fp);
            Fe v = fp.zero();
            for (size_t k = 0; k < vals.id_count(); ++k) {
                if (vals.id(k) == i) v = vals.elem(k);
            }
            if (v == f_i.eval(fp.alpha(j))) ++matches;
        }
        if (matches <= 2 * sp_.t) {
            discarded_ = true;
            return false;
        }
        if (i == me_) row_ = f_i;
    }
    return true;
}

void PadWss::rec_round1(std::vector<Outgoing>& out) const {
    if (discarded_) return;
    reveal_slices(sp_, me_, happy(), row_, col_, "rec-" + tag_ + "reveal", out);
}

std::optional<UniPoly> PadWss::rec_conclude(const Inbox& in) const {
    if (discarded_) return UniPoly(sp_.fp.p());
    return weak_reconstruct(sp_, happy(), in, "rec-" + tag_ + "reveal");
}

// ---------------------------------------------------------------- KkkWss

KkkWss::KkkWss(const SchemeParams& sp, int me, int dealer, std::string tag, RandomSource& rng)
    : sp_(sp), me_(me), dealer_(dealer), tag_(std::move(tag)), rng_(rng), row_(sp.fp.p()), col_(sp.fp.p()),
      pad_sent_(static_cast<size_t>(sp.n), sp.fp.zero()), pad_recv_(static_cast<size_t>(sp.n), sp.fp.zero()),
      registered_(static_cast<size_t>(sp.n)), confirmed_(static_cast<size_t>(sp.n)) {}

void KkkWss::set_polynomial(const UniPoly& q) {
    std::vector<UniPoly> qs{q};
    F_ = embed_bivariate(qs, EmbedMode::at_x0, sp_.t, sp_.t, rng_);
}

void KkkWss::round1(std::vector<Outgoing>& out) {
    const FieldParams& fp = sp_.fp;
    if (me_ == dealer_ && F_) {
        for (int i = 0; i < sp_.n; ++i) {
            Payload m = make_payload(type("deal"));
            append_poly(m, F_->row_at(fp.alpha(i)), sp_.t);
            append_poly(m, F_->col_at(fp.alpha(i)), sp_.t);
            out.push_back(send_to(me_, i, std::move(m)));
        }
    }
    Payload reg = make_payload(type("pad-register"));
    for (int j = 0; j < sp_.n; ++j) {
        pad_sent_[static_cast<size_t>(j)] = rng_.field(fp.p(), DrawTag{j});
        Payload m = make_payload(type("pad"));
        m.elems.push_back(pad_sent_[static_cast<size_t>(j)]);
        out.push_back(send_to(me_, j, std::move(m)));
        reg.elems.push_back(pad_sent_[static_cast<size_t>(j)]);
    }
    out.push_back(send_to(me_, dealer_, std::move(reg)));
}

void KkkWss::round2(const Inbox& in, std::vector<Outgoing>& out) {
    const FieldParams& fp = sp_.fp;
    const size_t n = static_cast<size_t>(sp_.n);
    PayloadReader deal(in.p2p(dealer_, type("deal")), fp);
    row_ = read_poly(deal, 0, sp_.t, fp.p());
    col_ = read_poly(deal, static_cast<size_t>(sp_.t + 1), sp_.t, fp.p());
    for (int j = 0; j < sp_.n; ++j) pad_recv_[static_cast<size_t>(j)] = PayloadReader(in.p2p(j, type("pad")), fp).elem(0);
    if (me_ == dealer_) {
        for (int j = 0; j < sp_.n; ++j) registered_[static_cast<size_t>(j)] = PayloadReader(in.p2p(j, type("pad-register")), fp).elems(0, n);
    }
    for (int j = 0; j < sp_.n; ++j) {
        Payload m = make_payload(type("pair"));
        m.elems.push_back(row_.eval(fp.alpha(j)));
        m.elems.push_back(col_.eval(fp.alpha(j)));
        out.push_back(send_to(me_, j, std::move(m)));
    }
    Payload confirm = make_payload(type("pad-confirm"));
    confirm.elems = pad_recv_;
    out.push_back(send_to(me_, dealer_, std::move(confirm)));
}

void KkkWss::round3(const Inbox& in, std::vector<Outgoing>& out) {
    const FieldParams& fp = sp_.fp;
    const size_t n = static_cast<size_t>(sp_.n);
    if (me_ == dealer_) {
        for (int k = 0; k < sp_.n; ++k) confirmed_[static_cast<size_t>(k)] = PayloadReader(in.p2p(k, type("pad-confirm")), fp).elems(0, n);
    }
    Payload verdict = make_payload(type("verdict"));
    for (int j = 0; j < sp_.n; ++j) {
        PayloadReader pair(in.p2p(j, type("pair")), fp);
        const Fe row_val = row_.eval(fp.alpha(j));
        const Fe col_val = col_.eval(fp.alpha(j));
        const Fe r_out = pad_sent_[static_cast<size_t>(j)];
        const Fe r_in = pad_recv_[static_cast<size_t>(j)];
        const bool row_bad = pair.elem(1) != row_val;
        const bool col_bad = pair.elem(0) != col_val;
        verdict.ids.push_back(row_bad ? 1 : 0);
        verdict.ids.push_back(col_bad ? 1 : 0);
        if (row_bad) {
            verdict.elems.insert(verdict.elems.end(), {row_val, r_out});
        } else {
            verdict.elems.push_back(row_val + r_out);
        }
        if (col_bad) {
            verdict.elems.insert(verdict.elems.end(), {col_val, r_in});
        } else {
            verdict.elems.push_back(col_val + r_in);
        }
    }
    out.push_back(broadcast_msg(me_, std::move(verdict)));
    if (me_ == dealer_ && F_) {
        Payload check = make_payload(type("pad-check"));
        for (int j = 0; j < sp_.n; ++j) {
            for (int k = 0; k < sp_.n; ++k) {
                const Fe r1 = registered_[static_cast<size_t>(j)][static_cast<size_t>(k)];
                const Fe r2 = confirmed_[static_cast<size_t>(k)][static_cast<size_t>(j)];
                const Fe v = F_->eval(fp.alpha(k), fp.alpha(j));
                check.ids.push_back(r1 != r2 ? 1 : 0);
                check.elems.push_back(r1 != r2 ? v : v + r1);
            }
        }
        out.push_back(broadcast_msg(me_, std::move(check)));
    }
}

namespace {

struct VerdictEntry {
    bool disagree = false;
    Fe value;
    Fe pad;
};

// Parses a verdict broadcast into per-peer row and column entries.
void parse_verdict(const PayloadReader& r, int n, std::vector<VerdictEntry>& rows, std::vector<VerdictEntry>& cols,
                   const FieldParams& fp) {
    rows.assign(static_cast<size_t>(n), VerdictEntry{false, fp.zero(), fp.zero()});
    cols = rows;
    size_t cursor = 0;
    for (int j = 0; j < n; ++j) {
        const bool row_bad = r.id(2 * static_cast<size_t>(j), 0) == 1;
        const bool col_bad = r.id(2 * static_cast<size_t>(j) + 1, 0) == 1;
        rows[static_cast<size_t>(j)] = {row_bad, r.elem(cursor), row_bad ? r.elem(cursor + 1) : fp.zero()};
        cursor += row_bad ? 2 : 1;
        cols[static_cast<size_t>(j)] = {col_bad, r.elem(cursor), col_bad ? r.elem(cursor + 1) : fp.zero()};
        cursor += col_bad ? 2 : 1;
    }
}

}  // namespace

void KkkWss::conclude(const Inbox& in) {
    const FieldParams& fp = sp_.fp;
    const int n = sp_.n;
    std::vector<std::vector<VerdictEntry>> rows(static_cast<size_t>(n)), cols(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        parse_verdict(PayloadReader(in.bcast(k, type("verdict")), fp), n, rows[static_cast<size_t>(k)],
                      cols[static_cast<size_t>(k)], fp);
    }
    PayloadReader check(in.bcast(dealer_, type("pad-check")), fp);
    unhappy_ = PartySet{};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const VerdictEntry& row = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            const VerdictEntry& col = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (!row.disagree || !col.disagree || row.pad != col.pad) continue;
            const size_t idx = static_cast<size_t>(i * n + j);
            const bool unequal = check.id(idx, 0) == 1;
            const Fe d = check.elem(idx);
            const Fe shift = unequal ? fp.zero() : row.pad;
            if (d != row.value + shift) unhappy_.insert(i);
            if (d != col.value + shift) unhappy_.insert(j);
        }
    }
    discarded_ = unhappy_.size() > sp_.t;
}

void KkkWss::rec_round1(std::vector<Outgoing>& out) const {
    if (discarded_) return;
    reveal_slices(sp_, me_, happy(), row_, col_, "rec-" + tag_ + "reveal", out);
}

std::optional<UniPoly> KkkWss::rec_conclude(const Inbox& in) const {
    if (discarded_) return UniPoly(sp_.fp.p());
    return weak_reconstruct(sp_, happy(), in, "rec-" + tag_ + "reveal");
}

// ---------------------------------------------------------------- weak reconstruction

void reveal_slices(const SchemeParams& sp, int me, const PartySet& happy, const UniPoly& row, const UniPoly& col,
                   const std::string& type, std::vector<Outgoing>& out) {
    if (!happy.contains(me)) return;
    Payload m = make_payload(type);
    append_poly(m, row, sp.t);
    append_poly(m, col, sp.t);
    out.push_back(broadcast_msg(me, std::move(m)));
}

std::optional<UniPoly> weak_reconstruct(const SchemeParams& sp, const PartySet& happy, const Inbox& in,
                                        const std::string& type) {
    const FieldParams& fp = sp.fp;
    std::vector<UniPoly> rows(static_cast<size_t>(sp.n), UniPoly(fp.p()));
    std::vector<UniPoly> cols = rows;
    for (int j : happy.members()) {
        PayloadReader r(in.bcast(j, type), fp);
        rows[static_cast<size_t>(j)] = read_poly(r, 0, sp.t, fp.p());
        cols[static_cast<size_t>(j)] = read_poly(r, static_cast<size_t>(sp.t + 1), sp.t, fp.p());
    }
    ConsistencyGraph g(sp.n);
    for (int j : happy.members()) {
        for (int k : happy.members()) {
            if (k <= j) continue;
            const auto& fj = rows[static_cast<size_t>(j)];
            const auto& gj = cols[static_cast<size_t>(j)];
            const auto& fk = rows[static_cast<size_t>(k)];
            const auto& gk = cols[static_cast<size_t>(k)];
            if (fj.eval(fp.alpha(k)) == gk.eval(fp.alpha(j)) && gj.eval(fp.alpha(k)) == fk.eval(fp.alpha(j))) {
                g.add_edge(j, k);
            }
        }
    }
    PartySet survivors = prune_low_degree(g, sp.n - sp.t, happy);
    if (survivors.size() < sp.n - sp.t) return std::nullopt;
    std::vector<Point> pts;
    for (int j : survivors.members()) pts.emplace_back(fp.alpha(j), rows[static_cast<size_t>(j)].eval(fp.zero()));
    return fit_exact(pts, sp.t);
}

}  // namespace vsslab::detail
