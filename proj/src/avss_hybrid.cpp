#include <map>

#include "avss_internal.hpp"
#include "vsslab/bipoly.hpp"
#include "vsslab/errors.hpp"

namespace vsslab::detail {
namespace {

// One weak polynomial sharing instance: a synchronous round of rows, pads and pad registration,
// then asynchronous mask verification, public common values and the dealer's set W.
class WpsInstance {
public:
    struct Values {
        std::vector<Fe> a, b;
        PartySet conflicts;
        std::optional<UniPoly> extra;
    };

    WpsInstance(const SchemeParams& sp, int me, int dealer, std::string tag, RandomSource& rng, bool publishes_w)
        : sp_(sp), me_(me), dealer_(dealer), tag_(std::move(tag)), rng_(rng), publishes_w_(publishes_w),
          row_(sp.fp.p()), sent_(static_cast<size_t>(sp.n), sp.fp.zero()), recv_(sent_),
          registered_(static_cast<size_t>(sp.n), std::vector<Fe>(static_cast<size_t>(sp.n), sp.fp.zero())),
          confirmed_(static_cast<size_t>(sp.n)), conflicts_sent_(static_cast<size_t>(sp.n)),
          values_(static_cast<size_t>(sp.n)) {}

    void set_polynomial(const UniPoly& f) { input_ = f; }
    void set_extra(const UniPoly& poly) { extra_ = poly; }

    void sync_round(std::vector<Outgoing>& out) {
        const FieldParams& fp = sp_.fp;
        if (me_ == dealer_ && input_) {
            std::vector<UniPoly> qs{*input_};
            F_ = embed_bivariate(qs, EmbedMode::symmetric_x0, sp_.t, sp_.t, rng_);
            for (int i = 0; i < sp_.n; ++i) {
                Payload m{tag_ + "deal", {}, {}};
                append_poly(m, F_->row_at(fp.alpha(i)), sp_.t);
                out.push_back(send_to(me_, i, std::move(m)));
            }
        }
        for (int j = 0; j < sp_.n; ++j) {
            if (j == me_) continue;
            sent_[static_cast<size_t>(j)] = rng_.field(fp.p(), DrawTag{j});
            out.push_back(send_to(me_, j, Payload{tag_ + "pad", {sent_[static_cast<size_t>(j)]}, {}}));
        }
        out.push_back(send_to(me_, dealer_, Payload{tag_ + "pad-register", sent_, {}}));
    }

    void sync_end(const Inbox& in) {
        const FieldParams& fp = sp_.fp;
        row_ = read_poly(PayloadReader(in.p2p(dealer_, tag_ + "deal"), fp), 0, sp_.t, fp.p());
        for (int j = 0; j < sp_.n; ++j) {
            if (j != me_) recv_[static_cast<size_t>(j)] = PayloadReader(in.p2p(j, tag_ + "pad"), fp).elem(0);
        }
        if (me_ != dealer_) return;
        for (int i = 0; i < sp_.n; ++i) {
            registered_[static_cast<size_t>(i)] = PayloadReader(in.p2p(i, tag_ + "pad-register"), fp).elems(0, static_cast<size_t>(sp_.n));
        }
    }

    // Joins the asynchronous phase by reporting the received pads to the dealer.
    void start(std::vector<Outgoing>& out) {
        if (started_) return;
        started_ = true;
        out.push_back(send_to(me_, dealer_, Payload{tag_ + "pad-confirm", recv_, {}}));
    }

    bool handle(const Envelope& env, std::vector<Outgoing>& out) {
        const std::string& type = env.msg.type;
        if (type.compare(0, tag_.size(), tag_) != 0) return false;
        const std::string_view kind = std::string_view(type).substr(tag_.size());
        PayloadReader r(&env.msg, sp_.fp);
        if (env.kind == Channel::p2p && kind == "pad-confirm") {
            on_confirm(env.sender, r, out);
        } else if (env.kind == Channel::p2p && kind == "conflicts") {
            on_conflicts(env.sender, r, out);
        } else if (env.kind == Channel::broadcast && kind == "values") {
            on_values(env.sender, r, out);
        } else if (env.kind == Channel::broadcast && kind == "W") {
            on_w(env.sender, r);
        } else {
            return false;
        }
        return true;
    }

    bool started() const { return started_; }
    bool finished() const { return finished_; }
    bool accepted() const { return accepted_; }
    const std::optional<Fe>& output() const { return output_; }
    const PartySet& w() const { return w_; }
    const PartySet& correct() const { return correct_; }
    const UniPoly& row() const { return row_; }
    const std::optional<Values>& values(int j) const { return values_[static_cast<size_t>(j)]; }

    bool pairwise_consistent(const PartySet& set) const {
        for (int j : set.members()) {
            for (int k : set.members()) {
                if (k <= j) continue;
                const Values& vj = *values_[static_cast<size_t>(j)];
                const Values& vk = *values_[static_cast<size_t>(k)];
                const size_t uj = static_cast<size_t>(j), uk = static_cast<size_t>(k);
                const bool j_in_ck = vk.conflicts.contains(j);
                const bool k_in_cj = vj.conflicts.contains(k);
                bool ok;
                if (j_in_ck && k_in_cj) {
                    ok = vj.b[uk] == vk.b[uj];
                } else if (j_in_ck) {
                    ok = vk.a[uj] == vj.b[uk];
                } else if (k_in_cj) {
                    ok = vj.a[uk] == vk.b[uj];
                } else {
                    ok = vj.a[uk] == vk.b[uj] && vk.a[uj] == vj.b[uk];
                }
                if (!ok) return false;
            }
        }
        return true;
    }

private:
    void on_confirm(int sender, const PayloadReader& r, std::vector<Outgoing>& out) {
        if (me_ != dealer_ || confirmed_[static_cast<size_t>(sender)]) return;
        auto& conf = confirmed_[static_cast<size_t>(sender)];
        conf = r.elems(0, static_cast<size_t>(sp_.n));
        PartySet conflicts;
        for (int j = 0; j < sp_.n; ++j) {
            if (j != sender && (*conf)[static_cast<size_t>(j)] != registered_[static_cast<size_t>(j)][static_cast<size_t>(sender)]) {
                conflicts.insert(j);
            }
        }
        conflicts_sent_[static_cast<size_t>(sender)] = conflicts;
        Payload m{tag_ + "conflicts", {}, {}};
        write_set(m.ids, conflicts);
        out.push_back(send_to(me_, sender, std::move(m)));
        evaluate(sender, out);
    }

    void on_conflicts(int sender, const PayloadReader& r, std::vector<Outgoing>& out) {
        if (sender != dealer_ || !started_ || values_sent_) return;
        size_t pos = 0;
        const PartySet conflicts = read_set(r, pos, sp_.n).value_or(PartySet{});
        values_sent_ = true;
        Payload m{tag_ + "values", {}, {}};
        // The own slot would expose the diagonal value unmasked; it is published as zero.
        for (int j = 0; j < sp_.n; ++j) {
            m.elems.push_back(j == me_ ? sp_.fp.zero() : row_.eval(sp_.fp.alpha(j)) + sent_[static_cast<size_t>(j)]);
        }
        for (int j = 0; j < sp_.n; ++j) {
            const Fe common = row_.eval(sp_.fp.alpha(j));
            if (j == me_) m.elems.push_back(sp_.fp.zero());
            else m.elems.push_back(conflicts.contains(j) ? common : common + recv_[static_cast<size_t>(j)]);
        }
        if (extra_) append_poly(m, *extra_, sp_.t);
        write_set(m.ids, conflicts);
        out.push_back(acast_msg(me_, std::move(m)));
    }

    void on_values(int sender, const PayloadReader& r, std::vector<Outgoing>& out) {
        auto& slot = values_[static_cast<size_t>(sender)];
        if (slot) return;
        const size_t n = static_cast<size_t>(sp_.n);
        size_t pos = 0;
        Values v{r.elems(0, n), r.elems(n, n), read_set(r, pos, sp_.n).value_or(PartySet{}), std::nullopt};
        if (r.elem_count() >= 2 * n + static_cast<size_t>(sp_.t + 1)) v.extra = read_poly(r, 2 * n, sp_.t, sp_.fp.p());
        slot = std::move(v);
        evaluate(sender, out);
        try_finish();
    }

    void on_w(int sender, const PayloadReader& r) {
        if (sender != dealer_ || w_received_) return;
        size_t pos = 0;
        auto w = read_set(r, pos, sp_.n);
        w_received_ = true;
        if (!w) {
            finished_ = true;
            return;
        }
        w_ = *w;
        try_finish();
    }

    // Dealer: marks `i` correct once its public values match F and the registered pads.
    void evaluate(int i, std::vector<Outgoing>& out) {
        const size_t ui = static_cast<size_t>(i);
        if (me_ != dealer_ || !F_ || correct_.contains(i) || !values_[ui] || !confirmed_[ui]) return;
        const Values& v = *values_[ui];
        if (!(v.conflicts == conflicts_sent_[ui])) return;
        for (int j = 0; j < sp_.n; ++j) {
            if (j == i) continue;
            const size_t uj = static_cast<size_t>(j);
            const Fe expected = F_->eval(sp_.fp.alpha(j), sp_.fp.alpha(i));
            if (v.a[uj] - registered_[ui][uj] != expected) return;
            const Fe b = v.conflicts.contains(j) ? v.b[uj] : v.b[uj] - (*confirmed_[ui])[uj];
            if (b != expected) return;
        }
        correct_.insert(i);
        if (publishes_w_ && !w_sent_ && correct_.size() >= 2 * sp_.t + 1) {
            w_sent_ = true;
            Payload m{tag_ + "W", {}, {}};
            write_set(m.ids, correct_);
            out.push_back(acast_msg(me_, std::move(m)));
        }
    }

    void try_finish() {
        if (!publishes_w_ || !w_received_ || finished_) return;
        for (int j : w_.members()) {
            if (!values_[static_cast<size_t>(j)]) return;
        }
        finished_ = true;
        if (w_.size() < 2 * sp_.t + 1 || !pairwise_consistent(w_)) return;
        accepted_ = true;
        if (w_.contains(me_)) {
            output_ = row_.eval(sp_.fp.zero());
            return;
        }
        std::vector<Point> pts;
        for (int j : w_.members()) {
            const Values& v = *values_[static_cast<size_t>(j)];
            const Fe b = v.b[static_cast<size_t>(me_)];
            pts.emplace_back(sp_.fp.alpha(j), v.conflicts.contains(me_) ? b : b - sent_[static_cast<size_t>(j)]);
        }
        if (auto f = fit_exact(pts, sp_.t)) output_ = f->eval(sp_.fp.zero());
    }

    SchemeParams sp_;
    int me_;
    int dealer_;
    std::string tag_;
    RandomSource& rng_;
    bool publishes_w_;
    std::optional<UniPoly> input_, extra_;
    std::optional<BiPoly> F_;
    UniPoly row_;
    std::vector<Fe> sent_, recv_;
    std::vector<std::vector<Fe>> registered_;
    std::vector<std::optional<std::vector<Fe>>> confirmed_;
    std::vector<PartySet> conflicts_sent_;
    std::vector<std::optional<Values>> values_;
    PartySet correct_;
    PartySet w_;
    bool started_ = false;
    bool values_sent_ = false;
    bool w_sent_ = false;
    bool w_received_ = false;
    bool finished_ = false;
    bool accepted_ = false;
    std::optional<Fe> output_;
};

class Wps final : public AsyncVssParty {
public:
    Wps(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : AsyncVssParty(sp, id, std::move(secrets), std::move(rng)), inst_(sp_, id, sp.dealer, "", *rng_, true) {}

protected:
    std::vector<Outgoing> share_sync_round() override {
        std::vector<Outgoing> out;
        if (is_dealer()) inst_.set_polynomial(sample_sharing_poly(secrets_.at(0), sp_.t, *rng_));
        inst_.sync_round(out);
        return out;
    }

    std::vector<Outgoing> share_sync_end(const Inbox& in) override {
        std::vector<Outgoing> out;
        inst_.sync_end(in);
        inst_.start(out);
        return out;
    }

    std::vector<Outgoing> share_deliver(const Envelope& env) override {
        std::vector<Outgoing> out;
        inst_.handle(env, out);
        if (inst_.accepted() && !outcome_.sharing_done) {
            outcome_.shares[0] = inst_.output();
            outcome_.accepted_set = inst_.w();
            finish_sharing();
        }
        return out;
    }

    std::vector<Outgoing> rec_start() override { return {}; }

private:
    WpsInstance inst_;
};

// Main instance plus one blinding instance per party; the dealer certifies (V, {W_j}).
class Pr final : public AsyncVssParty {
public:
    Pr(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : AsyncVssParty(sp, id, std::move(secrets), std::move(rng)), main_(sp_, id, sp.dealer, "", *rng_, false),
          gated_(static_cast<size_t>(sp.n), false) {
        for (int j = 0; j < sp.n; ++j) subs_.emplace_back(sp_, id, j, "w" + std::to_string(j + 1) + ":", *rng_, true);
    }

protected:
    std::vector<Outgoing> share_sync_round() override {
        std::vector<Outgoing> out;
        if (is_dealer()) main_.set_polynomial(sample_sharing_poly(secrets_.at(0), sp_.t, *rng_));
        blind_ = sample_sharing_poly(rng_->field(p()), sp_.t, *rng_);
        subs_[static_cast<size_t>(me_)].set_polynomial(blind_);
        main_.sync_round(out);
        for (auto& s : subs_) s.sync_round(out);
        return out;
    }

    std::vector<Outgoing> share_sync_end(const Inbox& in) override {
        std::vector<Outgoing> out;
        main_.sync_end(in);
        for (auto& s : subs_) s.sync_end(in);
        main_.set_extra(blind_ + main_.row());
        main_.start(out);
        return out;
    }

    std::vector<Outgoing> share_deliver(const Envelope& env) override {
        std::vector<Outgoing> out;
        bool handled = false;
        for (auto& s : subs_) {
            if (s.handle(env, out)) {
                handled = true;
                break;
            }
        }
        if (!handled && env.kind == Channel::broadcast && env.msg.type == "V") {
            on_certificate(env);
        } else if (!handled) {
            main_.handle(env, out);
        }
        update_participation(out);
        if (is_dealer()) certify(out);
        try_accept();
        return out;
    }

private:
    void update_participation(std::vector<Outgoing>& out) {
        for (int j = 0; j < sp_.n; ++j) {
            if (gated_[static_cast<size_t>(j)]) continue;
            const auto& v = main_.values(j);
            if (!v || !v->extra) continue;
            gated_[static_cast<size_t>(j)] = true;
            WpsInstance& sub = subs_[static_cast<size_t>(j)];
            if (v->extra->eval(alpha(me_)) == sub.row().eval(sp_.fp.zero()) + main_.row().eval(alpha(j))) sub.start(out);
        }
    }

    void certify(std::vector<Outgoing>& out) {
        if (certified_) return;
        PartySet cand = main_.correct();
        for (int j : cand.members()) {
            if (!subs_[static_cast<size_t>(j)].accepted()) cand.erase(j);
        }
        for (bool changed = true; changed;) {
            changed = false;
            for (int j : cand.members()) {
                if ((cand & subs_[static_cast<size_t>(j)].w()).size() < 2 * sp_.t + 1) {
                    cand.erase(j);
                    changed = true;
                }
            }
        }
        if (cand.size() < 2 * sp_.t + 1) return;
        certified_ = true;
        Payload m{"V", {}, {}};
        write_set(m.ids, cand);
        for (int j : cand.members()) write_set(m.ids, subs_[static_cast<size_t>(j)].w());
        out.push_back(acast_msg(me_, std::move(m)));
    }

    void on_certificate(const Envelope& env) {
        if (env.sender != sp_.dealer || cert_received_) return;
        cert_received_ = true;
        PayloadReader r(&env.msg, sp_.fp);
        size_t pos = 0;
        auto v = read_set(r, pos, sp_.n);
        if (!v) {
            rejected_ = true;
            return;
        }
        v_ = *v;
        for (int j : v_.members()) {
            auto w = read_set(r, pos, sp_.n);
            if (!w) {
                rejected_ = true;
                return;
            }
            w_claims_.emplace(j, *w);
        }
    }

    void try_accept() {
        if (!cert_received_ || rejected_ || outcome_.sharing_done) return;
        if (v_.size() < 2 * sp_.t + 1) {
            rejected_ = true;
            return;
        }
        for (int j : v_.members()) {
            const WpsInstance& sub = subs_[static_cast<size_t>(j)];
            if (!main_.values(j)) return;
            if (!sub.finished()) return;
            if (!sub.accepted() || !(sub.w() == w_claims_.at(j)) || (v_ & sub.w()).size() < 2 * sp_.t + 1) {
                rejected_ = true;
                return;
            }
        }
        if (!main_.pairwise_consistent(v_)) {
            rejected_ = true;
            return;
        }
        outcome_.accepted_set = v_;
        if (v_.contains(me_)) {
            outcome_.shares[0] = main_.row().eval(sp_.fp.zero());
        } else {
            std::vector<Point> pts;
            for (int j : v_.members()) {
                const auto& r_ji = subs_[static_cast<size_t>(j)].output();
                const auto& d_j = main_.values(j)->extra;
                if (!r_ji || !d_j) continue;
                pts.emplace_back(alpha(j), d_j->eval(alpha(me_)) - *r_ji);
            }
            if (static_cast<int>(pts.size()) >= sp_.t + 1) {
                if (auto f = fit_exact(pts, sp_.t)) outcome_.shares[0] = f->eval(sp_.fp.zero());
            }
        }
        finish_sharing();
    }

    WpsInstance main_;
    std::vector<WpsInstance> subs_;
    UniPoly blind_{2};
    std::vector<bool> gated_;
    bool certified_ = false;
    bool cert_received_ = false;
    bool rejected_ = false;
    PartySet v_;
    std::map<int, PartySet> w_claims_;
};

}  // namespace

std::unique_ptr<AsyncVssParty> make_wps(const SchemeParams& sp, int id, std::vector<Fe> secrets,
                                        std::shared_ptr<RandomSource> rng) {
    return std::make_unique<Wps>(sp, id, std::move(secrets), std::move(rng));
}

std::unique_ptr<AsyncVssParty> make_pr(const SchemeParams& sp, int id, std::vector<Fe> secrets,
                                       std::shared_ptr<RandomSource> rng) {
    return std::make_unique<Pr>(sp, id, std::move(secrets), std::move(rng));
}

}  // namespace vsslab::detail
