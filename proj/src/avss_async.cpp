#include <map>

#include "avss_internal.hpp"
#include "vsslab/bipoly.hpp"
#include "vsslab/codes.hpp"
#include "vsslab/errors.hpp"

namespace vsslab::detail {
namespace {

// Distribution, pairwise checks, OK graph and certificate acceptance shared by the three
// asynchronous schemes. Each party ends with its degree-t polynomial `mine`; the pairwise
// partner polynomial `other` has degree other_degree.
class AvssCore {
public:
    enum class Cert { star, ef };

    AvssCore(const SchemeParams& sp, int me, std::string tag, Cert cert, int other_degree)
        : sp_(sp), me_(me), tag_(std::move(tag)), cert_kind_(cert), dx_(other_degree), graph_(sp.n),
          oks_(static_cast<size_t>(sp.n)), mine_(sp.fp.p()), other_(sp.fp.p()) {}

    // Dealer: send (mine_i, other_i) with mine_i = F(alpha_i, y) when mine_is_col, else F(x, alpha_i).
    void deal(const BiPoly& F, bool mine_is_col, std::vector<Outgoing>& out) const {
        for (int i = 0; i < sp_.n; ++i) {
            const Fe a = sp_.fp.alpha(i);
            Payload m{tag_ + "deal", {}, {}};
            append_poly(m, mine_is_col ? F.col_at(a) : F.row_at(a), sp_.t);
            append_poly(m, mine_is_col ? F.row_at(a) : F.col_at(a), dx_);
            out.push_back(send_to(me_, i, std::move(m)));
        }
    }

    // Returns true when the envelope belonged to this instance.
    bool handle(const Envelope& env, std::vector<Outgoing>& out) {
        const std::string& type = env.msg.type;
        if (type.compare(0, tag_.size(), tag_) != 0) return false;
        const std::string_view kind = std::string_view(type).substr(tag_.size());
        PayloadReader r(&env.msg, sp_.fp);
        if (env.kind == Channel::p2p && kind == "deal") {
            on_deal(env.sender, r, out);
        } else if (env.kind == Channel::p2p && kind == "cross") {
            on_cross(env.sender, r, out);
        } else if (env.kind == Channel::broadcast && kind == "ok") {
            on_ok(env.sender, r.id(0), out);
        } else if (env.kind == Channel::broadcast && kind == "cert") {
            on_cert(env.sender, r);
        } else {
            return false;
        }
        return true;
    }

    bool done() const { return done_; }
    const UniPoly& mine() const { return mine_; }
    PartySet cert_members() const { return inner_; }

private:
    void on_deal(int sender, const PayloadReader& r, std::vector<Outgoing>& out) {
        if (sender != sp_.dealer || have_polys_) return;
        have_polys_ = true;
        mine_ = read_poly(r, 0, sp_.t, sp_.fp.p());
        other_ = read_poly(r, static_cast<size_t>(sp_.t + 1), dx_, sp_.fp.p());
        for (int j = 0; j < sp_.n; ++j) {
            if (j == me_) continue;
            Payload m{tag_ + "cross", {mine_.eval(sp_.fp.alpha(j)), other_.eval(sp_.fp.alpha(j))}, {}};
            out.push_back(send_to(me_, j, std::move(m)));
        }
        for (const auto& [j, values] : crosses_) check_pair(j, out);
        try_accept();
    }

    void on_cross(int sender, const PayloadReader& r, std::vector<Outgoing>& out) {
        if (sender == me_ || crosses_.count(sender) != 0) return;
        crosses_.emplace(sender, std::pair{r.elem(0), r.elem(1)});
        if (have_polys_) check_pair(sender, out);
        if (oec_ && sources_.contains(sender) && !done_) {
            oec_->feed(sender, r.elem(1));
            finish_if_decoded();
        }
    }

    void check_pair(int j, std::vector<Outgoing>& out) {
        const auto& [their_mine, their_other] = crosses_.at(j);
        const Fe a = sp_.fp.alpha(j);
        if (their_mine == other_.eval(a) && their_other == mine_.eval(a)) {
            out.push_back(acast_msg(me_, Payload{tag_ + "ok", {}, {j}}));
        }
    }

    void on_ok(int sender, int about, std::vector<Outgoing>& out) {
        if (about < 0 || about >= sp_.n || about == sender) return;
        oks_[static_cast<size_t>(sender)].insert(about);
        if (!oks_[static_cast<size_t>(about)].contains(sender)) return;
        if (!graph_.add_edge(sender, about)) return;
        if (me_ == sp_.dealer && !cert_sent_) search(out);
        try_accept();
    }

    void search(std::vector<Outgoing>& out) {
        auto star = find_star(graph_, sp_.n, sp_.t);
        if (cert_kind_ == Cert::star) {
            if (!star) return;
            Payload m{tag_ + "cert", {}, {}};
            write_set(m.ids, star->C);
            write_set(m.ids, star->D);
            out.push_back(acast_msg(me_, std::move(m)));
            cert_sent_ = true;
            return;
        }
        if (star && std::find(stars_.begin(), stars_.end(), *star) == stars_.end()) stars_.push_back(*star);
        for (const Star& s : stars_) {
            EFPair ef = expand_ef(graph_, s, dx_, sp_.t);
            if (ef.E.size() < 3 * sp_.t + 1 || ef.F.size() < 3 * sp_.t + 1) continue;
            Payload m{tag_ + "cert", {}, {}};
            write_set(m.ids, s.C);
            write_set(m.ids, s.D);
            write_set(m.ids, ef.E);
            write_set(m.ids, ef.F);
            out.push_back(acast_msg(me_, std::move(m)));
            cert_sent_ = true;
            return;
        }
    }

    void on_cert(int sender, const PayloadReader& r) {
        if (sender != sp_.dealer || cert_) return;
        size_t pos = 0;
        auto C = read_set(r, pos, sp_.n);
        auto D = read_set(r, pos, sp_.n);
        if (!C || !D) {
            cert_rejected_ = true;
            return;
        }
        EFPair cert{{}, {}, Star{*C, *D}};
        if (cert_kind_ == Cert::ef) {
            auto E = read_set(r, pos, sp_.n);
            auto F = read_set(r, pos, sp_.n);
            if (!E || !F) {
                cert_rejected_ = true;
                return;
            }
            cert.E = *E;
            cert.F = *F;
        }
        cert_ = cert;
        try_accept();
    }

    // Acceptance is re-tested on every graph update; the graph only grows.
    void try_accept() {
        if (!cert_ || accepted_ || cert_rejected_) return;
        const EFPair& c = *cert_;
        if (cert_kind_ == Cert::ef) {
            if (c.E.size() < 3 * sp_.t + 1 || c.F.size() < 3 * sp_.t + 1) {
                cert_rejected_ = true;
                return;
            }
        }
        if (!is_valid_star(graph_, c.star, sp_.n, sp_.t)) return;
        if (cert_kind_ == Cert::ef && !ef_conditions_hold(graph_, c, dx_, sp_.t)) return;
        accepted_ = true;
        inner_ = cert_kind_ == Cert::star ? c.star.C : c.F;
        sources_ = cert_kind_ == Cert::star ? c.star.D : c.E;
        if (inner_.contains(me_) && have_polys_) {
            done_ = true;
            return;
        }
        oec_.emplace(sources_, sp_.t, sp_.t, sp_.fp);
        for (const auto& [j, values] : crosses_) {
            if (sources_.contains(j)) oec_->feed(j, values.second);
        }
        finish_if_decoded();
    }

    void finish_if_decoded() {
        if (done_ || !oec_ || !oec_->done()) return;
        mine_ = *oec_->result();
        done_ = true;
    }

    SchemeParams sp_;
    int me_;
    std::string tag_;
    Cert cert_kind_;
    int dx_;
    ConsistencyGraph graph_;
    std::vector<PartySet> oks_;
    bool have_polys_ = false;
    UniPoly mine_, other_;
    std::map<int, std::pair<Fe, Fe>> crosses_;
    std::vector<Star> stars_;
    bool cert_sent_ = false;
    std::optional<EFPair> cert_;
    bool cert_rejected_ = false;
    bool accepted_ = false;
    PartySet inner_, sources_;
    std::optional<OecState> oec_;
    bool done_ = false;
};

class Bcg final : public AsyncVssParty {
public:
    Bcg(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : AsyncVssParty(sp, id, std::move(secrets), std::move(rng)), core_(sp_, id, "", AvssCore::Cert::star, sp.t) {}

protected:
    std::vector<Outgoing> share_start() override {
        std::vector<Outgoing> out;
        if (!is_dealer()) return out;
        std::vector<UniPoly> qs{sample_sharing_poly(secrets_.at(0), sp_.t, *rng_)};
        core_.deal(embed_bivariate(qs, EmbedMode::at_x0, sp_.t, sp_.t, *rng_), false, out);
        return out;
    }

    std::vector<Outgoing> share_deliver(const Envelope& env) override {
        std::vector<Outgoing> out;
        core_.handle(env, out);
        if (core_.done() && !outcome_.sharing_done) {
            outcome_.shares[0] = core_.mine().eval(sp_.fp.zero());
            outcome_.accepted_set = core_.cert_members();
            finish_sharing();
        }
        return out;
    }

private:
    AvssCore core_;
};

class Pcr final : public AsyncVssParty {
public:
    Pcr(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : AsyncVssParty(sp, id, std::move(secrets), std::move(rng)), core_(sp_, id, "", AvssCore::Cert::ef, sp.d) {}

protected:
    std::vector<Outgoing> share_start() override {
        std::vector<Outgoing> out;
        if (!is_dealer()) return out;
        std::vector<UniPoly> qs{sample_sharing_poly(secrets_.at(0), sp_.d, *rng_)};
        core_.deal(embed_bivariate(qs, EmbedMode::at_y0, sp_.d, sp_.t, *rng_), true, out);
        return out;
    }

    std::vector<Outgoing> share_deliver(const Envelope& env) override {
        std::vector<Outgoing> out;
        core_.handle(env, out);
        if (core_.done() && !outcome_.sharing_done) {
            outcome_.shares[0] = core_.mine().eval(sp_.fp.zero());
            outcome_.accepted_set = core_.cert_members();
            finish_sharing();
        }
        return out;
    }

    int rec_degree() const override { return sp_.d; }

private:
    AvssCore core_;
};

// Batched sharing: each batch of up to n - 3t secrets is one certificate-based instance whose
// rows are recovered by error correction over the column evaluations of all parties.
class Chp final : public AsyncVssParty {
public:
    Chp(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
        : AsyncVssParty(sp, id, std::move(secrets), std::move(rng)) {
        const int batch = sp.n - 3 * sp.t;
        const int dmax = sp.n - 2 * sp.t - 1;
        if (sp.fp.num_betas() < std::min(batch, sp.secrets)) throw ConfigInvalid("CHP needs n - 3t auxiliary points");
        for (int start = 0; start < sp.secrets; start += batch) {
            Batch b{start, std::min(batch, sp.secrets - start),
                    AvssCore(sp_, id, "b" + std::to_string(batches_.size() + 1) + ":", AvssCore::Cert::ef, dmax),
                    OecState(PartySet::all(sp.n), dmax, sp.t, sp.fp)};
            batches_.push_back(std::move(b));
        }
    }

protected:
    struct Batch {
        int first;
        int count;
        AvssCore core;
        OecState row_oec;
        bool column_sent = false;
        bool done = false;
    };

    std::vector<Outgoing> share_start() override {
        std::vector<Outgoing> out;
        if (!is_dealer()) return out;
        const int dmax = sp_.n - 2 * sp_.t - 1;
        const std::vector<Fe> betas = sp_.fp.betas();
        for (auto& b : batches_) {
            std::vector<UniPoly> qs;
            for (int k = 0; k < b.count; ++k) qs.push_back(sample_sharing_poly(secrets_.at(static_cast<size_t>(b.first + k)), sp_.t, *rng_));
            std::span<const Fe> slots(betas.data(), static_cast<size_t>(b.count));
            b.core.deal(embed_bivariate(qs, EmbedMode::multi_beta, dmax, sp_.t, *rng_, slots), true, out);
        }
        return out;
    }

    std::vector<Outgoing> share_deliver(const Envelope& env) override {
        std::vector<Outgoing> out;
        for (size_t k = 0; k < batches_.size(); ++k) {
            Batch& b = batches_[k];
            const std::string row_type = "b" + std::to_string(k + 1) + ":row-share";
            if (env.kind == Channel::p2p && env.msg.type == row_type) {
                if (!b.row_oec.fed().contains(env.sender) && !b.done) {
                    b.row_oec.feed(env.sender, PayloadReader(&env.msg, sp_.fp).elem(0));
                    finish_batch(b);
                }
            } else if (!b.core.handle(env, out)) {
                continue;
            }
            if (b.core.done() && !b.column_sent) {
                b.column_sent = true;
                for (int j = 0; j < sp_.n; ++j) {
                    out.push_back(send_to(me_, j, Payload{row_type, {b.core.mine().eval(alpha(j))}, {}}));
                }
            }
            break;
        }
        if (!outcome_.sharing_done && std::all_of(batches_.begin(), batches_.end(), [](const Batch& b) { return b.done; })) {
            finish_sharing();
        }
        return out;
    }

private:
    void finish_batch(Batch& b) {
        if (b.done || !b.row_oec.done()) return;
        const UniPoly& row = *b.row_oec.result();
        for (int k = 0; k < b.count; ++k) outcome_.shares[static_cast<size_t>(b.first + k)] = row.eval(sp_.fp.beta(k));
        b.done = true;
    }

    std::vector<Batch> batches_;
};

}  // namespace

std::unique_ptr<AsyncVssParty> make_bcg(const SchemeParams& sp, int id, std::vector<Fe> secrets,
                                        std::shared_ptr<RandomSource> rng) {
    return std::make_unique<Bcg>(sp, id, std::move(secrets), std::move(rng));
}

std::unique_ptr<AsyncVssParty> make_pcr(const SchemeParams& sp, int id, std::vector<Fe> secrets,
                                        std::shared_ptr<RandomSource> rng) {
    return std::make_unique<Pcr>(sp, id, std::move(secrets), std::move(rng));
}

std::unique_ptr<AsyncVssParty> make_chp(const SchemeParams& sp, int id, std::vector<Fe> secrets,
                                        std::shared_ptr<RandomSource> rng) {
    return std::make_unique<Chp>(sp, id, std::move(secrets), std::move(rng));
}

}  // namespace vsslab::detail
