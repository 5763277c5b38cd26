#include <algorithm>

#include "avss_internal.hpp"
#include "vsslab/codes.hpp"
#include "vsslab/errors.hpp"

namespace vsslab {

AsyncVssParty::AsyncVssParty(const SchemeParams& sp, int id, std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng)
    : sp_(sp), me_(id), secrets_(std::move(secrets)), rng_(std::move(rng)) {
    outcome_.shares.assign(static_cast<size_t>(sp.secrets), std::nullopt);
}

std::vector<Outgoing> AsyncVssParty::on_start() { return reconstructing_ ? rec_start() : share_start(); }

std::vector<Outgoing> AsyncVssParty::on_sync_round() { return reconstructing_ ? std::vector<Outgoing>{} : share_sync_round(); }

std::vector<Outgoing> AsyncVssParty::on_sync_end(std::span<const Envelope> inbox) {
    if (reconstructing_) return {};
    return share_sync_end(Inbox(inbox));
}

std::vector<Outgoing> AsyncVssParty::on_deliver(const Envelope& env) {
    return reconstructing_ ? rec_deliver(env) : share_deliver(env);
}

void AsyncVssParty::begin_reconstruction() {
    reconstructing_ = true;
    terminated_ = false;
}

void AsyncVssParty::finish_sharing() {
    if (outcome_.sharing_done) return;
    outcome_.sharing_done = true;
    terminated_ = true;
}

void AsyncVssParty::finish_reconstruction(std::optional<std::vector<Fe>> output) {
    if (outcome_.rec_done) return;
    outcome_.rec_done = true;
    outcome_.output = std::move(output);
    terminated_ = true;
}

std::vector<Outgoing> AsyncVssParty::rec_start() {
    rec_oec_.clear();
    for (int k = 0; k < sp_.secrets; ++k) rec_oec_.emplace_back(PartySet::all(sp_.n), rec_degree(), sp_.t, sp_.fp);
    std::vector<Outgoing> out;
    const bool holds = std::all_of(outcome_.shares.begin(), outcome_.shares.end(), [](const auto& s) { return s.has_value(); });
    if (!outcome_.sharing_done || !holds) return out;
    Payload m{"rec-share", {}, {}};
    for (const auto& s : outcome_.shares) m.elems.push_back(*s);
    for (int j = 0; j < sp_.n; ++j) out.push_back(send_to(me_, j, m));
    return out;
}

std::vector<Outgoing> AsyncVssParty::rec_deliver(const Envelope& env) {
    if (env.kind != Channel::p2p || env.msg.type != "rec-share" || outcome_.rec_done) return {};
    PayloadReader r(&env.msg, sp_.fp);
    for (size_t k = 0; k < rec_oec_.size(); ++k) {
        if (rec_oec_[k].fed().contains(env.sender)) return {};
        rec_oec_[k].feed(env.sender, r.elem(k));
    }
    if (std::all_of(rec_oec_.begin(), rec_oec_.end(), [](const OecState& s) { return s.done(); })) {
        std::vector<Fe> secrets;
        for (const auto& s : rec_oec_) secrets.push_back(s.result()->eval(sp_.fp.zero()));
        finish_reconstruction(std::move(secrets));
    }
    return {};
}

const std::vector<AsyncSchemeInfo>& async_schemes() {
    static const std::vector<AsyncSchemeInfo> table{
        {"BCG", false, 4, true, "type-II"},
        {"PCR", false, 4, true, "type-II"},
        {"CHP", false, 4, true, "type-II"},
        {"WPS", true, 3, false, "wps"},
        {"PR", true, 3, true, "type-II"},
    };
    return table;
}

const AsyncSchemeInfo* find_async_scheme(const std::string& name) {
    for (const auto& info : async_schemes()) {
        if (info.name == name) return &info;
    }
    return nullptr;
}

void check_async_bounds(const std::string& scheme, int n, int t, int d, int secrets) {
    const AsyncSchemeInfo* info = find_async_scheme(scheme);
    if (info == nullptr) throw ConfigInvalid("unknown asynchronous scheme: " + scheme);
    if (t < 1 || n > 64) throw ConfigBound(scheme + " needs t >= 1 and n <= 64");
    if (n <= info->resilience_factor * t) {
        throw ConfigBound(scheme + " needs n > " + std::to_string(info->resilience_factor) + "t");
    }
    if (scheme == "PCR" && (d < t || d >= n - 2 * t)) throw ConfigBound("PCR needs t <= d < n - 2t");
    if (secrets < 1) throw ConfigBound(scheme + " needs at least one secret");
    if (scheme != "CHP" && secrets != 1) throw ConfigBound(scheme + " shares a single secret");
}

int async_betas_needed(const std::string& scheme, int n, int t, int secrets) {
    if (scheme != "CHP") return 0;
    return std::min(secrets, n - 3 * t);
}

std::unique_ptr<AsyncVssParty> make_async_party(const std::string& scheme, const SchemeParams& sp, int id,
                                                std::vector<Fe> secrets, std::shared_ptr<RandomSource> rng) {
    if (scheme == "BCG") return detail::make_bcg(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "PCR") return detail::make_pcr(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "CHP") return detail::make_chp(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "WPS") return detail::make_wps(sp, id, std::move(secrets), std::move(rng));
    if (scheme == "PR") return detail::make_pr(sp, id, std::move(secrets), std::move(rng));
    throw ConfigInvalid("unknown asynchronous scheme: " + scheme);
}

namespace detail {

void write_set(std::vector<int>& ids, const PartySet& set) {
    ids.push_back(set.size());
    for (int m : set.members()) ids.push_back(m);
}

std::optional<PartySet> read_set(const PayloadReader& reader, size_t& pos, int n) {
    if (pos >= reader.id_count()) return std::nullopt;
    const int count = reader.id(pos++);
    if (count < 0 || count > n || pos + static_cast<size_t>(count) > reader.id_count()) return std::nullopt;
    PartySet out;
    for (int k = 0; k < count; ++k) {
        const int m = reader.id(pos++);
        if (m < 0 || m >= n) return std::nullopt;
        out.insert(m);
    }
    return out;
}

}  // namespace detail
}  // namespace vsslab
