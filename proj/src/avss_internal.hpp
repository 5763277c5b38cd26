#pragma once

#include <memory>
#include <optional>

#include "vsslab/avss.hpp"

namespace vsslab::detail {

std::unique_ptr<AsyncVssParty> make_bcg(const SchemeParams& sp, int id, std::vector<Fe> secrets,
                                        std::shared_ptr<RandomSource> rng);
std::unique_ptr<AsyncVssParty> make_pcr(const SchemeParams& sp, int id, std::vector<Fe> secrets,
                                        std::shared_ptr<RandomSource> rng);
std::unique_ptr<AsyncVssParty> make_chp(const SchemeParams& sp, int id, std::vector<Fe> secrets,
                                        std::shared_ptr<RandomSource> rng);
std::unique_ptr<AsyncVssParty> make_wps(const SchemeParams& sp, int id, std::vector<Fe> secrets,
                                        std::shared_ptr<RandomSource> rng);
std::unique_ptr<AsyncVssParty> make_pr(const SchemeParams& sp, int id, std::vector<Fe> secrets,
                                       std::shared_ptr<RandomSource> rng);

// Party sets travel in the id list as a count followed by the members.
void write_set(std::vector<int>& ids, const PartySet& set);
std::optional<PartySet> read_set(const PayloadReader& reader, size_t& pos, int n);

}  // namespace vsslab::detail
