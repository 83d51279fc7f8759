#pragma once

#include <utility>
#include <vector>

#include "leasematch/channel.hpp"
#include "leasematch/rng.hpp"
#include "leasematch/stackelberg.hpp"

namespace leasematch {

// Ordered list of acceptable partners, most preferred first.
struct PreferenceList {
  int owner = 0;
  std::vector<int> ranked;
};

// Both sides of the market.
struct PreferenceProfile {
  std::vector<PreferenceList> ceu;  // partners are D2D indices
  std::vector<PreferenceList> d2d;  // partners are CEU indices
};

// Partial one-to-one assignment; -1 marks an unmatched agent.
struct Matching {
  std::vector<int> ceu_to_d2d;
  std::vector<int> d2d_to_ceu;

  Matching() = default;
  Matching(int m, int n) : ceu_to_d2d(m, -1), d2d_to_ceu(n, -1) {}

  int matched_count() const {
    int count = 0;
    for (int j : ceu_to_d2d) count += (j >= 0);
    return count;
  }
};

// Round-by-round trace of deferred acceptance, for diagnostics.
struct DaRound {
  std::vector<std::pair<int, int>> proposals;   // (ceu, d2d)
  std::vector<std::pair<int, int>> rejections;  // (ceu, d2d)
};

struct DaLog {
  std::vector<DaRound> rounds;
  int total_proposals = 0;
};

struct StabilityReport {
  std::vector<std::pair<int, int>> blocking_pairs;
  // Matched pairs where at least one side does not list the other.
  std::vector<std::pair<int, int>> unacceptable_matches;

  bool stable() const { return blocking_pairs.empty() && unacceptable_matches.empty(); }
};

// A pair is mutually acceptable iff its game outcome is feasible and the
// CEU-to-transmitter distance is within relay_range_m. CEUs rank partners by
// CEU utility, then CEU rate, then lowest index; D2D pairs symmetrically by
// their own utility, rate, index.
PreferenceProfile build_preferences(const OutcomeTable& outcomes,
                                    const Topology& topology, double relay_range_m);

// CEU-proposing deferred acceptance in synchronous rounds. Returns the
// CEU-optimal stable matching. Throws MalformedPreferencesError when lists
// contain duplicates, out-of-range ids, or one-sided acceptability.
Matching deferred_acceptance(const PreferenceProfile& prefs, DaLog* log = nullptr);

// All pairs that would rather have each other than their assigned partners,
// plus any matches violating individual rationality.
StabilityReport find_blocking_pairs(const Matching& matching,
                                    const PreferenceProfile& prefs);

// Exhaustively enumerates every stable matching. Only for instances with at
// most 8 agents per side; larger inputs throw SizeLimitError.
std::vector<Matching> enumerate_stable_matchings(const PreferenceProfile& prefs);

// Uniform random assignment: partners are handed out by a random permutation
// (when CEUs outnumber D2D pairs the recipients are a uniform subset), and a
// tentative pair is kept only when mutually acceptable.
Matching random_matching(const PreferenceProfile& prefs, RandomStream& rng);

}  // namespace leasematch
