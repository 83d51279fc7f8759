#include "leasematch/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "leasematch/error.hpp"

namespace leasematch {

namespace {

constexpr int kUnranked = std::numeric_limits<int>::max();

// ranks[a][p] = position of partner p in a's list, kUnranked if absent.
std::vector<std::vector<int>> rank_table(const std::vector<PreferenceList>& lists,
                                         int partner_count) {
  std::vector<std::vector<int>> ranks(lists.size(),
                                      std::vector<int>(partner_count, kUnranked));
  for (std::size_t a = 0; a < lists.size(); ++a) {
    for (std::size_t pos = 0; pos < lists[a].ranked.size(); ++pos) {
      ranks[a][lists[a].ranked[pos]] = static_cast<int>(pos);
    }
  }
  return ranks;
}

void check_side(const std::vector<PreferenceList>& lists, int partner_count,
                const char* side) {
  for (std::size_t a = 0; a < lists.size(); ++a) {
    std::vector<char> seen(partner_count, 0);
    for (int partner : lists[a].ranked) {
      if (partner < 0 || partner >= partner_count) {
        throw MalformedPreferencesError(std::string(side) + " list " +
                                        std::to_string(a) +
                                        " ranks an out-of-range partner");
      }
      if (seen[partner]) {
        throw MalformedPreferencesError(std::string(side) + " list " +
                                        std::to_string(a) + " ranks partner " +
                                        std::to_string(partner) + " twice");
      }
      seen[partner] = 1;
    }
  }
}

void validate_profile(const PreferenceProfile& prefs) {
  const int m = static_cast<int>(prefs.ceu.size());
  const int n = static_cast<int>(prefs.d2d.size());
  check_side(prefs.ceu, n, "CEU");
  check_side(prefs.d2d, m, "D2D");
  const auto ceu_ranks = rank_table(prefs.ceu, n);
  const auto d2d_ranks = rank_table(prefs.d2d, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if ((ceu_ranks[i][j] == kUnranked) != (d2d_ranks[j][i] == kUnranked)) {
        throw MalformedPreferencesError(
            "one-sided acceptability between CEU " + std::to_string(i) +
            " and D2D pair " + std::to_string(j));
      }
    }
  }
}

void shuffle(std::vector<int>& values, RandomStream& rng) {
  for (std::size_t k = values.size(); k > 1; --k) {
    std::swap(values[k - 1], values[rng.below(k)]);
  }
}

}  // namespace

PreferenceProfile build_preferences(const OutcomeTable& outcomes,
                                    const Topology& topology, double relay_range_m) {
  const int m = outcomes.ceu_count;
  const int n = outcomes.d2d_count;
  if (static_cast<int>(topology.ceu.size()) != m ||
      static_cast<int>(topology.dt.size()) != n) {
    throw Error("outcome table and topology sizes disagree");
  }

  std::vector<char> acceptable(static_cast<std::size_t>(m) * std::max(n, 1), 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      acceptable[static_cast<std::size_t>(i) * n + j] =
          outcomes.at(i, j).feasible &&
          distance(topology.ceu[i], topology.dt[j]) <= relay_range_m;
    }
  }

  PreferenceProfile prefs;
  prefs.ceu.resize(m);
  prefs.d2d.resize(n);
  for (int i = 0; i < m; ++i) {
    prefs.ceu[i].owner = i;
    auto& ranked = prefs.ceu[i].ranked;
    for (int j = 0; j < n; ++j) {
      if (acceptable[static_cast<std::size_t>(i) * n + j]) ranked.push_back(j);
    }
    std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
      const PairOutcome& oa = outcomes.at(i, a);
      const PairOutcome& ob = outcomes.at(i, b);
      if (oa.ceu_utility != ob.ceu_utility) return oa.ceu_utility > ob.ceu_utility;
      if (oa.ceu_rate != ob.ceu_rate) return oa.ceu_rate > ob.ceu_rate;
      return a < b;
    });
  }
  for (int j = 0; j < n; ++j) {
    prefs.d2d[j].owner = j;
    auto& ranked = prefs.d2d[j].ranked;
    for (int i = 0; i < m; ++i) {
      if (acceptable[static_cast<std::size_t>(i) * n + j]) ranked.push_back(i);
    }
    std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
      const PairOutcome& oa = outcomes.at(a, j);
      const PairOutcome& ob = outcomes.at(b, j);
      if (oa.d2d_utility != ob.d2d_utility) return oa.d2d_utility > ob.d2d_utility;
      if (oa.d2d_rate != ob.d2d_rate) return oa.d2d_rate > ob.d2d_rate;
      return a < b;
    });
  }
  return prefs;
}

Matching deferred_acceptance(const PreferenceProfile& prefs, DaLog* log) {
  validate_profile(prefs);
  const int m = static_cast<int>(prefs.ceu.size());
  const int n = static_cast<int>(prefs.d2d.size());
  const auto d2d_ranks = rank_table(prefs.d2d, m);

  // next[i] indexes i's list: frozen at the held partner while engaged,
  // advanced past a D2D pair on rejection so it is never proposed to again.
  std::vector<int> next(m, 0);
  std::vector<int> engaged_to(m, -1);
  std::vector<int> holds(n, -1);

  while (true) {
    DaRound round;
    std::vector<std::vector<int>> proposers(n);
    for (int i = 0; i < m; ++i) {
      if (engaged_to[i] >= 0) continue;
      if (next[i] >= static_cast<int>(prefs.ceu[i].ranked.size())) continue;
      const int j = prefs.ceu[i].ranked[next[i]];
      proposers[j].push_back(i);
      round.proposals.emplace_back(i, j);
    }
    if (round.proposals.empty()) break;

    for (int j = 0; j < n; ++j) {
      if (proposers[j].empty()) continue;
      int best = holds[j];
      for (int i : proposers[j]) {
        if (best < 0 || d2d_ranks[j][i] < d2d_ranks[j][best]) best = i;
      }
      if (holds[j] >= 0 && holds[j] != best) {
        const int displaced = holds[j];
        engaged_to[displaced] = -1;
        ++next[displaced];
        round.rejections.emplace_back(displaced, j);
      }
      for (int i : proposers[j]) {
        if (i == best) continue;
        ++next[i];
        round.rejections.emplace_back(i, j);
      }
      if (best != holds[j]) {
        holds[j] = best;
        engaged_to[best] = j;
      }
    }
    if (log != nullptr) {
      log->total_proposals += static_cast<int>(round.proposals.size());
      log->rounds.push_back(std::move(round));
    }
  }

  Matching matching(m, n);
  for (int j = 0; j < n; ++j) {
    if (holds[j] >= 0) {
      matching.d2d_to_ceu[j] = holds[j];
      matching.ceu_to_d2d[holds[j]] = j;
    }
  }
  return matching;
}

StabilityReport find_blocking_pairs(const Matching& matching,
                                    const PreferenceProfile& prefs) {
  const int m = static_cast<int>(prefs.ceu.size());
  const auto ceu_ranks = rank_table(prefs.ceu, static_cast<int>(prefs.d2d.size()));
  const auto d2d_ranks = rank_table(prefs.d2d, m);

  StabilityReport report;
  for (int i = 0; i < m; ++i) {
    const int current = matching.ceu_to_d2d[i];
    if (current >= 0 && (ceu_ranks[i][current] == kUnranked ||
                         d2d_ranks[current][i] == kUnranked)) {
      report.unacceptable_matches.emplace_back(i, current);
    }
    const int current_rank = current >= 0 ? ceu_ranks[i][current] : kUnranked;
    for (int j : prefs.ceu[i].ranked) {
      if (j == current || ceu_ranks[i][j] >= current_rank) continue;
      const int holder = matching.d2d_to_ceu[j];
      const int holder_rank = holder >= 0 ? d2d_ranks[j][holder] : kUnranked;
      if (d2d_ranks[j][i] < holder_rank) {
        report.blocking_pairs.emplace_back(i, j);
      }
    }
  }
  return report;
}

std::vector<Matching> enumerate_stable_matchings(const PreferenceProfile& prefs) {
  const int m = static_cast<int>(prefs.ceu.size());
  const int n = static_cast<int>(prefs.d2d.size());
  if (m > 8 || n > 8) {
    throw SizeLimitError("stable matching enumeration supports at most 8x8 instances");
  }
  validate_profile(prefs);
  const auto ceu_ranks = rank_table(prefs.ceu, n);
  const auto d2d_ranks = rank_table(prefs.d2d, m);

  // Stability check against precomputed ranks; assignment[i] = -1 unmatched.
  auto is_stable = [&](const std::vector<int>& assignment,
                       const std::vector<int>& holder) {
    for (int i = 0; i < m; ++i) {
      const int current_rank =
          assignment[i] >= 0 ? ceu_ranks[i][assignment[i]] : kUnranked;
      for (int j : prefs.ceu[i].ranked) {
        if (ceu_ranks[i][j] >= current_rank) continue;
        const int holder_rank = holder[j] >= 0 ? d2d_ranks[j][holder[j]] : kUnranked;
        if (d2d_ranks[j][i] < holder_rank) return false;
      }
    }
    return true;
  };

  std::vector<Matching> stable;
  std::vector<int> assignment(m, -1);
  std::vector<int> holder(n, -1);

  auto emit = [&]() {
    if (!is_stable(assignment, holder)) return;
    Matching matching(m, n);
    matching.ceu_to_d2d = assignment;
    matching.d2d_to_ceu = holder;
    stable.push_back(std::move(matching));
  };

  auto recurse = [&](auto&& self, int i) -> void {
    if (i == m) {
      emit();
      return;
    }
    self(self, i + 1);  // i stays unmatched
    for (int j : prefs.ceu[i].ranked) {
      if (holder[j] >= 0) continue;
      assignment[i] = j;
      holder[j] = i;
      self(self, i + 1);
      assignment[i] = -1;
      holder[j] = -1;
    }
  };
  recurse(recurse, 0);
  return stable;
}

Matching random_matching(const PreferenceProfile& prefs, RandomStream& rng) {
  const int m = static_cast<int>(prefs.ceu.size());
  const int n = static_cast<int>(prefs.d2d.size());
  const auto ceu_ranks = rank_table(prefs.ceu, n);
  const auto d2d_ranks = rank_table(prefs.d2d, m);

  std::vector<int> ceu_order(m);
  std::vector<int> d2d_order(n);
  std::iota(ceu_order.begin(), ceu_order.end(), 0);
  std::iota(d2d_order.begin(), d2d_order.end(), 0);
  shuffle(ceu_order, rng);
  shuffle(d2d_order, rng);

  Matching matching(m, n);
  const int pairs = std::min(m, n);
  for (int k = 0; k < pairs; ++k) {
    const int i = ceu_order[k];
    const int j = d2d_order[k];
    if (ceu_ranks[i][j] != kUnranked && d2d_ranks[j][i] != kUnranked) {
      matching.ceu_to_d2d[i] = j;
      matching.d2d_to_ceu[j] = i;
    }
  }
  return matching;
}

}  // namespace leasematch
