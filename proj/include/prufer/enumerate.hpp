#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "prufer/coupled.hpp"
#include "prufer/parallel.hpp"
#include "prufer/uint128.hpp"

namespace prufer {

inline constexpr int kDefaultEnumerationCap = 9;

// Exact distribution of the edge distance over all pairs of a mutation
// space: the full space when mu == 0, else the slice at one position.
struct ExactDistribution {
  int n = 0;
  int mu = 0;  // 0 means aggregated over all positions
  std::vector<u128> counts;  // counts[ell], ell = 0 .. n-1
  u128 total = 0;

  std::string prob_rational(int ell) const { return fraction_string(counts[ell], total); }
  double prob(int ell) const {
    return static_cast<double>(counts[ell]) / static_cast<double>(total);
  }
};

// Per-position tally including the perfect-merge event counters.
struct MuTally {
  int mu = 0;
  std::vector<std::uint64_t> counts;  // by ell
  std::uint64_t e_count = 0;          // pairs with the merge-at-mu event
  std::uint64_t e_not_delta1 = 0;     // of those, pairs with distance != 1
};

namespace detail {

inline void string_from_index(u128 index, int n, std::vector<int>& entries) {
  for (int k = static_cast<int>(entries.size()) - 1; k >= 0; --k) {
    entries[k] = 1 + static_cast<int>(index % static_cast<unsigned>(n));
    index /= static_cast<unsigned>(n);
  }
}

// Odometer increment with the last entry fastest, so contiguous index
// ranges are exactly the blocks sharing a string prefix.
inline void advance_string(std::vector<int>& entries, int n) {
  for (int k = static_cast<int>(entries.size()) - 1; k >= 0; --k) {
    if (entries[k] < n) {
      ++entries[k];
      return;
    }
    entries[k] = 1;
  }
}

inline void require_enumerable(int n, int cap) {
  if (n < 3) throw TooLargeError("enumeration needs n >= 3");
  if (n > cap) {
    throw TooLargeError("n = " + std::to_string(n) + " exceeds the enumeration cap " +
                        std::to_string(cap) + " (raise --cap to acknowledge the cost)");
  }
  if (n > 16) throw TooLargeError("exact per-position counters are 64-bit; n must be <= 16");
}

}  // namespace detail

// Walks all n^(n-2) strings and, for each requested position, all n-1
// mutated values, tallying the distance of every pair with the coupled
// decoder. Work splits over disjoint string-prefix ranges; each worker owns
// a private tally and the merge is a plain sum, so the result does not
// depend on the worker count.
inline std::vector<MuTally> enumerate_tallies(int n, const std::vector<int>& mus,
                                              int cap = kDefaultEnumerationCap, int workers = 0) {
  detail::require_enumerable(n, cap);
  for (int mu : mus) {
    if (mu < 1 || mu > n - 2) {
      throw Error("mutation position " + std::to_string(mu) + " outside 1.." +
                  std::to_string(n - 2));
    }
  }
  const u128 total_strings = u128_pow(static_cast<unsigned>(n), n - 2);
  const int nworkers = resolve_workers(workers);

  std::vector<std::vector<MuTally>> partials(static_cast<std::size_t>(nworkers));
  parallel_ranges(total_strings, nworkers, [&](int worker, u128 lo, u128 hi) {
    std::vector<MuTally>& tally = partials[static_cast<std::size_t>(worker)];
    tally.resize(mus.size());
    for (std::size_t m = 0; m < mus.size(); ++m) {
      tally[m].mu = mus[m];
      tally[m].counts.assign(static_cast<std::size_t>(n), 0);
    }
    MutationPair pair;
    pair.base.n = n;
    pair.base.entries.assign(static_cast<std::size_t>(n) - 2, 1);
    detail::string_from_index(lo, n, pair.base.entries);
    CoupledRun run;
    for (u128 idx = lo; idx < hi; ++idx) {
      for (std::size_t m = 0; m < mus.size(); ++m) {
        pair.mu = mus[m];
        const int current = pair.base.p(pair.mu);
        for (int value = 1; value <= n; ++value) {
          if (value == current) continue;
          pair.mutated_value = value;
          const PairStats stats = run_pair_stats(run, pair);
          ++tally[m].counts[static_cast<std::size_t>(stats.delta)];
          if (stats.e) {
            ++tally[m].e_count;
            if (stats.delta != 1) ++tally[m].e_not_delta1;
          }
        }
      }
      detail::advance_string(pair.base.entries, n);
    }
  });

  std::vector<MuTally> merged(mus.size());
  for (std::size_t m = 0; m < mus.size(); ++m) {
    merged[m].mu = mus[m];
    merged[m].counts.assign(static_cast<std::size_t>(n), 0);
    for (const auto& part : partials) {
      if (part.empty()) continue;
      for (std::size_t ell = 0; ell < merged[m].counts.size(); ++ell) {
        merged[m].counts[ell] += part[m].counts[ell];
      }
      merged[m].e_count += part[m].e_count;
      merged[m].e_not_delta1 += part[m].e_not_delta1;
    }
  }
  return merged;
}

inline ExactDistribution enumerate_mu(int n, int mu, int cap = kDefaultEnumerationCap,
                                      int workers = 0) {
  const std::vector<MuTally> tallies = enumerate_tallies(n, {mu}, cap, workers);
  ExactDistribution dist;
  dist.n = n;
  dist.mu = mu;
  dist.counts.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t ell = 0; ell < dist.counts.size(); ++ell) {
    dist.counts[ell] = tallies[0].counts[ell];
  }
  dist.total = u128_mul_checked(u128_pow(static_cast<unsigned>(n), n - 2),
                                static_cast<unsigned>(n - 1));
  return dist;
}

// Marginal distribution: every position weighted 1/(n-2), which for counts
// means a plain sum over the per-position tallies.
inline ExactDistribution enumerate_all(int n, int cap = kDefaultEnumerationCap, int workers = 0) {
  detail::require_enumerable(n, cap);
  std::vector<int> mus;
  for (int mu = 1; mu <= n - 2; ++mu) mus.push_back(mu);
  const std::vector<MuTally> tallies = enumerate_tallies(n, mus, cap, workers);
  ExactDistribution dist;
  dist.n = n;
  dist.mu = 0;
  dist.counts.assign(static_cast<std::size_t>(n), 0);
  for (const MuTally& t : tallies) {
    for (std::size_t ell = 0; ell < dist.counts.size(); ++ell) dist.counts[ell] += t.counts[ell];
  }
  dist.total = u128_mul_checked(
      u128_mul_checked(u128_pow(static_cast<unsigned>(n), n - 2), static_cast<unsigned>(n - 1)),
      static_cast<unsigned>(n - 2));
  return dist;
}

// Number of pairs at position mu whose mutated entries both land in the
// placed set or on the largest unplaced vertex (the merge-at-mu event).
inline u128 count_event_E(int n, int mu, int cap = kDefaultEnumerationCap, int workers = 0) {
  const std::vector<MuTally> tallies = enumerate_tallies(n, {mu}, cap, workers);
  return tallies[0].e_count;
}

// --- CSV --------------------------------------------------------------

inline const char* exact_csv_header() {
  return "n,mu,ell,count,total,prob_rational,prob_decimal";
}

inline void write_exact_csv_rows(std::ostream& out, const ExactDistribution& dist) {
  for (std::size_t ell = 0; ell < dist.counts.size(); ++ell) {
    if (dist.counts[ell] == 0) continue;
    char prob[40];
    std::snprintf(prob, sizeof(prob), "%.12g",
                  static_cast<double>(dist.counts[ell]) / static_cast<double>(dist.total));
    out << dist.n << ',';
    if (dist.mu == 0) {
      out << "all";
    } else {
      out << dist.mu;
    }
    out << ',' << ell << ',' << u128_to_string(dist.counts[ell]) << ','
        << u128_to_string(dist.total) << ',' << dist.prob_rational(static_cast<int>(ell)) << ','
        << prob << "\n";
  }
}

inline void write_exact_json_rows(std::ostream& out, const ExactDistribution& dist) {
  for (std::size_t ell = 0; ell < dist.counts.size(); ++ell) {
    if (dist.counts[ell] == 0) continue;
    char prob[40];
    std::snprintf(prob, sizeof(prob), "%.12g",
                  static_cast<double>(dist.counts[ell]) / static_cast<double>(dist.total));
    out << "{\"n\":" << dist.n << ",\"mu\":";
    if (dist.mu == 0) {
      out << "\"all\"";
    } else {
      out << dist.mu;
    }
    out << ",\"ell\":" << ell << ",\"count\":" << u128_to_string(dist.counts[ell])
        << ",\"total\":" << u128_to_string(dist.total) << ",\"prob_rational\":\""
        << dist.prob_rational(static_cast<int>(ell)) << "\",\"prob_decimal\":" << prob << "}\n";
  }
}

}  // namespace prufer
