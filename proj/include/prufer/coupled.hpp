#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "prufer/codec.hpp"
#include "prufer/errors.hpp"

namespace prufer {

// Ordered pair (P, P*) differing exactly at coordinate mu. The shared
// entries are stored once; the mutated entry is kept separately, so a pair
// costs O(n), not O(2n).
struct MutationPair {
  PruferString base;      // P
  int mu = 0;             // 1 <= mu <= n-2
  int mutated_value = 0;  // p*_mu, != p_mu

  int n() const { return base.n; }
  int p(int i) const { return base.p(i); }
  int pstar(int i) const { return i == mu ? mutated_value : base.p(i); }

  PruferString pstar_string() const {
    PruferString out = base;
    out.entries[mu - 1] = mutated_value;
    return out;
  }
};

inline MutationPair make_mutation_pair(PruferString base, int mu, int mutated_value) {
  const int n = base.n;
  if (mu < 1 || mu > n - 2) {
    throw InvalidPairError("mutation position " + std::to_string(mu) + " outside 1.." +
                           std::to_string(n - 2));
  }
  if (mutated_value < 1 || mutated_value > n) {
    throw InvalidPairError("mutated value out of range: " + std::to_string(mutated_value));
  }
  if (mutated_value == base.p(mu)) {
    throw InvalidPairError("mutated value equals the current entry at position " +
                           std::to_string(mu));
  }
  return MutationPair{std::move(base), mu, mutated_value};
}

// Deduce mu from two full strings.
inline MutationPair make_mutation_pair(const PruferString& p, const PruferString& pstar) {
  if (p.n != pstar.n) throw InvalidPairError("string orders differ");
  int mu = 0;
  for (int i = 1; i <= p.n - 2; ++i) {
    if (p.p(i) != pstar.p(i)) {
      if (mu != 0) throw InvalidPairError("strings differ at more than one coordinate");
      mu = i;
    }
  }
  if (mu == 0) throw InvalidPairError("strings are identical");
  return MutationPair{p, mu, pstar.p(mu)};
}

// Step classification. Labels 1a..4b are the diverged-state cases; PRE_MU
// covers steps at or above the mutation step while the states are still
// identical, MERGED covers steps after the states have (re)joined.
enum class StepCase : std::uint8_t {
  PreMu,
  C1a,
  C1b,
  C1c,
  C2a,
  C2b,
  C2c,
  C3a,
  C3b,
  C3c,
  C4a,
  C4b,
  Merged,
};

inline const char* to_string(StepCase c) {
  switch (c) {
    case StepCase::PreMu: return "PRE_MU";
    case StepCase::C1a: return "1a";
    case StepCase::C1b: return "1b";
    case StepCase::C1c: return "1c";
    case StepCase::C2a: return "2a";
    case StepCase::C2b: return "2b";
    case StepCase::C2c: return "2c";
    case StepCase::C3a: return "3a";
    case StepCase::C3b: return "3b";
    case StepCase::C3c: return "3c";
    case StepCase::C4a: return "4a";
    case StepCase::C4b: return "4b";
    case StepCase::Merged: return "MERGED";
  }
  return "?";
}

// Per-step record; a, b, c, z, zstar describe the state after the step.
// z == zstar == 0 means the partial trees hold the same vertex set.
struct StepRecord {
  int j = 0;
  int y = 0;
  int ystar = 0;
  std::int8_t delta = 0;
  int a = 0;
  int b = 0;
  int c = 0;
  int z = 0;
  int zstar = 0;
  StepCase label = StepCase::PreMu;
  bool h_event = false;
  bool hstar_event = false;
};

struct EventFlags {
  bool e = false;   // both mutated entries hit V_{mu+1} u {max X_{mu+1}}
  bool e1 = false;  // diverged with b(mu) < delta_n
  bool e2 = false;  // b(mu) >= delta_n
  bool s = false;   // b(tau(0)) >= 2^-12 delta_n
  bool t1 = false;  // tau(delta_n) - tau(0) <= 2 beta_n
  bool t2 = false;  // tau(0) <= n - beta_n
  double delta_n = 0.0;
  double beta_n = 0.0;
};

inline double default_delta_n(int n) { return std::cbrt(static_cast<double>(n)); }
inline double default_beta_n(int n) {
  const double l = std::log(static_cast<double>(n));
  return std::pow(static_cast<double>(n), 2.0 / 3.0) * l * l;
}

enum class TraceDetail { Summary, Full };

// Trace of a coupled decode; steps are ordered j = n-2 .. 0.
struct DecodeTrace {
  MutationPair pair;
  std::vector<StepRecord> steps;
  int delta_total = 0;
  EventFlags flags;
  int tau0 = 0;
  int tau_delta = 0;
  int b_at_tau0 = 0;

  // Present only at TraceDetail::Full: the common unplaced vertices after
  // each step, split into the below/between/above blocks.
  struct StepSets {
    std::vector<int> a_set, b_set, c_set;
  };
  std::vector<StepSets> sets;

  const StepRecord& at_state(int j) const { return steps[static_cast<std::size_t>(pair.n() - 2 - j)]; }
};

// Read-only view of the coupled state between steps, used to classify the
// next entry. j is the current state index: steps n-2 .. j are done.
struct CoupledState {
  int n = 0;
  int mu = 0;
  int j = 0;
  bool diverged = false;
  int z = 0;
  int zstar = 0;
  int a = 0;
  int b = 0;
  int c = 0;
  const DecodeRun* t = nullptr;
  const DecodeRun* tstar = nullptr;

  bool unplaced_both(int v) const { return t->unplaced(v) && tstar->unplaced(v); }
  bool placed_both(int v) const { return t->placed(v) && tstar->placed(v); }
};

// Predicted transition for one classified entry. delta is a range: the
// case analysis pins the increment exactly in some cases and only bounds
// it in others (and the bounds differ at the mutation boundary j == mu,
// where the two decoders attach to different entries).
struct Prediction {
  StepCase label = StepCase::PreMu;
  int a = 0;
  int b = 0;
  int c = 0;
  int z = 0;
  int zstar = 0;
  int delta_min = 0;
  int delta_max = 0;
};

namespace detail {

inline int max_unplaced_common_below(const CoupledState& st, int bound) {
  for (int v = bound - 1; v >= 1; --v) {
    if (st.unplaced_both(v)) return v;
  }
  return 0;
}

inline int max_unplaced_common(const CoupledState& st) {
  return max_unplaced_common_below(st, st.n + 1);
}

}  // namespace detail

// Evaluates the eleven diverged-state predicates independently and returns
// every label whose condition holds for v; the partition property says this
// is always a single label.
inline std::vector<StepCase> matching_labels(const CoupledState& st, int v) {
  if (!st.diverged) throw StateMergedError("state has no displaced pair");
  const int zmin = std::min(st.z, st.zstar);
  const int zmax = std::max(st.z, st.zstar);
  std::vector<StepCase> out;
  const bool ub = st.unplaced_both(v);
  const bool pb = st.placed_both(v);
  if (ub && v < zmin) out.push_back(StepCase::C1a);
  if (ub && v > zmin && v < zmax) out.push_back(StepCase::C1b);
  if (ub && v > zmax) out.push_back(StepCase::C1c);
  if (pb && st.b == 0 && st.c == 0) out.push_back(StepCase::C2a);
  if (pb && st.b > 0 && st.c == 0) out.push_back(StepCase::C2b);
  if (pb && st.c > 0) out.push_back(StepCase::C2c);
  if (v == zmax && st.b == 0 && st.c == 0) out.push_back(StepCase::C3a);
  if (v == zmax && st.b > 0 && st.c == 0) out.push_back(StepCase::C3b);
  if (v == zmax && st.c > 0) out.push_back(StepCase::C3c);
  if (v == zmin && st.c == 0) out.push_back(StepCase::C4a);
  if (v == zmin && st.c > 0) out.push_back(StepCase::C4b);
  return out;
}

// Classifies the entry read at step j-1 against a diverged state at j and
// predicts the resulting (a, b, c, z, zstar) plus the allowed range of the
// step increment.
inline Prediction classify_step(const CoupledState& st, int v) {
  if (!st.diverged) throw StateMergedError("state has no displaced pair");
  const int zmin = std::min(st.z, st.zstar);
  const int zmax = std::max(st.z, st.zstar);
  const bool boundary = (st.j == st.mu);  // producing step mu-1

  Prediction pred;
  pred.a = st.a;
  pred.b = st.b;
  pred.c = st.c;
  pred.z = st.z;
  pred.zstar = st.zstar;

  auto merge = [&](StepCase label, int lo_generic) {
    pred.label = label;
    pred.a = st.j - 1;
    pred.b = pred.c = 0;
    pred.z = pred.zstar = 0;
    pred.delta_min = boundary ? 0 : lo_generic;
    pred.delta_max = 1;
  };
  // The displaced vertex being drained is replaced by `fresh`; which side
  // of the pair it lands on follows the side that lost its vertex.
  auto replace = [&](int victim, int fresh) {
    if (st.z == victim) {
      pred.z = fresh;
    } else {
      pred.zstar = fresh;
    }
  };

  if (st.unplaced_both(v)) {
    pred.label = v < zmin ? StepCase::C1a : (v < zmax ? StepCase::C1b : StepCase::C1c);
    if (v < zmin) {
      --pred.a;
    } else if (v < zmax) {
      --pred.b;
    } else {
      --pred.c;
    }
    pred.delta_min = pred.delta_max = boundary ? 1 : 0;
  } else if (st.placed_both(v)) {
    if (st.c == 0 && st.b == 0) {
      merge(StepCase::C2a, -1);
    } else if (st.c == 0) {
      pred.label = StepCase::C2b;
      --pred.b;
      replace(zmax, detail::max_unplaced_common_below(st, zmax));
      pred.delta_min = 0;
      pred.delta_max = 1;
    } else {
      pred.label = StepCase::C2c;
      --pred.c;
      pred.delta_min = pred.delta_max = boundary ? 1 : 0;
    }
  } else if (v == zmax) {
    if (st.c == 0 && st.b == 0) {
      merge(StepCase::C3a, -1);
    } else if (st.c == 0) {
      pred.label = StepCase::C3b;
      --pred.b;
      replace(zmax, detail::max_unplaced_common_below(st, zmax));
      pred.delta_min = 0;
      pred.delta_max = 1;
    } else {
      pred.label = StepCase::C3c;
      pred.b = st.b + st.c - 1;
      pred.c = 0;
      replace(zmax, detail::max_unplaced_common(st));
      pred.delta_min = 0;
      pred.delta_max = 1;
    }
  } else {  // v == zmin
    if (st.c == 0) {
      merge(StepCase::C4a, -1);
    } else {
      pred.label = StepCase::C4b;
      pred.a = st.a + st.b;
      pred.b = st.c - 1;
      pred.c = 0;
      replace(zmin, detail::max_unplaced_common(st));
      pred.delta_min = 0;
      pred.delta_max = 1;
    }
  }
  return pred;
}

// Runs the two decoders of a mutation pair in lockstep and maintains the
// displaced-vertex bookkeeping. Each advance() performs one step on both
// trees and reports the executed transition; the per-step increment comes
// from exact incremental edge accounting.
//
// Keeping a pair of edge sets would be wasteful: a freshly placed vertex
// can only collide with the other tree's edges if it IS the other tree's
// displaced vertex, so it suffices to track the neighbor lists of the two
// displaced vertices (placement edge plus any attachments made to them).
class CoupledRun {
 public:
  CoupledRun() = default;

  explicit CoupledRun(const MutationPair& pair) { reset(pair); }

  void reset(const MutationPair& pair) {
    const int n = pair.n();
    if (pair.mu < 1 || pair.mu > n - 2 || pair.mutated_value < 1 || pair.mutated_value > n ||
        pair.mutated_value == pair.p(pair.mu)) {
      throw InvalidPairError("malformed mutation pair");
    }
    n_ = n;
    mu_ = pair.mu;
    t_.reset(n, pair.base.entries.data());
    tstar_.reset(n, pair.base.entries.data(), pair.mu, pair.mutated_value);
    diverged_ = false;
    z_ = zstar_ = 0;
    a_ = b_ = c_ = 0;
    z_nbrs_.clear();
    zstar_nbrs_.clear();
  }

  bool done() const { return t_.done(); }
  int next_step() const { return t_.next_step(); }
  int next_entry() const { return t_.entry(t_.next_step()); }

  CoupledState state() const {
    CoupledState st;
    st.n = n_;
    st.mu = mu_;
    st.j = t_.next_step() + 1;
    st.diverged = diverged_;
    st.z = z_;
    st.zstar = zstar_;
    st.a = diverged_ ? a_ : st.j;
    st.b = diverged_ ? b_ : 0;
    st.c = diverged_ ? c_ : 0;
    st.t = &t_;
    st.tstar = &tstar_;
    return st;
  }

  StepRecord advance() {
    const int s = t_.next_step();
    const bool was_diverged = diverged_;
    const int zpre = z_;
    const int zspre = zstar_;

    StepRecord rec;
    rec.j = s;

    // Classify the entry against the pre-step state. The final step reads
    // no entry; from a diverged state it is the forced swap-merge (2a).
    if (was_diverged) {
      if (s >= 1) {
        const int v = t_.entry(s);
        rec.label = runner_label(v);
      } else {
        rec.label = StepCase::C2a;
      }
      if (rec.label == StepCase::C2b || rec.label == StepCase::C3b) {
        rec.h_event = (t_.h_of(zpre) == tstar_.entry(s + 1));
        rec.hstar_event = (tstar_.h_of(zspre) == t_.entry(s + 1));
      }
    }

    const DecodeStep stp = t_.step();
    const DecodeStep ssp = tstar_.step();
    rec.y = stp.y;
    rec.ystar = ssp.y;

    // Shared-edge gain of this step: the two new edges may coincide (also
    // crosswise, when each tree drains the other's displaced vertex), and a
    // new edge may duplicate an edge already present in the other tree,
    // which requires its placed endpoint to be that tree's displaced vertex.
    int gain = 0;
    if (make_edge(stp.y, stp.attach) == make_edge(ssp.y, ssp.attach)) {
      gain = 1;
    } else if (was_diverged) {
      if (stp.y == zspre && contains(zstar_nbrs_, stp.attach)) ++gain;
      if (ssp.y == zpre && contains(z_nbrs_, ssp.attach)) ++gain;
    }
    rec.delta = static_cast<std::int8_t>(1 - gain);

    if (!was_diverged) {
      if (stp.y != ssp.y) {
        // Divergence: only possible at the mutation step.
        check(s == mu_, "divergence away from the mutation step");
        diverged_ = true;
        z_ = stp.y;
        zstar_ = ssp.y;
        z_nbrs_.assign(1, stp.attach);
        zstar_nbrs_.assign(1, ssp.attach);
        recount_blocks();
        check(a_ + b_ + c_ == s - 1, "block sizes wrong at divergence");
      }
      rec.label = !diverged_ ? (s >= mu_ ? (s == mu_ ? StepCase::Merged : StepCase::PreMu)
                                         : StepCase::Merged)
                             : StepCase::PreMu;
    } else {
      apply_block_transition(rec.label);
      if (stp.y == ssp.y) {
        // Common placement; the displaced pair is untouched. Record any new
        // attachment made to a displaced vertex.
        if (stp.attach == zpre) z_nbrs_.push_back(stp.y);
        if (ssp.attach == zspre) zstar_nbrs_.push_back(ssp.y);
      } else {
        check(stp.y == zspre || ssp.y == zpre, "two fresh placements while diverged");
        const int newz = (ssp.y == zpre) ? (stp.y == zspre ? 0 : stp.y) : zpre;
        const int newzstar = (stp.y == zspre) ? (ssp.y == zpre ? 0 : ssp.y) : zspre;
        check((newz == 0) == (newzstar == 0), "half-empty displaced pair");
        if (newz == 0) {
          diverged_ = false;
          z_nbrs_.clear();
          zstar_nbrs_.clear();
        } else {
          if (newz != zpre) {
            z_nbrs_.assign(1, stp.attach);  // fresh placement edge in T
          } else if (stp.attach == zpre) {
            z_nbrs_.push_back(stp.y);
          }
          if (newzstar != zspre) {
            zstar_nbrs_.assign(1, ssp.attach);
          } else if (ssp.attach == zspre) {
            zstar_nbrs_.push_back(ssp.y);
          }
        }
        z_ = newz;
        zstar_ = newzstar;
      }
      if (diverged_) {
        check(a_ >= 0 && b_ >= 0 && c_ >= 0 && a_ + b_ + c_ == s - 1, "block sizes drifted");
      }
    }

    if (diverged_) {
      rec.a = a_;
      rec.b = b_;
      rec.c = c_;
      rec.z = z_;
      rec.zstar = zstar_;
    } else {
      rec.a = s;
      rec.b = rec.c = 0;
    }
    return rec;
  }

  const DecodeRun& tree_run() const { return t_; }
  const DecodeRun& tree_star_run() const { return tstar_; }

 private:
  static bool contains(const std::vector<int>& xs, int v) {
    return std::find(xs.begin(), xs.end(), v) != xs.end();
  }

  static void check(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("coupled decoder invariant broken: ") + what);
  }

  StepCase runner_label(int v) const {
    const int zmin = std::min(z_, zstar_);
    const int zmax = std::max(z_, zstar_);
    if (t_.unplaced(v) && tstar_.unplaced(v)) {
      return v < zmin ? StepCase::C1a : (v < zmax ? StepCase::C1b : StepCase::C1c);
    }
    if (v == zmax) {
      if (c_ > 0) return StepCase::C3c;
      return b_ > 0 ? StepCase::C3b : StepCase::C3a;
    }
    if (v == zmin) {
      return c_ > 0 ? StepCase::C4b : StepCase::C4a;
    }
    if (c_ > 0) return StepCase::C2c;
    return b_ > 0 ? StepCase::C2b : StepCase::C2a;
  }

  void apply_block_transition(StepCase label) {
    switch (label) {
      case StepCase::C1a: --a_; break;
      case StepCase::C1b: --b_; break;
      case StepCase::C1c: --c_; break;
      case StepCase::C2a:
      case StepCase::C3a:
      case StepCase::C4a: a_ = b_ = c_ = 0; break;
      case StepCase::C2b:
      case StepCase::C3b: --b_; break;
      case StepCase::C2c: --c_; break;
      case StepCase::C3c:
        b_ = b_ + c_ - 1;
        c_ = 0;
        break;
      case StepCase::C4b:
        a_ = a_ + b_;
        b_ = c_ - 1;
        c_ = 0;
        break;
      default: check(false, "diverged step with a non-case label");
    }
  }

  // Count the common unplaced vertices below/between/above the displaced
  // pair. Runs once per pair, at the divergence step.
  void recount_blocks() {
    const int zmin = std::min(z_, zstar_);
    const int zmax = std::max(z_, zstar_);
    a_ = b_ = c_ = 0;
    for (int v = 1; v <= n_; ++v) {
      if (t_.unplaced(v) && tstar_.unplaced(v)) {
        if (v < zmin) {
          ++a_;
        } else if (v < zmax) {
          ++b_;
        } else {
          ++c_;
        }
      }
    }
  }

  int n_ = 0;
  int mu_ = 0;
  DecodeRun t_;
  DecodeRun tstar_;
  bool diverged_ = false;
  int z_ = 0;
  int zstar_ = 0;
  int a_ = 0;
  int b_ = 0;
  int c_ = 0;
  std::vector<int> z_nbrs_;      // neighbors of z_ in T
  std::vector<int> zstar_nbrs_;  // neighbors of zstar_ in T*
};

// Lean accumulator for sampling and enumeration loops.
struct PairStats {
  int delta = 0;
  bool e = false;
};

inline PairStats run_pair_stats(CoupledRun& run, const MutationPair& pair) {
  run.reset(pair);
  PairStats stats;
  while (!run.done()) {
    const StepRecord rec = run.advance();
    stats.delta += rec.delta;
    if (rec.j == pair.mu) stats.e = (rec.z == 0);
  }
  return stats;
}

// tau(z): the largest step index j <= mu whose upper block size c(j) is at
// most z; c(j) counts as 0 whenever the displaced pair is absent. Always
// >= 1 because the blocks are empty at j = 1.
inline int compute_tau(const DecodeTrace& trace, double z) {
  for (int j = trace.pair.mu; j >= 1; --j) {
    if (static_cast<double>(trace.at_state(j).c) <= z) return j;
  }
  return 1;
}

inline EventFlags detect_events(const DecodeTrace& trace, double delta_n, double beta_n) {
  EventFlags flags;
  flags.delta_n = delta_n;
  flags.beta_n = beta_n;
  const StepRecord& at_mu = trace.at_state(trace.pair.mu);
  flags.e = (at_mu.z == 0);
  const int b_mu = at_mu.b;
  flags.e1 = !flags.e && static_cast<double>(b_mu) < delta_n;
  flags.e2 = static_cast<double>(b_mu) >= delta_n;
  const int tau0 = compute_tau(trace, 0.0);
  const int tau_delta = compute_tau(trace, delta_n);
  flags.s = static_cast<double>(trace.at_state(tau0).b) >= delta_n / 4096.0;
  flags.t1 = static_cast<double>(tau_delta - tau0) <= 2.0 * beta_n;
  flags.t2 = static_cast<double>(tau0) <= static_cast<double>(trace.pair.n()) - beta_n;
  return flags;
}

inline EventFlags detect_events(const DecodeTrace& trace) {
  return detect_events(trace, default_delta_n(trace.pair.n()), default_beta_n(trace.pair.n()));
}

// Full lockstep decode. Summary detail keeps one fixed-size record per
// step (O(n) memory); Full additionally snapshots the three blocks after
// every step, which is O(n^2) and meant for small n.
inline DecodeTrace decode_pair(const MutationPair& pair, TraceDetail detail = TraceDetail::Summary) {
  DecodeTrace trace;
  trace.pair = pair;
  CoupledRun run(pair);
  trace.steps.reserve(static_cast<std::size_t>(pair.n()) - 1);
  while (!run.done()) {
    trace.steps.push_back(run.advance());
    trace.delta_total += trace.steps.back().delta;
    if (detail == TraceDetail::Full) {
      DecodeTrace::StepSets sets;
      const CoupledState st = run.state();
      const int zmin = std::min(st.z, st.zstar);
      const int zmax = std::max(st.z, st.zstar);
      for (int v = 1; v <= st.n; ++v) {
        if (!st.unplaced_both(v)) continue;
        if (!st.diverged || v < zmin) {
          sets.a_set.push_back(v);
        } else if (v < zmax) {
          sets.b_set.push_back(v);
        } else {
          sets.c_set.push_back(v);
        }
      }
      trace.sets.push_back(std::move(sets));
    }
  }
  trace.flags = detect_events(trace);
  trace.tau0 = compute_tau(trace, 0.0);
  trace.tau_delta = compute_tau(trace, trace.flags.delta_n);
  trace.b_at_tau0 = trace.at_state(trace.tau0).b;
  return trace;
}

// --- trace export -----------------------------------------------------

namespace detail {

inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace detail

// CSV: header object as `# key=value` comment lines, then one row per step.
inline void write_trace_csv(std::ostream& out, const DecodeTrace& trace) {
  const EventFlags& f = trace.flags;
  out << "# n=" << trace.pair.n() << " mu=" << trace.pair.mu
      << " delta_total=" << trace.delta_total << " E=" << f.e << " E1=" << f.e1
      << " E2=" << f.e2 << " S=" << f.s << " T1=" << f.t1 << " T2=" << f.t2
      << " delta_n=" << detail::fmt_double(f.delta_n)
      << " beta_n=" << detail::fmt_double(f.beta_n) << " tau0=" << trace.tau0
      << " tau_delta=" << trace.tau_delta << " b_at_tau0=" << trace.b_at_tau0 << "\n";
  out << "j,y,ystar,delta_j,a,b,c,z,zstar,case,H,Hstar\n";
  for (const StepRecord& r : trace.steps) {
    out << r.j << ',' << r.y << ',' << r.ystar << ',' << static_cast<int>(r.delta) << ',' << r.a
        << ',' << r.b << ',' << r.c << ',' << r.z << ',' << r.zstar << ',' << to_string(r.label)
        << ',' << r.h_event << ',' << r.hstar_event << "\n";
  }
}

// Line-delimited JSON: the header object first, then one object per step.
inline void write_trace_json(std::ostream& out, const DecodeTrace& trace) {
  const EventFlags& f = trace.flags;
  auto b = [](bool x) { return x ? "true" : "false"; };
  out << "{\"n\":" << trace.pair.n() << ",\"mu\":" << trace.pair.mu
      << ",\"delta_total\":" << trace.delta_total << ",\"E\":" << b(f.e) << ",\"E1\":" << b(f.e1)
      << ",\"E2\":" << b(f.e2) << ",\"S\":" << b(f.s) << ",\"T1\":" << b(f.t1)
      << ",\"T2\":" << b(f.t2) << ",\"delta_n\":" << detail::fmt_double(f.delta_n)
      << ",\"beta_n\":" << detail::fmt_double(f.beta_n) << ",\"tau0\":" << trace.tau0
      << ",\"tau_delta\":" << trace.tau_delta << ",\"b_at_tau0\":" << trace.b_at_tau0 << "}\n";
  for (const StepRecord& r : trace.steps) {
    out << "{\"j\":" << r.j << ",\"y\":" << r.y << ",\"ystar\":" << r.ystar
        << ",\"delta_j\":" << static_cast<int>(r.delta) << ",\"a\":" << r.a << ",\"b\":" << r.b
        << ",\"c\":" << r.c << ",\"z\":";
    if (r.z) {
      out << r.z;
    } else {
      out << "null";
    }
    out << ",\"zstar\":";
    if (r.zstar) {
      out << r.zstar;
    } else {
      out << "null";
    }
    out << ",\"case\":\"" << to_string(r.label) << "\",\"H\":" << b(r.h_event)
        << ",\"Hstar\":" << b(r.hstar_event) << "}\n";
  }
}

}  // namespace prufer
