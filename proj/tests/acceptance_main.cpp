// Acceptance suite: runs every criterion at its stated size and tolerance
// and prints one pass/fail line each. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prufer/codec.hpp"
#include "prufer/coupled.hpp"
#include "prufer/enumerate.hpp"
#include "prufer/montecarlo.hpp"
#include "prufer/tree.hpp"
#include "test_util.hpp"

using namespace prufer;

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

const std::vector<MuTally>& tallies_n8() {
  static const std::vector<MuTally> t = [] {
    std::vector<int> mus;
    for (int mu = 1; mu <= 6; ++mu) mus.push_back(mu);
    return enumerate_tallies(8, mus);
  }();
  return t;
}

// 1. encode(decode(P)) = P exhaustively for n=3..7; decode(encode(T)) = T
//    for 1000 random trees at each n in {1e2, 1e3, 1e4, 1e5}.
bool codec_exactness(std::string& detail) {
  long strings = 0;
  for (int n = 3; n <= 7; ++n) {
    bool ok = true;
    testutil::for_each_string(n, [&](const PruferString& p) {
      ++strings;
      if (!(encode(decode(p)) == p)) ok = false;
    });
    if (!ok) {
      detail = "string round-trip failed at n=" + std::to_string(n);
      return false;
    }
  }
  std::mt19937_64 rng(20250810);
  long trees = 0;
  for (int n : {100, 1000, 10000, 100000}) {
    for (int rep = 0; rep < 1000; ++rep) {
      const LabeledTree t = testutil::random_tree(n, rng);
      ++trees;
      if (!(decode(encode(t)) == t)) {
        detail = "tree round-trip failed at n=" + std::to_string(n);
        return false;
      }
    }
  }
  detail = std::to_string(strings) + " strings + " + std::to_string(trees) + " trees exact";
  return true;
}

// 2. decode((4,3,2,2,7)) has the worked h-map.
bool worked_example(std::string& detail) {
  const HMap h = h_map(make_prufer(7, {4, 3, 2, 2, 7}));
  const std::vector<int> want{4, 7, 2, 3, 2, 7};
  for (int v = 1; v <= 6; ++v) {
    if (h(v) != want[v - 1]) {
      detail = "h(" + std::to_string(v) + ") = " + std::to_string(h(v));
      return false;
    }
  }
  detail = "h = (4,7,2,3,2,7)";
  return true;
}

// 3. count_event_E(n, mu) = n^(n-3) (n-mu)(n-mu-1) exactly for n=4..8, all
//    mu, and every flagged pair has distance 1.
bool event_e_closed_form(std::string& detail) {
  for (int n = 4; n <= 8; ++n) {
    std::vector<int> mus;
    for (int mu = 1; mu <= n - 2; ++mu) mus.push_back(mu);
    const std::vector<MuTally>& tallies = n == 8 ? tallies_n8() : enumerate_tallies(n, mus);
    for (const MuTally& t : tallies) {
      const u128 want = u128_mul_checked(
          u128_pow(static_cast<unsigned>(n), n - 3),
          static_cast<unsigned>((n - t.mu) * (n - t.mu - 1)));
      if (u128{t.e_count} != want) {
        detail = "count mismatch at n=" + std::to_string(n) + " mu=" + std::to_string(t.mu);
        return false;
      }
      if (t.e_not_delta1 != 0) {
        detail = "flagged pair with distance != 1 at n=" + std::to_string(n);
        return false;
      }
    }
  }
  detail = "all counts exact, every flagged pair has distance 1";
  return true;
}

// 4. Exhaustively for n <= 7: P(delta=1|mu) >= (n-mu)(n-mu-1)/(n(n-1)) as
//    exact rationals, and counts(0) = 0.
bool lower_bound_identity(std::string& detail) {
  for (int n = 3; n <= 7; ++n) {
    for (int mu = 1; mu <= n - 2; ++mu) {
      const ExactDistribution d = enumerate_mu(n, mu);
      if (d.counts[0] != 0) {
        detail = "distance-zero pair at n=" + std::to_string(n);
        return false;
      }
      const u128 lhs = u128_mul_checked(d.counts[1], static_cast<unsigned>(n * (n - 1)));
      const u128 rhs = u128_mul_checked(d.total, static_cast<unsigned>((n - mu) * (n - mu - 1)));
      if (lhs < rhs) {
        detail = "bound violated at n=" + std::to_string(n) + " mu=" + std::to_string(mu);
        return false;
      }
    }
  }
  detail = "exact rational bound holds for every (n, mu), no zero distances";
  return true;
}

// 5. 1e4 random pairs at n=200: telescoping sum equals the independent
//    distance, increments in {-1,0,1} with at most one -1, and every
//    classification prediction matches the executed transition.
bool state_machine_consistency(std::string& detail) {
  std::mt19937_64 rng(777001);
  const int n = 200;
  long predictions = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const MutationPair pair = testutil::random_pair(n, rng);
    CoupledRun run(pair);
    int sum = 0, minus = 0;
    while (!run.done()) {
      const CoupledState st = run.state();
      Prediction pred;
      bool have_pred = false;
      if (st.diverged && run.next_step() >= 1) {
        pred = classify_step(st, run.next_entry());
        have_pred = true;
      }
      const StepRecord rec = run.advance();
      if (rec.delta < -1 || rec.delta > 1) {
        detail = "increment out of range";
        return false;
      }
      if (rec.delta == -1) ++minus;
      sum += rec.delta;
      if (have_pred) {
        ++predictions;
        if (pred.label != rec.label || pred.a != rec.a || pred.b != rec.b || pred.c != rec.c ||
            pred.z != rec.z || pred.zstar != rec.zstar || rec.delta < pred.delta_min ||
            rec.delta > pred.delta_max) {
          detail = "prediction mismatch at j=" + std::to_string(rec.j);
          return false;
        }
      }
    }
    if (minus > 1) {
      detail = "more than one -1 increment";
      return false;
    }
    if (sum != tree_distance(decode(pair.base), decode(pair.pstar_string()))) {
      detail = "telescoping sum disagrees with the independent distance";
      return false;
    }
  }
  detail = std::to_string(predictions) + " step predictions matched";
  return true;
}

// 6. n=8, 1e6 samples per position: every estimate with exact probability
//    >= 1e-3 within 4 standard errors of the enumerator; the marginal
//    estimate is held to the aggregated exact table the same way.
bool small_n_monte_carlo(std::string& detail) {
  const int n = 8;
  const std::uint64_t samples = 1000000;
  const std::vector<MuTally>& exact = tallies_n8();
  const u128 total = u128_mul_checked(u128_pow(8, 6), 7);
  double worst = 0.0;
  auto check = [&](const DistEstimate& est, const std::vector<double>& probs,
                   const std::string& which) {
    for (int ell = 0; ell <= 7; ++ell) {
      const double p = probs[static_cast<std::size_t>(ell)];
      if (p < 1e-3) continue;
      const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
      const double dev = std::abs(est.p_hat(ell) - p) / se;
      worst = std::max(worst, dev);
      if (dev > 4.0) {
        detail = which + " ell=" + std::to_string(ell) + " off by " + fmt(dev) + " SE";
        return false;
      }
    }
    return true;
  };
  for (const MuTally& t : exact) {
    const SimConfig cfg = make_mu_config(n, {t.mu}, samples, 860000 + t.mu, 16);
    std::vector<double> probs;
    for (int ell = 0; ell <= 7; ++ell) {
      probs.push_back(static_cast<double>(t.counts[ell]) / static_cast<double>(total));
    }
    if (!check(estimate_delta_dist(cfg)[0], probs, "mu=" + std::to_string(t.mu))) return false;
  }
  std::vector<double> marginal(8, 0.0);
  for (const MuTally& t : exact) {
    for (int ell = 0; ell <= 7; ++ell) {
      marginal[static_cast<std::size_t>(ell)] +=
          static_cast<double>(t.counts[ell]) / static_cast<double>(total) / 6.0;
    }
  }
  if (!check(estimate_marginal(n, samples, 867000), marginal, "marginal")) return false;
  detail = "worst deviation " + fmt(worst) + " SE (limit 4)";
  return true;
}

// 7. n=1000, alpha = 0.1..0.9, 1e5 samples per point:
//    |p_hat(1) - (1-alpha)^2| <= 0.05 everywhere.
bool asymptotic_curve(std::string& detail) {
  std::vector<double> alphas;
  for (int k = 1; k <= 9; ++k) alphas.push_back(k / 10.0);
  const auto points = curve_sweep(1000, alphas, 100000, 700700);
  double worst = 0.0;
  for (const auto& pt : points) worst = std::max(worst, std::abs(pt.residual));
  detail = "max |p_hat(1) - (1-a)^2| = " + fmt(worst) + " (limit 0.05)";
  return worst <= 0.05;
}

// 8. n=1000, 1e5 samples, uniform position: |p_hat(1) - 1/3| <= 0.03.
bool perfect_mutation_limit(std::string& detail) {
  const DistEstimate est = estimate_marginal(1000, 100000, 808080);
  const double dev = std::abs(est.p_hat(1) - 1.0 / 3.0);
  detail = "p_hat(1) = " + fmt(est.p_hat(1)) + ", |dev| = " + fmt(dev) + " (limit 0.03)";
  return dev <= 0.03;
}

// 9. Tail trend: for ell in {2,3}, p_hat(ell) decreases monotonically as n
//    grows through {250, 1000, 4000} under the same sample budget, with the
//    endpoint comparison strict.
bool tail_trend(std::string& detail) {
  const std::uint64_t samples = 100000;
  std::vector<DistEstimate> ests;
  for (int n : {250, 1000, 4000}) ests.push_back(estimate_marginal(n, samples, 909090));
  std::ostringstream os;
  for (int ell : {2, 3}) {
    os << "ell=" << ell << ":";
    for (const auto& est : ests) os << " " << fmt(est.p_hat(ell));
    os << "  ";
    for (std::size_t k = 1; k < ests.size(); ++k) {
      if (ests[k].p_hat(ell) > ests[k - 1].p_hat(ell)) {
        detail = os.str() + "(trend not monotone)";
        return false;
      }
    }
    if (!(ests.back().p_hat(ell) < ests.front().p_hat(ell))) {
      detail = os.str() + "(no strict endpoint decrease)";
      return false;
    }
  }
  detail = os.str();
  return true;
}

// 10. simulate with a fixed seed is bit-identical at 1, 4 and 16 workers.
bool determinism(std::string& detail) {
  auto render = [](int workers) {
    std::ostringstream os;
    os << estimate_csv_header() << "\n";
    const SimConfig cfg = make_mu_config(100, {25, 50, 75}, 20000, 424242, 64, workers);
    for (const DistEstimate& est : estimate_delta_dist(cfg)) write_estimate_csv_rows(os, est);
    write_estimate_csv_rows(os, estimate_marginal(100, 20000, 424242, 64, workers));
    return os.str();
  };
  const std::string w1 = render(1);
  const std::string w4 = render(4);
  const std::string w16 = render(16);
  if (w1 != w4 || w1 != w16) {
    detail = "CSV differs across worker counts";
    return false;
  }
  detail = std::to_string(testutil::nonempty_lines(w1).size()) + " identical CSV lines";
  return true;
}

}  // namespace

int main() {
  using Criterion = std::pair<const char*, std::function<bool(std::string&)>>;
  const std::vector<Criterion> criteria{
      {"codec exactness", codec_exactness},
      {"worked h-map example", worked_example},
      {"event-E closed form", event_e_closed_form},
      {"lower-bound identity", lower_bound_identity},
      {"telescoping/state-machine consistency", state_machine_consistency},
      {"small-n Monte Carlo vs oracle", small_n_monte_carlo},
      {"asymptotic curve", asymptotic_curve},
      {"perfect-mutation limit", perfect_mutation_limit},
      {"tail trend", tail_trend},
      {"worker-count determinism", determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criteria[k].second(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %zu. %s: %s [%.1fs]\n", ok ? "PASS" : "FAIL", k + 1, criteria[k].first,
                detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures == 0) {
    std::printf("all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures;
}
