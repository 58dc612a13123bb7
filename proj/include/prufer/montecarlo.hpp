#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "prufer/coupled.hpp"
#include "prufer/parallel.hpp"
#include "prufer/rng.hpp"

namespace prufer {

// Sampling plan for one order n: positions to estimate (with the alpha
// that produced each, for reporting), samples per position, stream seed.
struct SimConfig {
  int n = 0;
  std::vector<int> mus;
  std::vector<double> alphas;  // parallel to mus
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int max_ell_tracked = 64;  // larger distances pool into the overflow bucket
  int workers = 0;
};

// Position from a grid ratio: round half up, clamped to the legal range.
inline int mu_from_alpha(int n, double alpha) {
  const int mu = static_cast<int>(std::floor(alpha * n + 0.5));
  return std::min(std::max(mu, 1), n - 2);
}

inline SimConfig make_alpha_grid_config(int n, const std::vector<double>& alphas,
                                        std::uint64_t samples, std::uint64_t seed,
                                        int max_ell = 64, int workers = 0) {
  SimConfig cfg;
  cfg.n = n;
  cfg.alphas = alphas;
  for (double a : alphas) cfg.mus.push_back(mu_from_alpha(n, a));
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.max_ell_tracked = max_ell;
  cfg.workers = workers;
  return cfg;
}

inline SimConfig make_mu_config(int n, const std::vector<int>& mus, std::uint64_t samples,
                                std::uint64_t seed, int max_ell = 64, int workers = 0) {
  SimConfig cfg;
  cfg.n = n;
  cfg.mus = mus;
  for (int mu : mus) cfg.alphas.push_back(static_cast<double>(mu) / n);
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.max_ell_tracked = max_ell;
  cfg.workers = workers;
  return cfg;
}

struct OverflowBucket {
  std::uint64_t count = 0;
  std::uint64_t sum = 0;  // of the pooled distances
  int max = 0;
};

// Sampled distribution of the distance at one position (mu == 0 marks the
// marginal over uniformly drawn positions).
struct DistEstimate {
  int n = 0;
  int mu = 0;
  double alpha = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;  // counts[ell], ell = 0 .. max_ell_tracked
  OverflowBucket overflow;
  double elapsed_sec = 0.0;

  double p_hat(int ell) const {
    return static_cast<double>(counts[static_cast<std::size_t>(ell)]) /
           static_cast<double>(samples);
  }
};

// 95% Wilson score interval; stays honest for counts near 0.
inline std::pair<double, double> wilson95(std::uint64_t successes, std::uint64_t samples) {
  const double z = 1.9599639845400545;
  const double s = static_cast<double>(samples);
  const double ph = static_cast<double>(successes) / s;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / s;
  const double center = (ph + z2 / (2.0 * s)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / s + z2 / (4.0 * s * s)) / denom;
  // center - half equals ph analytically at the extremes; keep it exact.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == samples ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

// Uniform pair from the mutation slice at mu: every entry of P uniform on
// {1..n}, then the mutated value uniform on the other n-1 labels. The draw
// order (entries first, then the mutated value) is part of the stream
// contract.
inline void fill_sample(int n, int mu, RandomStream& stream, MutationPair& pair) {
  pair.base.n = n;
  pair.base.entries.resize(static_cast<std::size_t>(n) - 2);
  for (int& e : pair.base.entries) e = stream.uniform_vertex(n);
  pair.mu = mu;
  const int current = pair.base.p(mu);
  const int r = 1 + static_cast<int>(stream.next_below(static_cast<std::uint32_t>(n - 1)));
  pair.mutated_value = r >= current ? r + 1 : r;
}

inline MutationPair sample_pair(int n, int mu, RandomStream& stream) {
  MutationPair pair;
  fill_sample(n, mu, stream, pair);
  return pair;
}

namespace detail {

struct Tally {
  std::vector<std::uint64_t> counts;
  OverflowBucket overflow;

  explicit Tally(int max_ell) : counts(static_cast<std::size_t>(max_ell) + 1, 0) {}

  void add(int delta) {
    if (delta < static_cast<int>(counts.size())) {
      ++counts[static_cast<std::size_t>(delta)];
    } else {
      ++overflow.count;
      overflow.sum += static_cast<std::uint64_t>(delta);
      overflow.max = std::max(overflow.max, delta);
    }
  }

  void merge(const Tally& other) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    overflow.count += other.overflow.count;
    overflow.sum += other.overflow.sum;
    overflow.max = std::max(overflow.max, other.overflow.max);
  }
};

// Shared sampling loop. Sample i draws from a stream keyed by
// (seed, n, mu_key, i), so the tally is a pure function of the config no
// matter how samples are sheared across workers. mu_key == 0 selects the
// marginal: the position itself is the stream's first draw.
inline DistEstimate run_estimate(int n, int mu_key, double alpha, std::uint64_t samples,
                                 std::uint64_t seed, int max_ell, int workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const int nworkers = resolve_workers(workers);
  std::vector<Tally> partials(static_cast<std::size_t>(nworkers), Tally(max_ell));
  parallel_ranges(samples, nworkers, [&](int worker, std::uint64_t lo, std::uint64_t hi) {
    Tally& tally = partials[static_cast<std::size_t>(worker)];
    MutationPair pair;
    CoupledRun run;
    for (std::uint64_t i = lo; i < hi; ++i) {
      RandomStream stream(seed, static_cast<std::uint64_t>(n),
                          static_cast<std::uint64_t>(mu_key), i);
      const int mu = mu_key != 0 ? mu_key
                                 : 1 + static_cast<int>(stream.next_below(
                                           static_cast<std::uint32_t>(n - 2)));
      fill_sample(n, mu, stream, pair);
      tally.add(run_pair_stats(run, pair).delta);
    }
  });
  Tally total(max_ell);
  for (const Tally& part : partials) total.merge(part);

  DistEstimate est;
  est.n = n;
  est.mu = mu_key;
  est.alpha = alpha;
  est.samples = samples;
  est.seed = seed;
  est.counts = std::move(total.counts);
  est.overflow = total.overflow;
  est.elapsed_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return est;
}

}  // namespace detail

// One estimate per configured position.
inline std::vector<DistEstimate> estimate_delta_dist(const SimConfig& cfg) {
  if (cfg.n < 3) throw Error("simulation needs n >= 3");
  if (cfg.samples < 1) throw Error("simulation needs at least one sample");
  if (cfg.max_ell_tracked < 1) throw Error("histogram cutoff must be at least 1");
  for (int mu : cfg.mus) {
    if (mu < 1 || mu > cfg.n - 2) {
      throw Error("mutation position " + std::to_string(mu) + " outside 1.." +
                  std::to_string(cfg.n - 2));
    }
  }
  std::vector<DistEstimate> out;
  out.reserve(cfg.mus.size());
  for (std::size_t k = 0; k < cfg.mus.size(); ++k) {
    out.push_back(detail::run_estimate(cfg.n, cfg.mus[k], cfg.alphas[k], cfg.samples, cfg.seed,
                                       cfg.max_ell_tracked, cfg.workers));
  }
  return out;
}

// Marginal estimate: each sample first draws its position uniformly.
inline DistEstimate estimate_marginal(int n, std::uint64_t samples, std::uint64_t seed,
                                      int max_ell = 64, int workers = 0) {
  if (n < 3) throw Error("simulation needs n >= 3");
  if (samples < 1) throw Error("simulation needs at least one sample");
  return detail::run_estimate(n, 0, 0.0, samples, seed, max_ell, workers);
}

// One grid point of the perfect-mutation curve.
struct SweepPoint {
  int n = 0;
  double alpha = 0.0;
  int mu = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double p_hat1 = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double reference = 0.0;  // (1 - alpha)^2
  double residual = 0.0;
};

inline std::vector<SweepPoint> curve_sweep(int n, const std::vector<double>& alphas,
                                           std::uint64_t samples, std::uint64_t seed,
                                           int workers = 0) {
  const SimConfig cfg = make_alpha_grid_config(n, alphas, samples, seed, 64, workers);
  const std::vector<DistEstimate> estimates = estimate_delta_dist(cfg);
  std::vector<SweepPoint> out;
  out.reserve(alphas.size());
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const DistEstimate& est = estimates[k];
    SweepPoint pt;
    pt.n = n;
    pt.alpha = alphas[k];
    pt.mu = est.mu;
    pt.samples = samples;
    pt.seed = seed;
    pt.p_hat1 = est.p_hat(1);
    const auto ci = wilson95(est.counts[1], est.samples);
    pt.ci_low = ci.first;
    pt.ci_high = ci.second;
    pt.reference = (1.0 - alphas[k]) * (1.0 - alphas[k]);
    pt.residual = pt.p_hat1 - pt.reference;
    out.push_back(pt);
  }
  return out;
}

// --- CSV / JSON -------------------------------------------------------

namespace detail {

inline std::string fmt_prob(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace detail

inline const char* estimate_csv_header() {
  return "n,mu,alpha,ell,count,samples,p_hat,ci_low,ci_high,seed";
}

// Rows for every tracked distance with hits (the perfect-mutation row is
// always present), then the pooled overflow row as ell = ">K". Marginal
// estimates carry mu = "all" and an empty alpha.
inline void write_estimate_csv_rows(std::ostream& out, const DistEstimate& est) {
  auto row = [&](const std::string& ell, std::uint64_t count) {
    const auto ci = wilson95(count, est.samples);
    out << est.n << ',';
    if (est.mu == 0) {
      out << "all";
    } else {
      out << est.mu;
    }
    out << ',';
    if (est.mu != 0) out << detail::fmt_prob(est.alpha);
    out << ',' << ell << ',' << count << ',' << est.samples << ','
        << detail::fmt_prob(static_cast<double>(count) / static_cast<double>(est.samples)) << ','
        << detail::fmt_prob(ci.first) << ',' << detail::fmt_prob(ci.second) << ',' << est.seed
        << "\n";
  };
  for (std::size_t ell = 0; ell < est.counts.size(); ++ell) {
    if (est.counts[ell] == 0 && ell != 1) continue;
    row(std::to_string(ell), est.counts[ell]);
  }
  if (est.overflow.count > 0) {
    row(">" + std::to_string(est.counts.size() - 1), est.overflow.count);
  }
}

inline void write_estimate_json_rows(std::ostream& out, const DistEstimate& est) {
  auto b = [&](const std::string& ell, std::uint64_t count) {
    const auto ci = wilson95(count, est.samples);
    out << "{\"n\":" << est.n << ",\"mu\":";
    if (est.mu == 0) {
      out << "\"all\"";
    } else {
      out << est.mu;
    }
    out << ",\"alpha\":";
    if (est.mu == 0) {
      out << "null";
    } else {
      out << detail::fmt_prob(est.alpha);
    }
    out << ",\"ell\":\"" << ell << "\",\"count\":" << count << ",\"samples\":" << est.samples
        << ",\"p_hat\":" << detail::fmt_prob(static_cast<double>(count) /
                                             static_cast<double>(est.samples))
        << ",\"ci_low\":" << detail::fmt_prob(ci.first)
        << ",\"ci_high\":" << detail::fmt_prob(ci.second) << ",\"seed\":" << est.seed << "}\n";
  };
  for (std::size_t ell = 0; ell < est.counts.size(); ++ell) {
    if (est.counts[ell] == 0 && ell != 1) continue;
    b(std::to_string(ell), est.counts[ell]);
  }
  if (est.overflow.count > 0) {
    b(">" + std::to_string(est.counts.size() - 1), est.overflow.count);
  }
}

inline const char* sweep_csv_header() {
  return "n,alpha,mu,samples,p_hat1,ci_low,ci_high,reference,residual,seed";
}

inline void write_sweep_csv_rows(std::ostream& out, const std::vector<SweepPoint>& points) {
  for (const SweepPoint& pt : points) {
    out << pt.n << ',' << detail::fmt_prob(pt.alpha) << ',' << pt.mu << ',' << pt.samples << ','
        << detail::fmt_prob(pt.p_hat1) << ',' << detail::fmt_prob(pt.ci_low) << ','
        << detail::fmt_prob(pt.ci_high) << ',' << detail::fmt_prob(pt.reference) << ','
        << detail::fmt_prob(pt.residual) << ',' << pt.seed << "\n";
  }
}

}  // namespace prufer
