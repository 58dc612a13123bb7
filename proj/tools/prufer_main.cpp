// Command-line front end: codec round-trips, pair tracing, exact
// enumeration and Monte Carlo sweeps, with CSV/JSON output for plotting.
//
// Exit codes: 0 success, 2 invalid arguments, 3 infeasible size,
// 4 malformed input data.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prufer/codec.hpp"
#include "prufer/coupled.hpp"
#include "prufer/enumerate.hpp"
#include "prufer/montecarlo.hpp"
#include "prufer/rng.hpp"
#include "prufer/tree.hpp"

namespace {

constexpr int kExitBadArgs = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitBadInput = 4;

struct BadArgs {
  std::string message;
};

// Output sink: --out file or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw BadArgs{"cannot open output file: " + path};
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::string> read_lines_or_fail(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadArgs{"cannot open input file: " + path};
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<prufer::LabeledTree> load_trees(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadArgs{"cannot open input file: " + path};
  return prufer::parse_tree_lines(in);
}

// Inline flag values are arguments, not data: their parse errors exit 2.
template <typename F>
auto parse_inline(F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const prufer::Error& e) {
    throw BadArgs{e.what()};
  }
}

std::vector<double> parse_alpha_grid(const std::string& grid) {
  std::vector<double> alphas;
  const auto colon = grid.find(':');
  if (colon != std::string::npos) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(grid);
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0) {
      throw BadArgs{"bad --alpha-grid range, want lo:hi:step"};
    }
    for (double a = lo; a <= hi + 1e-9; a += step) alphas.push_back(a);
  } else {
    std::istringstream is(grid);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      try {
        alphas.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw BadArgs{"bad alpha value: " + tok};
      }
    }
  }
  if (alphas.empty()) throw BadArgs{"empty --alpha-grid"};
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw BadArgs{"alpha values must lie in (0,1)"};
  }
  return alphas;
}

void print_flags(std::ostream& out, const prufer::DecodeTrace& trace) {
  const prufer::EventFlags& f = trace.flags;
  out << "flags:  E=" << f.e << " E1=" << f.e1 << " E2=" << f.e2 << " S=" << f.s
      << " T1=" << f.t1 << " T2=" << f.t2 << " delta_n=" << prufer::detail::fmt_double(f.delta_n)
      << " beta_n=" << prufer::detail::fmt_double(f.beta_n) << "\n";
  out << "tau:    tau0=" << trace.tau0 << " tau_delta=" << trace.tau_delta
      << " b_at_tau0=" << trace.b_at_tau0 << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Prufer-code locality toolkit: codec, coupled pair decoding, exact enumeration "
               "and Monte Carlo estimation of the mutation-distance distribution"};
  app.require_subcommand(1);

  // --- encode ---
  auto* cmd_encode = app.add_subcommand("encode", "tree lines -> P-string lines");
  std::string enc_in, enc_tree, enc_out;
  cmd_encode->add_option("--in", enc_in, "file of tree lines `n; u-v, ...`");
  cmd_encode->add_option("--tree", enc_tree, "one inline tree line");
  cmd_encode->add_option("--out", enc_out, "output file (default stdout)");
  cmd_encode->callback([&] {
    if ((enc_in.empty()) == (enc_tree.empty())) {
      throw BadArgs{"encode needs exactly one of --in / --tree"};
    }
    Sink sink(enc_out);
    std::vector<prufer::LabeledTree> trees;
    if (!enc_in.empty()) {
      trees = load_trees(enc_in);
    } else {
      trees.push_back(parse_inline([&] { return prufer::parse_tree(enc_tree); }));
    }
    for (const auto& tree : trees) {
      sink.stream() << prufer::format_prufer(prufer::encode(tree)) << "\n";
    }
  });

  // --- decode ---
  auto* cmd_decode = app.add_subcommand("decode", "P-string lines -> tree lines");
  std::string dec_in, dec_string, dec_out;
  int dec_n = 0;
  cmd_decode->add_option("--in", dec_in, "file of P-string lines `n; p1,p2,...`");
  cmd_decode->add_option("--n", dec_n, "order for --string");
  cmd_decode->add_option("--string", dec_string, "inline comma-separated entries");
  cmd_decode->add_option("--out", dec_out, "output file (default stdout)");
  cmd_decode->callback([&] {
    if ((dec_in.empty()) == (dec_string.empty())) {
      throw BadArgs{"decode needs exactly one of --in / --string"};
    }
    Sink sink(dec_out);
    std::vector<prufer::PruferString> strings;
    if (!dec_in.empty()) {
      std::ifstream in(dec_in);
      if (!in) throw BadArgs{"cannot open input file: " + dec_in};
      strings = prufer::parse_prufer_lines(in);
    } else {
      if (dec_n == 0) throw BadArgs{"--string requires --n"};
      strings.push_back(parse_inline([&] { return prufer::parse_entry_list(dec_n, dec_string); }));
    }
    for (const auto& p : strings) {
      sink.stream() << prufer::format_tree(prufer::decode(p)) << "\n";
    }
  });

  // --- dist ---
  auto* cmd_dist = app.add_subcommand("dist", "edge distance between paired tree lines");
  std::string dist_a, dist_b, dist_out;
  cmd_dist->add_option("--tree-a", dist_a, "file of tree lines")->required();
  cmd_dist->add_option("--tree-b", dist_b, "file of tree lines")->required();
  cmd_dist->add_option("--out", dist_out, "output file (default stdout)");
  cmd_dist->callback([&] {
    Sink sink(dist_out);
    const auto ta = load_trees(dist_a);
    const auto tb = load_trees(dist_b);
    if (ta.size() != tb.size()) {
      throw prufer::ParseError("tree counts differ: " + std::to_string(ta.size()) + " vs " +
                               std::to_string(tb.size()));
    }
    for (std::size_t i = 0; i < ta.size(); ++i) {
      sink.stream() << prufer::tree_distance(ta[i], tb[i]) << "\n";
    }
  });

  // --- mutate ---
  auto* cmd_mutate = app.add_subcommand("mutate", "report one mutation pair");
  std::string mut_string, mut_out;
  int mut_n = 0, mut_mu = 0, mut_value = 0;
  bool mut_random = false, mut_with_trace = false;
  std::uint64_t mut_seed = 0;
  cmd_mutate->add_option("--n", mut_n, "order")->required();
  cmd_mutate->add_option("--string", mut_string, "comma-separated entries (random if omitted)");
  cmd_mutate->add_option("--mu", mut_mu, "mutation position (random if omitted)");
  cmd_mutate->add_option("--value", mut_value, "mutated entry (random if omitted)");
  cmd_mutate->add_flag("--random", mut_random, "draw the missing parts from --seed");
  cmd_mutate->add_option("--seed", mut_seed, "seed for --random");
  cmd_mutate->add_flag("--with-trace", mut_with_trace, "append the per-step trace");
  cmd_mutate->add_option("--out", mut_out, "output file (default stdout)");
  cmd_mutate->callback([&] {
    if (!mut_random && (mut_string.empty() || mut_mu == 0 || mut_value == 0)) {
      throw BadArgs{"mutate needs --string, --mu and --value, or --random"};
    }
    prufer::RandomStream stream(mut_seed, static_cast<std::uint64_t>(mut_n), 0x6d757461u, 0);
    prufer::PruferString p;
    if (!mut_string.empty()) {
      p = parse_inline([&] { return prufer::parse_entry_list(mut_n, mut_string); });
    } else {
      p.n = mut_n;
      if (mut_n < 3) throw BadArgs{"--n must be at least 3"};
      p.entries.resize(static_cast<std::size_t>(mut_n) - 2);
      for (int& e : p.entries) e = stream.uniform_vertex(mut_n);
    }
    const int mu = mut_mu != 0
                       ? mut_mu
                       : 1 + static_cast<int>(stream.next_below(static_cast<std::uint32_t>(p.n - 2)));
    int value = mut_value;
    if (value == 0) {
      const int r = 1 + static_cast<int>(stream.next_below(static_cast<std::uint32_t>(p.n - 1)));
      value = r >= p.p(mu) ? r + 1 : r;
    }
    const auto pair = parse_inline([&] { return prufer::make_mutation_pair(p, mu, value); });
    const auto trace = prufer::decode_pair(pair);
    Sink sink(mut_out);
    std::ostream& out = sink.stream();
    out << "P:      " << prufer::format_prufer(pair.base) << "\n";
    out << "P*:     " << prufer::format_prufer(pair.pstar_string()) << "\n";
    out << "mu:     " << pair.mu << "\n";
    out << "T:      " << prufer::format_tree(prufer::decode(pair.base)) << "\n";
    out << "T*:     " << prufer::format_tree(prufer::decode(pair.pstar_string())) << "\n";
    out << "delta:  " << trace.delta_total << "\n";
    print_flags(out, trace);
    if (mut_with_trace) prufer::write_trace_csv(out, trace);
  });

  // --- trace ---
  auto* cmd_trace = app.add_subcommand("trace", "per-step coupled decode records");
  std::string trc_string, trc_out, trc_format = "csv";
  int trc_n = 0, trc_mu = 0, trc_value = 0;
  cmd_trace->add_option("--n", trc_n, "order")->required();
  cmd_trace->add_option("--string", trc_string, "comma-separated entries")->required();
  cmd_trace->add_option("--mu", trc_mu, "mutation position")->required();
  cmd_trace->add_option("--value", trc_value, "mutated entry")->required();
  cmd_trace->add_option("--format", trc_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  cmd_trace->add_option("--out", trc_out, "output file (default stdout)");
  cmd_trace->callback([&] {
    const auto pair = parse_inline([&] {
      return prufer::make_mutation_pair(prufer::parse_entry_list(trc_n, trc_string), trc_mu,
                                        trc_value);
    });
    const auto trace = prufer::decode_pair(pair);
    Sink sink(trc_out);
    if (trc_format == "json") {
      prufer::write_trace_json(sink.stream(), trace);
    } else {
      prufer::write_trace_csv(sink.stream(), trace);
    }
  });

  // --- enumerate ---
  auto* cmd_enum = app.add_subcommand("enumerate", "exact distribution by exhaustive decoding");
  int en_n = 0, en_mu = 0, en_cap = prufer::kDefaultEnumerationCap, en_workers = 0;
  std::string en_out, en_format = "csv";
  cmd_enum->add_option("--n", en_n, "order")->required();
  cmd_enum->add_option("--mu", en_mu, "one position (default: every position plus the marginal)");
  cmd_enum->add_option("--cap", en_cap, "enumeration cap on n (raising it acknowledges the cost)");
  cmd_enum->add_option("--workers", en_workers, "worker threads (default PRUFER_WORKERS or hw)");
  cmd_enum->add_option("--format", en_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  cmd_enum->add_option("--out", en_out, "output file (default stdout)");
  cmd_enum->callback([&] {
    if (en_mu != 0 && (en_mu < 1 || en_mu > en_n - 2)) {
      throw BadArgs{"--mu " + std::to_string(en_mu) + " outside 1.." + std::to_string(en_n - 2)};
    }
    Sink sink(en_out);
    std::ostream& out = sink.stream();
    std::vector<prufer::ExactDistribution> dists;
    if (en_mu != 0) {
      dists.push_back(prufer::enumerate_mu(en_n, en_mu, en_cap, en_workers));
    } else {
      for (int mu = 1; mu <= en_n - 2; ++mu) {
        dists.push_back(prufer::enumerate_mu(en_n, mu, en_cap, en_workers));
      }
      dists.push_back(prufer::enumerate_all(en_n, en_cap, en_workers));
    }
    if (en_format == "csv") out << prufer::exact_csv_header() << "\n";
    for (const auto& dist : dists) {
      if (en_format == "json") {
        prufer::write_exact_json_rows(out, dist);
      } else {
        prufer::write_exact_csv_rows(out, dist);
      }
    }
  });

  // --- simulate ---
  auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo distance distribution");
  int sim_n = 0, sim_max_ell = 64, sim_workers = 0;
  std::vector<int> sim_mus;
  std::string sim_grid, sim_out, sim_format = "csv";
  bool sim_marginal = false;
  std::uint64_t sim_samples = 0, sim_seed = 0;
  cmd_sim->add_option("--n", sim_n, "order")->required();
  cmd_sim->add_option("--mu", sim_mus, "positions (repeatable)");
  cmd_sim->add_option("--alpha-grid", sim_grid, "alphas: comma list or lo:hi:step");
  cmd_sim->add_flag("--marginal", sim_marginal, "uniformly random position per sample");
  cmd_sim->add_option("--samples", sim_samples, "samples per position")->required();
  cmd_sim->add_option("--seed", sim_seed, "stream seed")->required();
  cmd_sim->add_option("--max-ell", sim_max_ell, "histogram cutoff (larger values pool)");
  cmd_sim->add_option("--workers", sim_workers, "worker threads (default PRUFER_WORKERS or hw)");
  cmd_sim->add_option("--format", sim_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  cmd_sim->add_option("--out", sim_out, "output file (default stdout)");
  cmd_sim->callback([&] {
    const int modes = (!sim_mus.empty() ? 1 : 0) + (!sim_grid.empty() ? 1 : 0) +
                      (sim_marginal ? 1 : 0);
    if (modes != 1) throw BadArgs{"simulate needs exactly one of --mu / --alpha-grid / --marginal"};
    if (sim_samples == 0) throw BadArgs{"--samples must be positive"};
    std::vector<prufer::DistEstimate> estimates;
    if (sim_marginal) {
      if (sim_n < 3) throw BadArgs{"--n must be at least 3"};
      estimates.push_back(
          prufer::estimate_marginal(sim_n, sim_samples, sim_seed, sim_max_ell, sim_workers));
    } else {
      prufer::SimConfig cfg;
      if (!sim_grid.empty()) {
        cfg = prufer::make_alpha_grid_config(sim_n, parse_alpha_grid(sim_grid), sim_samples,
                                             sim_seed, sim_max_ell, sim_workers);
      } else {
        for (int mu : sim_mus) {
          if (mu < 1 || mu > sim_n - 2) {
            throw BadArgs{"--mu " + std::to_string(mu) + " outside 1.." +
                          std::to_string(sim_n - 2)};
          }
        }
        cfg = prufer::make_mu_config(sim_n, sim_mus, sim_samples, sim_seed, sim_max_ell,
                                     sim_workers);
      }
      estimates = prufer::estimate_delta_dist(cfg);
    }
    Sink sink(sim_out);
    std::ostream& out = sink.stream();
    if (sim_format == "csv") out << prufer::estimate_csv_header() << "\n";
    for (const auto& est : estimates) {
      if (sim_format == "json") {
        prufer::write_estimate_json_rows(out, est);
      } else {
        prufer::write_estimate_csv_rows(out, est);
      }
    }
  });

  // --- sweep ---
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "perfect-mutation curve over an alpha grid with the (1-alpha)^2 reference");
  int sw_n = 0, sw_workers = 0;
  std::string sw_grid = "0.1:0.9:0.1", sw_out;
  std::uint64_t sw_samples = 0, sw_seed = 0;
  cmd_sweep->add_option("--n", sw_n, "order")->required();
  cmd_sweep->add_option("--alpha-grid", sw_grid, "alphas: comma list or lo:hi:step");
  cmd_sweep->add_option("--samples", sw_samples, "samples per grid point")->required();
  cmd_sweep->add_option("--seed", sw_seed, "stream seed")->required();
  cmd_sweep->add_option("--workers", sw_workers, "worker threads (default PRUFER_WORKERS or hw)");
  cmd_sweep->add_option("--out", sw_out, "output file (default stdout)");
  cmd_sweep->callback([&] {
    if (sw_samples == 0) throw BadArgs{"--samples must be positive"};
    const auto points =
        prufer::curve_sweep(sw_n, parse_alpha_grid(sw_grid), sw_samples, sw_seed, sw_workers);
    Sink sink(sw_out);
    sink.stream() << prufer::sweep_csv_header() << "\n";
    prufer::write_sweep_csv_rows(sink.stream(), points);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadArgs;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BadArgs& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitBadArgs;
  } catch (const prufer::TooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const prufer::InvalidPairError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const prufer::TooSmallError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const prufer::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
