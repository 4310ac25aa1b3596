// btcgen: generate, count, sample, and transform binary tree-child networks.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "btc/counting.hpp"
#include "btc/enumeration.hpp"
#include "btc/io.hpp"
#include "btc/isocheck.hpp"
#include "btc/reduction.hpp"

namespace fs = std::filesystem;
using namespace btc;

namespace {

[[noreturn]] void die(const std::string& id, const std::string& message) {
  nlohmann::json err{{"error", id}, {"message", message}};
  std::cerr << err.dump() << "\n";
  std::exit(1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("io-error", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Format sniff_format(std::string_view text) {
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string_view::npos && text[i] == '#') return Format::EdgeList;
  return Format::ENewick;
}

Network load_first(const std::string& path) {
  std::string text = read_file(path);
  std::vector<Network> nets = parse_stream(text, sniff_format(text));
  if (nets.empty()) die("parse-error", path + " contains no network");
  return std::move(nets.front());
}

std::pair<std::uint32_t, std::uint32_t> parse_hybrid_window(const std::string& spec) {
  std::size_t dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      std::uint32_t h = static_cast<std::uint32_t>(std::stoul(spec));
      return {h, h};
    }
    return {static_cast<std::uint32_t>(std::stoul(spec.substr(0, dots))),
            static_cast<std::uint32_t>(std::stoul(spec.substr(dots + 2)))};
  } catch (const std::exception&) {
    die("invalid-argument", "--hybrids expects H or A..B, got '" + spec + "'");
  }
}

struct ShardWriter {
  fs::path dir;
  std::uint32_t n;
  Format format;
  std::map<std::uint32_t, std::ofstream> shards;

  std::ofstream& shard(std::uint32_t h) {
    auto it = shards.find(h);
    if (it != shards.end()) return it->second;
    const char* ext = format == Format::ENewick ? "enw" : "edges";
    fs::path file = dir / ("btc_n" + std::to_string(n) + "_h" + std::to_string(h) + "." + ext);
    auto [pos, inserted] = shards.emplace(h, std::ofstream(file, std::ios::binary));
    if (!pos->second) die("io-error", "cannot write " + file.string());
    return pos->second;
  }
};

int run_generate(std::uint32_t n, const std::string& hybrids, const std::string& format_name,
                 const std::string& out_dir, unsigned jobs, bool count_only) {
  GenerationConfig cfg;
  cfg.n = n;
  cfg.jobs = jobs;
  if (!hybrids.empty()) {
    auto [lo, hi] = parse_hybrid_window(hybrids);
    cfg.h_min = lo;
    cfg.h_max = hi;
  }
  if (count_only) {
    std::cout << count_networks(cfg) << "\n";
    return 0;
  }
  Format format = format_name == "edgelist" ? Format::EdgeList : Format::ENewick;
  if (out_dir.empty()) {
    generate_networks(cfg, [format](const Network& net) {
      std::cout << serialize(net, format);
      if (format == Format::ENewick) std::cout << "\n";
    });
    return 0;
  }
  fs::create_directories(out_dir);
  ShardWriter writer{out_dir, n, format, {}};
  generate_networks(cfg, [&writer, format](const Network& net) {
    std::ofstream& out = writer.shard(static_cast<std::uint32_t>(net.hybrid_count()));
    out << serialize(net, format);
    if (format == Format::ENewick) out << "\n";
  });
  return 0;
}

int run_bound(std::uint32_t n, bool by_hybrids) {
  BoundTable table(n);
  if (by_hybrids) {
    for (std::uint32_t h = 0; h < n; ++h)
      std::cout << "h=" << h << " " << table.at(n, h) << "\n";
    std::cout << "total " << table.row_total(n) << "\n";
  } else {
    std::cout << table.row_total(n) << "\n";
  }
  return 0;
}

int run_random(std::uint32_t n, std::uint64_t seed, std::uint64_t samples) {
  SplitMix64 rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i)
    std::cout << serialize(random_network(n, rng), Format::ENewick) << "\n";
  return 0;
}

int run_estimate(std::uint32_t n, std::uint64_t samples, std::uint64_t seed) {
  EstimateResult result = estimate_count(n, samples, seed);
  for (std::size_t i = 0; i < result.running_means.size(); ++i)
    std::cerr << "running-mean " << i + 1 << " " << result.running_means[i] << "\n";
  std::cerr << "parents " << result.parents << " samples " << result.samples
            << (result.exact ? " (exact census)" : "") << "\n";
  if (result.exact) {
    std::cout << static_cast<std::uint64_t>(result.estimate) << "\n";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", result.estimate);
    std::cout << buf << "\n";
  }
  return 0;
}

int run_reduce(const std::string& in, std::uint32_t leaf_label) {
  Network net = load_first(in);
  NodeId leaf = net.find_leaf(leaf_label);
  if (leaf == kNoNode) die("invalid-leaf", "no leaf labeled " + std::to_string(leaf_label));
  Reduction red = reduce(net, leaf);
  std::cout << serialize(red.network, Format::ENewick) << "\n"
            << format_pair(red.network, red.data) << "\n";
  return 0;
}

int run_decompose(const std::string& in) {
  Network net = load_first(in);
  std::cout << format_decomposition(decompose(net));
  return 0;
}

int run_augment(const std::string& in, const std::string& pair_spec) {
  Network net = load_first(in);
  std::vector<std::uint32_t> labels = net.labels_sorted();
  std::uint32_t label = labels.empty() ? 1 : labels.back() + 1;
  FeasiblePair pair = parse_pair(net, pair_spec);
  std::cout << serialize(augment(net, label, pair), Format::ENewick) << "\n";
  return 0;
}

int run_validate(const std::vector<std::string>& files) {
  bool all_ok = true;
  std::map<std::string, std::vector<std::string>> classes;  // canonical -> locations
  for (const std::string& path : files) {
    std::string text;
    std::vector<Network> nets;
    try {
      text = read_file(path);
      nets = parse_stream(text, sniff_format(text));
    } catch (const Error& e) {
      std::cout << path << ": " << e.what() << "\n";
      all_ok = false;
      continue;
    }
    for (std::size_t i = 0; i < nets.size(); ++i) {
      std::string where = path + ":" + std::to_string(i + 1);
      ValidationReport report = validate_btc(nets[i]);
      if (!report.ok()) {
        std::string rules;
        for (const Violation& v : report.violations) {
          if (!rules.empty()) rules += ",";
          rules += to_string(v.rule);
        }
        std::cout << where << ": invalid (" << rules << ")\n";
        all_ok = false;
        continue;
      }
      std::cout << where << ": ok n=" << nets[i].leaf_count() << " h=" << nets[i].hybrid_count()
                << "\n";
      classes[serialize(nets[i], Format::ENewick)].push_back(where);
    }
  }
  std::size_t dup_groups = 0;
  for (const auto& [text, where] : classes) {
    if (where.size() < 2) continue;
    ++dup_groups;
    std::cout << "duplicates:";
    for (const std::string& w : where) std::cout << " " << w;
    std::cout << "\n";
  }
  std::cout << "classes " << classes.size() << " duplicate-groups " << dup_groups << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"btcgen: exhaustive, unique, reproducible binary tree-child network generation"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Generate every network over [n] exactly once");
  std::uint32_t gen_n = 1;
  std::string gen_hybrids, gen_format = "enewick", gen_out;
  unsigned gen_jobs = 1;
  bool gen_count_only = false;
  gen->add_option("-n", gen_n, "Number of leaves")->required();
  gen->add_option("--hybrids", gen_hybrids, "Keep hybrid counts in A..B (or a single H)");
  gen->add_option("--format", gen_format, "Output format")
      ->check(CLI::IsMember({"enewick", "edgelist"}));
  gen->add_option("--out", gen_out, "Write shard files (by hybrid count) into this directory");
  gen->add_option("--jobs", gen_jobs, "Worker threads (0 = auto)")->envname("BTCGEN_JOBS");
  gen->add_flag("--count-only", gen_count_only, "Print only the exact count");

  auto* bound = app.add_subcommand("bound", "Closed-form upper bound on the number of networks");
  std::uint32_t bound_n = 1;
  bool bound_by_hybrids = false;
  bound->add_option("-n", bound_n, "Number of leaves")->required();
  bound->add_flag("--by-hybrids", bound_by_hybrids, "One bound per hybrid count");

  auto* rnd = app.add_subcommand("random", "Random networks via uniform feasible-pair draws");
  std::uint32_t rnd_n = 1;
  std::uint64_t rnd_seed = 0, rnd_samples = 1;
  rnd->add_option("-n", rnd_n, "Number of leaves")->required();
  rnd->add_option("--seed", rnd_seed, "PRNG seed")->required();
  rnd->add_option("--samples", rnd_samples, "Number of networks to emit");

  auto* est = app.add_subcommand("estimate", "Estimate the network count by offspring sampling");
  std::uint32_t est_n = 2;
  std::uint64_t est_samples = 0, est_seed = 0;
  est->add_option("-n", est_n, "Number of leaves")->required();
  est->add_option("--samples", est_samples, "Parent sample budget")->required();
  est->add_option("--seed", est_seed, "PRNG seed")->required();

  auto* red = app.add_subcommand("reduce", "Remove one leaf and print the recovering data");
  std::string red_in;
  std::uint32_t red_leaf = 0;
  red->add_option("--in", red_in, "Input network file")->required();
  red->add_option("--leaf", red_leaf, "Leaf label to remove")->required();

  auto* dec = app.add_subcommand("decompose", "Print the unique augmentation chain");
  std::string dec_in;
  dec->add_option("--in", dec_in, "Input network file")->required();

  auto* aug = app.add_subcommand("augment", "Attach the next leaf from a feasible pair");
  std::string aug_in, aug_pair;
  aug->add_option("--in", aug_in, "Input network file")->required();
  aug->add_option("--pair", aug_pair, "Pair spec, e.g. \"T: S1={L1}; S2=()\"")->required();

  auto* val = app.add_subcommand("validate", "Validate networks and report duplicates");
  std::vector<std::string> val_in;
  val->add_option("--in", val_in, "Input network files")->required()->expected(-1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return run_generate(gen_n, gen_hybrids, gen_format, gen_out, gen_jobs, gen_count_only);
    if (bound->parsed()) return run_bound(bound_n, bound_by_hybrids);
    if (rnd->parsed()) return run_random(rnd_n, rnd_seed, rnd_samples);
    if (est->parsed()) return run_estimate(est_n, est_samples, est_seed);
    if (red->parsed()) return run_reduce(red_in, red_leaf);
    if (dec->parsed()) return run_decompose(dec_in);
    if (aug->parsed()) return run_augment(aug_in, aug_pair);
    if (val->parsed()) return run_validate(val_in);
  } catch (const Error& e) {
    die(to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    die("internal-error", e.what());
  }
  return 0;
}
