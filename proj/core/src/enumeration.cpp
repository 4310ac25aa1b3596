#include "btc/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "btc/counting.hpp"

namespace btc {

namespace {

// Other child of the unique tree parent, kNoNode otherwise.
NodeId sibling_of(const Network& net, NodeId u) {
  if (net.in_degree(u) != 1) return kNoNode;
  NodeId p = net.parents(u)[0];
  if (net.out_degree(p) != 2) return kNoNode;
  auto cs = net.children(p);
  return cs[0] == u ? cs[1] : cs[0];
}

// Shared per-network context for pair enumeration. Base tuples are ordered
// tuples of distinct, pairwise non-sibling "free" nodes (no hybrid parent or
// sibling); every feasible pair is one of
//   T with s1 outside the tuple          (base used as-is),
//   T with s1 inserted into the tuple    (one relaxed slot),
//   H with two anchors outside the tuple (base used as-is).
struct PairEnumerator {
  const Network& net;
  std::size_t cap;
  bool enforce_descent;

  std::vector<NodeId> tree;
  std::vector<NodeId> free_nodes;
  std::vector<NodeId> sibling;  // id-indexed
  Reachability reach;
  std::size_t words;

  std::vector<NodeId> tuple;
  std::vector<std::uint64_t> used;       // tuple membership bitset
  std::vector<std::uint64_t> acc_stack;  // per-depth union of descendant rows
  std::vector<NodeId> taus;              // scratch: valid anchors for the current base

  std::vector<FeasiblePair>* out = nullptr;
  std::uint64_t count = 0;

  PairEnumerator(const Network& g, std::size_t cap_, bool enforce)
      : net(g), cap(cap_), enforce_descent(enforce), reach(g), words(reach.words()) {
    for (NodeId u = 0; u < g.id_bound(); ++u) {
      if (!g.is_live(u) || !g.is_tree_node(u)) continue;
      tree.push_back(u);
    }
    sibling.assign(g.id_bound(), kNoNode);
    for (NodeId u : tree) sibling[u] = sibling_of(g, u);
    for (NodeId u : tree) {
      bool hybrid_parent = g.in_degree(u) == 1 && g.is_hybrid(g.parents(u)[0]);
      bool hybrid_sibling = sibling[u] != kNoNode && g.is_hybrid(sibling[u]);
      if (!hybrid_parent && !hybrid_sibling) free_nodes.push_back(u);
    }
    used.assign(words, 0);
    acc_stack.assign(words * (free_nodes.size() + 2), 0);
  }

  bool used_bit(NodeId u) const { return (used[u >> 6] >> (u & 63)) & 1u; }
  void flip_used(NodeId u) { used[u >> 6] ^= std::uint64_t{1} << (u & 63); }

  void collect_taus() {
    const std::uint64_t* acc = acc_stack.data() + tuple.size() * words;
    taus.clear();
    for (NodeId t : tree) {
      if (used_bit(t)) continue;
      if (enforce_descent && Reachability::bit(acc, t)) continue;
      taus.push_back(t);
    }
  }

  void emit_base() {
    const std::size_t m = tuple.size();
    const bool emit_outside = m <= cap;
    const bool emit_inserted = m + 1 <= cap;
    const bool emit_h = m + 1 <= cap;
    if (!emit_outside && !emit_inserted && !emit_h) return;
    collect_taus();
    if (out == nullptr) {
      const std::uint64_t v = taus.size();
      if (emit_outside) count += v;
      if (emit_inserted) count += v * (m + 1);
      if (emit_h) count += v * (v + 1) / 2;
      return;
    }
    if (emit_outside)
      for (NodeId t : taus) out->push_back(FeasiblePair::t_pair(t, tuple));
    if (emit_inserted) {
      for (NodeId t : taus) {
        for (std::size_t i = 0; i <= m; ++i) {
          std::vector<NodeId> s2(tuple);
          s2.insert(s2.begin() + static_cast<std::ptrdiff_t>(i), t);
          out->push_back(FeasiblePair::t_pair(t, std::move(s2)));
        }
      }
    }
    if (emit_h) {
      for (std::size_t i = 0; i < taus.size(); ++i)
        for (std::size_t j = i; j < taus.size(); ++j)
          out->push_back(FeasiblePair::h_pair(taus[i], taus[j], tuple));
    }
  }

  void recurse() {
    emit_base();
    if (tuple.size() >= cap) return;
    const std::size_t depth = tuple.size();
    std::uint64_t* acc = acc_stack.data() + depth * words;
    std::uint64_t* next_acc = acc + words;
    for (NodeId y : free_nodes) {
      if (used_bit(y)) continue;
      if (sibling[y] != kNoNode && sibling[y] < sibling.size() && used_bit(sibling[y])) continue;
      flip_used(y);
      std::copy(acc, acc + words, next_acc);
      reach.or_descendants(y, next_acc);
      tuple.push_back(y);
      recurse();
      tuple.pop_back();
      flip_used(y);
    }
  }
};

std::vector<FeasiblePair> enumerate_impl(const Network& net, std::size_t cap, bool enforce) {
  std::vector<FeasiblePair> pairs;
  PairEnumerator en(net, cap, enforce);
  en.out = &pairs;
  en.recurse();
  std::sort(pairs.begin(), pairs.end(), pair_less);
  return pairs;
}

}  // namespace

std::vector<FeasiblePair> enumerate_feasible_pairs(const Network& net,
                                                   std::size_t max_new_hybrids) {
  return enumerate_impl(net, max_new_hybrids, true);
}

std::vector<FeasiblePair> enumerate_relaxed_pairs(const Network& net,
                                                  std::size_t max_new_hybrids) {
  return enumerate_impl(net, max_new_hybrids, false);
}

std::uint64_t count_feasible_pairs(const Network& net, std::size_t max_new_hybrids) {
  PairEnumerator en(net, max_new_hybrids, true);
  en.recurse();
  return en.count;
}

std::vector<Network> offspring(const Network& net, std::size_t max_new_hybrids) {
  std::uint32_t next_label = static_cast<std::uint32_t>(net.leaf_count()) + 1;
  std::vector<Network> out;
  for (const FeasiblePair& pair : enumerate_feasible_pairs(net, max_new_hybrids))
    out.push_back(augment(net, next_label, pair));
  return out;
}

namespace {

struct GenPlan {
  std::uint32_t n;
  std::uint32_t h_min;
  std::uint32_t h_max;  // clamped ceiling, also the pruning bound
  unsigned jobs;
  EmitOrder order;
};

GenPlan make_plan(const GenerationConfig& cfg) {
  if (cfg.n < 1) fail(errc::invalid_argument, "generation needs n >= 1");
  GenPlan plan;
  plan.n = cfg.n;
  plan.h_max = std::min<std::uint32_t>(cfg.h_max, cfg.n - 1);
  plan.h_min = cfg.h_min;
  if (plan.h_min > plan.h_max)
    fail(errc::invalid_argument, "empty hybrid-count window");
  plan.jobs = cfg.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.jobs;
  plan.order = cfg.order;
  return plan;
}

// Depth-first expansion; networks over [k] grow one leaf per level. The
// hybrid window prunes upward (hybrid counts never decrease along a chain).
template <class Visit>
void expand(const GenPlan& plan, const Network& net, std::uint32_t k, const Visit& visit) {
  std::uint32_t h = static_cast<std::uint32_t>(net.hybrid_count());
  if (h > plan.h_max) return;
  if (k == plan.n) {
    if (h >= plan.h_min) visit(net);
    return;
  }
  std::size_t cap = plan.h_max - h;
  std::vector<FeasiblePair> pairs = enumerate_feasible_pairs(net, cap);
  for (const FeasiblePair& pair : pairs) expand(plan, augment(net, k + 1, pair), k + 1, visit);
}

// Networks at the frontier level, in canonical depth-first order.
std::vector<Network> collect_frontier(const GenPlan& plan, std::uint32_t level) {
  std::vector<Network> frontier;
  GenPlan sub = plan;
  sub.n = level;
  sub.h_min = 0;  // ancestors of every target live here
  expand(sub, new_trivial(1), 1, [&frontier](const Network& net) { frontier.push_back(net); });
  return frontier;
}

std::uint32_t frontier_level(std::uint32_t n) { return std::min<std::uint32_t>(n - 1, 4); }

template <class Task>
void run_parallel_tasks(unsigned jobs, std::size_t task_count, const Task& task) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> aborted{false};
  std::mutex mu;
  std::exception_ptr first_error;
  auto body = [&]() {
    try {
      for (;;) {
        if (aborted.load(std::memory_order_relaxed)) return;
        std::size_t i = next.fetch_add(1);
        if (i >= task_count) return;
        task(i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!first_error) first_error = std::current_exception();
      aborted.store(true);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

void generate_networks(const GenerationConfig& cfg,
                       const std::function<void(const Network&)>& sink) {
  GenPlan plan = make_plan(cfg);
  if (plan.jobs <= 1 || plan.n <= 2) {
    expand(plan, new_trivial(1), 1, [&sink](const Network& net) { sink(net); });
    return;
  }

  const std::uint32_t level = frontier_level(plan.n);
  std::vector<Network> frontier = collect_frontier(plan, level);
  const std::size_t window = static_cast<std::size_t>(plan.jobs) * 4;

  std::mutex mu;
  std::condition_variable cv_ready, cv_space;
  std::map<std::size_t, std::vector<Network>> ready;
  std::size_t committed = 0;
  const bool ordered = plan.order == EmitOrder::Deterministic;

  std::exception_ptr worker_error;
  std::atomic<bool> aborted{false};
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    try {
      for (;;) {
        if (aborted.load(std::memory_order_relaxed)) return;
        std::size_t i = next.fetch_add(1);
        if (i >= frontier.size()) return;
        std::vector<Network> buffer;
        expand(plan, frontier[i], level,
               [&buffer](const Network& net) { buffer.push_back(net); });
        std::unique_lock<std::mutex> lock(mu);
        cv_space.wait(lock, [&]() {
          return aborted.load() || !ordered || ready.size() < window || i == committed;
        });
        if (aborted.load()) return;
        ready.emplace(i, std::move(buffer));
        cv_ready.notify_all();
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!worker_error) worker_error = std::current_exception();
      aborted.store(true);
      cv_ready.notify_all();
      cv_space.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(plan.jobs);
  for (unsigned i = 0; i < plan.jobs; ++i) pool.emplace_back(worker);

  // The calling thread commits buffers (in frontier order when deterministic)
  // and is the only one running the sink.
  try {
    std::size_t done = 0;
    while (done < frontier.size()) {
      std::vector<Network> buffer;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv_ready.wait(lock, [&]() {
          if (aborted.load()) return true;
          if (ready.empty()) return false;
          return !ordered || ready.begin()->first == committed;
        });
        if (aborted.load()) break;
        auto it = ready.begin();
        buffer = std::move(it->second);
        ready.erase(it);
        ++committed;
        cv_space.notify_all();
      }
      for (const Network& net : buffer) sink(net);
      ++done;
    }
  } catch (...) {
    {
      std::lock_guard<std::mutex> lock(mu);
      if (!worker_error) worker_error = std::current_exception();
      aborted.store(true);
    }
    cv_ready.notify_all();
    cv_space.notify_all();
  }
  for (std::thread& t : pool) t.join();
  if (worker_error) std::rethrow_exception(worker_error);
}

std::vector<std::uint64_t> count_networks_by_hybrids(const GenerationConfig& cfg) {
  GenPlan plan = make_plan(cfg);
  std::vector<std::uint64_t> counts(plan.n, 0);
  auto tally = [](std::vector<std::uint64_t>& into, const Network& net) {
    into[net.hybrid_count()] += 1;
  };
  if (plan.jobs <= 1 || plan.n <= 2) {
    expand(plan, new_trivial(1), 1,
           [&](const Network& net) { tally(counts, net); });
    return counts;
  }
  const std::uint32_t level = frontier_level(plan.n);
  std::vector<Network> frontier = collect_frontier(plan, level);
  std::mutex mu;
  run_parallel_tasks(plan.jobs, frontier.size(), [&](std::size_t i) {
    std::vector<std::uint64_t> local(plan.n, 0);
    expand(plan, frontier[i], level, [&](const Network& net) { tally(local, net); });
    std::lock_guard<std::mutex> lock(mu);
    for (std::size_t h = 0; h < local.size(); ++h) counts[h] += local[h];
  });
  return counts;
}

std::uint64_t count_networks(const GenerationConfig& cfg) {
  std::uint64_t total = 0;
  for (std::uint64_t c : count_networks_by_hybrids(cfg)) total += c;
  return total;
}

std::map<std::uint32_t, std::uint64_t> count_exact(std::uint32_t n) {
  GenerationConfig cfg;
  cfg.n = n;
  cfg.jobs = 0;
  std::vector<std::uint64_t> counts = count_networks_by_hybrids(cfg);
  std::map<std::uint32_t, std::uint64_t> out;
  for (std::uint32_t h = 0; h < counts.size(); ++h)
    if (counts[h] != 0) out[h] = counts[h];
  return out;
}

namespace {

// Uniform sampling machinery over the relaxed pair strata of one network.
// Weights come from the closed-form counts; a draw lands in one stratum,
// gets materialized uniformly inside it, and is rejected (whole draw redone)
// when the descent condition fails. Feasible pairs end up exactly uniform.
struct PairSampler {
  const Network& net;
  Reachability reach;
  std::uint32_t n;  // leaves
  std::uint32_t h;  // hybrids

  std::vector<NodeId> tree;
  NodeId root;
  std::vector<std::pair<NodeId, NodeId>> free_pairs;  // sibling pairs of free nodes
  std::vector<NodeId> hybrid_family;                  // hybrid children and siblings (3h nodes)

  enum class Component : std::uint8_t {
    TOutside,
    THybridFamily,
    TSiblingRoot,
    TSiblingPlain,
    TFreeMember,
    HEqual,
    HDistinct,
  };
  struct Stratum {
    Component component;
    std::uint32_t m;  // tuple length
    BigCount weight;
  };
  std::vector<Stratum> strata;
  BigCount total_weight = 0;

  explicit PairSampler(const Network& g) : net(g), reach(g) {
    n = static_cast<std::uint32_t>(g.leaf_count());
    h = static_cast<std::uint32_t>(g.hybrid_count());
    root = g.root();
    for (NodeId u = 0; u < g.id_bound(); ++u) {
      if (!g.is_live(u) || !g.is_tree_node(u)) continue;
      tree.push_back(u);
      bool hybrid_parent = g.in_degree(u) == 1 && g.is_hybrid(g.parents(u)[0]);
      NodeId sib = sibling_of(g, u);
      bool hybrid_sibling = sib != kNoNode && g.is_hybrid(sib);
      if (hybrid_parent || hybrid_sibling) {
        hybrid_family.push_back(u);
      } else if (sib != kNoNode && u < sib) {
        free_pairs.emplace_back(u, sib);
      }
    }
    for (std::uint32_t m = 0; m <= n; ++m) {
      FtParts ft = f_t_parts(n, h, m);
      FhParts fh = f_h_parts(n, h, m);
      auto push = [&](Component c, const BigCount& w) {
        if (w > 0) {
          strata.push_back({c, m, w});
          total_weight += w;
        }
      };
      push(Component::TOutside, ft.outside);
      push(Component::THybridFamily, ft.hybrid_family);
      push(Component::TSiblingRoot, ft.sibling_root);
      push(Component::TSiblingPlain, ft.sibling_plain);
      push(Component::TFreeMember, ft.free_member);
      push(Component::HEqual, fh.equal_pair);
      push(Component::HDistinct, fh.distinct_pair);
      if (p_aux(n, h, m).p == 0) break;  // longer tuples are all empty
    }
  }

  // Ordered tuple of `m` free non-root nodes, one per sibling pair.
  std::vector<NodeId> sample_no_root(std::uint32_t m, SplitMix64& rng,
                                     std::vector<std::size_t>& pool) const {
    std::vector<NodeId> out;
    out.reserve(m);
    for (std::uint32_t i = 0; i < m; ++i) {
      std::uint64_t c = rng.below(static_cast<std::uint64_t>(pool.size()) * 2);
      std::size_t slot = static_cast<std::size_t>(c >> 1);
      const auto& pr = free_pairs[pool[slot]];
      out.push_back((c & 1) == 0 ? pr.first : pr.second);
      pool[slot] = pool.back();
      pool.pop_back();
    }
    return out;
  }

  std::vector<std::size_t> full_pool() const {
    std::vector<std::size_t> pool(free_pairs.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    return pool;
  }

  // Uniform member of P(net, m): root position chosen with odds p1 : p0.
  std::vector<NodeId> sample_free_tuple(std::uint32_t m, SplitMix64& rng,
                                        std::vector<std::size_t>& pool) const {
    PAux p = p_aux(n, h, m);
    bool with_root = rng.below_big(p.p) >= p.p0;
    if (!with_root) return sample_no_root(m, rng, pool);
    std::uint32_t pos = static_cast<std::uint32_t>(rng.below(m));
    std::vector<NodeId> rest = sample_no_root(m - 1, rng, pool);
    rest.insert(rest.begin() + pos, root);
    return rest;
  }

  // Uniform anchor among tree nodes outside the tuple.
  NodeId sample_outside(const std::vector<NodeId>& tuple, SplitMix64& rng,
                        NodeId exclude = kNoNode) const {
    std::vector<NodeId> candidates;
    candidates.reserve(tree.size());
    for (NodeId t : tree) {
      if (t == exclude) continue;
      if (std::find(tuple.begin(), tuple.end(), t) != tuple.end()) continue;
      candidates.push_back(t);
    }
    return candidates[rng.below(candidates.size())];
  }

  bool descent_ok(const FeasiblePair& pair) const {
    for (NodeId y : pair.s2) {
      if (reach.is_proper_descendant(pair.s1[0], y)) return false;
      if (pair.kind == PairKind::H && reach.is_proper_descendant(pair.s1[1], y)) return false;
    }
    return true;
  }

  FeasiblePair draw(SplitMix64& rng) const {
    for (;;) {
      BigCount x = rng.below_big(total_weight);
      const Stratum* chosen = nullptr;
      for (const Stratum& s : strata) {
        if (x < s.weight) {
          chosen = &s;
          break;
        }
        x -= s.weight;
      }
      FeasiblePair pair = materialize(*chosen, rng);
      if (descent_ok(pair)) return pair;
    }
  }

  FeasiblePair materialize(const Stratum& s, SplitMix64& rng) const {
    const std::uint32_t m = s.m;
    std::vector<std::size_t> pool = full_pool();
    switch (s.component) {
      case Component::TOutside: {
        std::vector<NodeId> tuple = sample_free_tuple(m, rng, pool);
        NodeId tau = sample_outside(tuple, rng);
        return FeasiblePair::t_pair(tau, std::move(tuple));
      }
      case Component::THybridFamily: {
        std::vector<NodeId> tuple = sample_free_tuple(m - 1, rng, pool);
        NodeId tau = hybrid_family[rng.below(hybrid_family.size())];
        std::uint32_t pos = static_cast<std::uint32_t>(rng.below(m));
        tuple.insert(tuple.begin() + pos, tau);
        return FeasiblePair::t_pair(tau, std::move(tuple));
      }
      case Component::TSiblingRoot:
      case Component::TSiblingPlain: {
        // Two positions carry a full sibling pair; the rest is a free tuple
        // with or without the root.
        std::uint32_t i = static_cast<std::uint32_t>(rng.below(m));
        std::uint32_t j = static_cast<std::uint32_t>(rng.below(m - 1));
        if (j >= i) ++j;
        std::vector<NodeId> rest;
        if (s.component == Component::TSiblingRoot) {
          std::uint32_t pos = static_cast<std::uint32_t>(rng.below(m - 2));
          rest = sample_no_root(m - 3, rng, pool);
          rest.insert(rest.begin() + pos, root);
        } else {
          rest = sample_no_root(m - 2, rng, pool);
        }
        const auto& pr = free_pairs[pool[rng.below(pool.size())]];
        bool flip = rng.below(2) == 1;
        NodeId yi = flip ? pr.second : pr.first;
        NodeId yj = flip ? pr.first : pr.second;
        std::vector<NodeId> tuple(m, kNoNode);
        tuple[i] = yi;
        tuple[j] = yj;
        std::size_t cursor = 0;
        for (std::uint32_t pos = 0; pos < m; ++pos)
          if (tuple[pos] == kNoNode) tuple[pos] = rest[cursor++];
        return FeasiblePair::t_pair(yi, std::move(tuple));
      }
      case Component::TFreeMember: {
        std::vector<NodeId> tuple = sample_free_tuple(m, rng, pool);
        NodeId tau = tuple[rng.below(m)];
        return FeasiblePair::t_pair(tau, std::move(tuple));
      }
      case Component::HEqual: {
        std::vector<NodeId> tuple = sample_free_tuple(m, rng, pool);
        NodeId tau = sample_outside(tuple, rng);
        return FeasiblePair::h_pair(tau, tau, std::move(tuple));
      }
      case Component::HDistinct: {
        std::vector<NodeId> tuple = sample_free_tuple(m, rng, pool);
        NodeId tau1 = sample_outside(tuple, rng);
        NodeId tau2 = sample_outside(tuple, rng, tau1);
        return FeasiblePair::h_pair(tau1, tau2, std::move(tuple));
      }
    }
    fail(errc::invalid_argument, "unreachable stratum");
  }
};

}  // namespace

Network random_network(std::uint32_t n, SplitMix64& rng) {
  if (n < 1) fail(errc::invalid_argument, "random network needs n >= 1");
  Network net = new_trivial(1);
  for (std::uint32_t k = 1; k < n; ++k) {
    SplitMix64 step = rng.split();
    PairSampler sampler(net);
    net = augment(net, k + 1, sampler.draw(step));
  }
  return net;
}

Network random_network(std::uint32_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return random_network(n, rng);
}

EstimateResult estimate_count(std::uint32_t n, std::uint64_t sample_budget, std::uint64_t seed) {
  if (n < 2) fail(errc::invalid_argument, "estimation needs n >= 2");
  if (sample_budget == 0) fail(errc::insufficient_samples, "sample budget must be positive");

  // Reservoir of uniform parents over the exhaustive BTC_{n-1} stream.
  SplitMix64 rng(seed);
  std::vector<Network> reservoir;
  reservoir.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(sample_budget, 1u << 20)));
  std::uint64_t seen = 0;
  GenerationConfig parent_cfg;
  parent_cfg.n = n - 1;
  generate_networks(parent_cfg, [&](const Network& net) {
    if (seen < sample_budget) {
      reservoir.push_back(net);
    } else {
      std::uint64_t j = rng.below(seen + 1);
      if (j < sample_budget) reservoir[static_cast<std::size_t>(j)] = net;
    }
    ++seen;
  });

  EstimateResult result;
  result.parents = seen;
  result.samples = reservoir.size();
  result.exact = seen <= sample_budget;

  const std::uint64_t report_every = std::max<std::uint64_t>(1, reservoir.size() / 32);
  double sum = 0.0;
  for (std::size_t i = 0; i < reservoir.size(); ++i) {
    sum += static_cast<double>(count_feasible_pairs(reservoir[i], kNoHybridCap));
    if ((i + 1) % report_every == 0 || i + 1 == reservoir.size())
      result.running_means.push_back(sum / static_cast<double>(i + 1));
  }
  double mean = reservoir.empty() ? 0.0 : sum / static_cast<double>(reservoir.size());
  result.estimate = result.exact ? sum : mean * static_cast<double>(seen);
  return result;
}

}  // namespace btc
