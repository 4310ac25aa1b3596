#include "btc/isocheck.hpp"

#include <algorithm>

namespace btc {

std::size_t MuTable::label_index(std::uint32_t label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) fail(errc::invalid_label, "label not present");
  return static_cast<std::size_t>(it - labels.begin());
}

MuTable compute_mu(const Network& net) {
  MuTable table;
  table.labels = net.labels_sorted();
  table.mu.assign(net.id_bound(), {});
  std::vector<NodeId> order = topological_order(net);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId u = *it;
    MuVector mu(table.labels.size(), 0);
    if (net.out_degree(u) == 0) {
      mu[table.label_index(net.label_of(u))] = 1;
    } else {
      for (NodeId c : net.children(u)) {
        const MuVector& cmu = table.mu[c];
        for (std::size_t i = 0; i < mu.size(); ++i) mu[i] += cmu[i];
      }
    }
    table.mu[u] = std::move(mu);
  }
  return table;
}

std::vector<std::pair<bool, MuVector>> mu_signatures(const Network& net) {
  MuTable table = compute_mu(net);
  std::vector<std::pair<bool, MuVector>> sigs;
  sigs.reserve(net.size());
  for (NodeId u = 0; u < net.id_bound(); ++u) {
    if (!net.is_live(u)) continue;
    sigs.emplace_back(net.is_hybrid(u), std::move(table.mu[u]));
  }
  std::sort(sigs.begin(), sigs.end());
  return sigs;
}

bool isomorphic(const Network& a, const Network& b) {
  if (a.size() != b.size()) return false;
  if (a.labels_sorted() != b.labels_sorted()) return false;
  if (a.hybrid_count() != b.hybrid_count()) return false;
  return mu_signatures(a) == mu_signatures(b);
}

namespace {

constexpr std::size_t kBruteForceCap = 20;

struct BruteForceSearch {
  const Network& a;
  const Network& b;
  std::vector<NodeId> a_nodes;           // fixed assignment order
  std::vector<NodeId> mapping;           // a id -> b id
  std::vector<std::uint8_t> used;        // b id taken
  std::size_t matches = 0;
  bool stop_at_first = false;

  BruteForceSearch(const Network& a_, const Network& b_) : a(a_), b(b_) {
    mapping.assign(a.id_bound(), kNoNode);
    used.assign(b.id_bound(), 0);
    a_nodes = a.node_ids();
  }

  bool degrees_match(NodeId x, NodeId y) const {
    return a.in_degree(x) == b.in_degree(y) && a.out_degree(x) == b.out_degree(y) &&
           a.label_of(x) == b.label_of(y);
  }

  // Arcs between x and already-mapped nodes must exist identically in b.
  bool consistent(NodeId x, NodeId y) const {
    for (NodeId p : a.parents(x)) {
      NodeId q = mapping[p];
      if (q == kNoNode) continue;
      auto cs = b.children(q);
      if (std::find(cs.begin(), cs.end(), y) == cs.end()) return false;
    }
    for (NodeId c : a.children(x)) {
      NodeId d = mapping[c];
      if (d == kNoNode) continue;
      auto cs = b.children(y);
      if (std::find(cs.begin(), cs.end(), d) == cs.end()) return false;
    }
    return true;
  }

  bool run(std::size_t depth) {
    if (depth == a_nodes.size()) {
      ++matches;
      return stop_at_first;
    }
    NodeId x = a_nodes[depth];
    for (NodeId y = 0; y < b.id_bound(); ++y) {
      if (!b.is_live(y) || used[y]) continue;
      if (!degrees_match(x, y) || !consistent(x, y)) continue;
      mapping[x] = y;
      used[y] = 1;
      if (run(depth + 1)) return true;
      mapping[x] = kNoNode;
      used[y] = 0;
    }
    return false;
  }
};

}  // namespace

bool brute_force_isomorphic(const Network& a, const Network& b) {
  if (a.size() > kBruteForceCap || b.size() > kBruteForceCap)
    fail(errc::too_large, "brute-force isomorphism is capped at 20 nodes");
  if (a.size() != b.size()) return false;
  if (a.labels_sorted() != b.labels_sorted()) return false;
  if (a.hybrid_count() != b.hybrid_count()) return false;
  BruteForceSearch search(a, b);
  search.stop_at_first = true;
  search.run(0);
  return search.matches > 0;
}

std::size_t brute_force_automorphism_count(const Network& net) {
  if (net.size() > kBruteForceCap)
    fail(errc::too_large, "brute-force automorphism search is capped at 20 nodes");
  BruteForceSearch search(net, net);
  search.run(0);
  return search.matches;
}

}  // namespace btc
