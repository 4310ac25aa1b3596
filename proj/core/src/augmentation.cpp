#include "btc/augmentation.hpp"

#include <algorithm>

namespace btc {

bool pair_less(const FeasiblePair& a, const FeasiblePair& b) {
  if (a.kind != b.kind) return a.kind == PairKind::T;
  if (a.s2.size() != b.s2.size()) return a.s2.size() < b.s2.size();
  if (a.s2 != b.s2) return a.s2 < b.s2;
  if (a.s1[0] != b.s1[0]) return a.s1[0] < b.s1[0];
  if (a.kind == PairKind::H && a.s1[1] != b.s1[1]) return a.s1[1] < b.s1[1];
  return false;
}

namespace {

// Other child of the (unique) tree parent of u, or kNoNode for roots and
// hybrid-parented nodes.
NodeId sibling_of(const Network& net, NodeId u) {
  if (net.in_degree(u) != 1) return kNoNode;
  NodeId p = net.parents(u)[0];
  if (net.out_degree(p) != 2) return kNoNode;
  auto cs = net.children(p);
  return cs[0] == u ? cs[1] : cs[0];
}

}  // namespace

bool is_feasible(const Network& net, const FeasiblePair& pair) {
  auto require_tree = [&net](NodeId u) {
    if (!net.is_live(u) || !net.is_tree_node(u))
      fail(errc::invalid_pair_member, "pair members must be live tree nodes");
  };
  require_tree(pair.s1[0]);
  if (pair.kind == PairKind::H) require_tree(pair.s1[1]);
  for (NodeId y : pair.s2) require_tree(y);

  auto in_s1 = [&pair](NodeId u) {
    return u == pair.s1[0] || (pair.kind == PairKind::H && u == pair.s1[1]);
  };

  const auto& s2 = pair.s2;
  // Condition 1: tuple entries pairwise distinct; sibling entries only when
  // one of the two sits in s1.
  for (std::size_t i = 0; i < s2.size(); ++i) {
    for (std::size_t j = i + 1; j < s2.size(); ++j) {
      if (s2[i] == s2[j]) return false;
      if (sibling_of(net, s2[i]) == s2[j] && !in_s1(s2[i]) && !in_s1(s2[j])) return false;
    }
  }
  // Condition 2: entries with a hybrid parent or hybrid sibling must be in s1.
  for (NodeId y : s2) {
    if (in_s1(y)) continue;
    if (net.in_degree(y) == 1 && net.is_hybrid(net.parents(y)[0])) return false;
    NodeId sib = sibling_of(net, y);
    if (sib != kNoNode && net.is_hybrid(sib)) return false;
  }
  // Condition 3: no s1 node strictly below a tuple entry.
  if (!s2.empty()) {
    Reachability reach(net);
    for (NodeId y : s2) {
      if (reach.is_proper_descendant(pair.s1[0], y)) return false;
      if (pair.kind == PairKind::H && reach.is_proper_descendant(pair.s1[1], y)) return false;
    }
  }
  // Condition 4H: the two s1 nodes must stay clear of the tuple.
  if (pair.kind == PairKind::H) {
    for (NodeId y : s2)
      if (in_s1(y)) return false;
  }
  return true;
}

namespace {

Network augment_impl(const Network& src, std::uint32_t label, const FeasiblePair& pair) {
  if (label < 1) fail(errc::invalid_label, "leaf labels are positive integers");
  if (src.find_leaf(label) != kNoNode)
    fail(errc::label_clash, "label " + std::to_string(label) + " already present");
  if (!is_feasible(src, pair)) fail(errc::infeasible, "pair fails the feasibility conditions");

  Network net = src;
  const std::size_t m = pair.s2.size();  // tuple length r-1

  // Fresh tree path u1..ur (preceded by a hybrid u0 for H pairs).
  NodeId u0 = kNoNode;
  std::vector<NodeId> path(m + 1);
  if (pair.kind == PairKind::H) u0 = net.add_node();
  for (auto& u : path) u = net.add_node();
  if (u0 != kNoNode) net.add_arc(u0, path[0]);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) net.add_arc(path[i], path[i + 1]);

  // Split the s1 nodes first; a tuple entry equal to an s1 node then splits
  // below the w node, which is what makes the two steps order-sensitive.
  if (pair.kind == PairKind::T) {
    NodeId w1 = split_above(net, pair.s1[0]);
    net.add_arc(w1, path[0]);
  } else {
    NodeId w1 = split_above(net, pair.s1[0]);
    net.add_arc(w1, u0);
    NodeId w2 = split_above(net, pair.s1[1]);
    net.add_arc(w2, u0);
  }
  for (std::size_t i = 0; i < m; ++i) {
    NodeId v = split_above(net, pair.s2[i]);
    net.add_arc(path[i], v);
  }
  net.set_label(path.back(), label);
  return net;
}

}  // namespace

Network augment_t(const Network& net, std::uint32_t label, NodeId tau,
                  const std::vector<NodeId>& s2) {
  return augment_impl(net, label, FeasiblePair::t_pair(tau, s2));
}

Network augment_h(const Network& net, std::uint32_t label, NodeId tau1, NodeId tau2,
                  const std::vector<NodeId>& s2) {
  return augment_impl(net, label, FeasiblePair::h_pair(tau1, tau2, s2));
}

Network augment(const Network& net, std::uint32_t label, const FeasiblePair& pair) {
  return augment_impl(net, label, pair);
}

}  // namespace btc
