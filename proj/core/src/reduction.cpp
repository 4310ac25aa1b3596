#include "btc/reduction.hpp"

#include <algorithm>

#include "btc/isocheck.hpp"

namespace btc {

THPath th_path(const Network& net, NodeId leaf) {
  if (!net.is_live(leaf)) fail(errc::invalid_node, "leaf id is not live");
  if (!net.is_leaf(leaf)) fail(errc::invalid_leaf, "th_path needs a leaf");
  if (net.size() == 1) fail(errc::no_parent, "the trivial network has no TH-path");

  // Built front-first by prepending, then reversed.
  std::vector<NodeId> rpath{leaf};
  std::vector<NodeId> rhybrids;
  THPath out;
  for (;;) {
    NodeId u1 = rpath.back();
    if (net.in_degree(u1) == 0)
      fail(errc::invalid_network, "TH-path reached the root; input is not tree-child");
    NodeId p = net.parents(u1)[0];
    if (net.is_hybrid(p)) {
      out.leaf_type = LeafType::H;
      out.u0 = p;
      break;
    }
    auto cs = net.children(p);
    NodeId other = cs[0] == u1 ? cs[1] : cs[0];
    if (!net.is_hybrid(other)) {
      out.leaf_type = LeafType::T;  // parent has two tree children
      break;
    }
    if (std::find(rhybrids.begin(), rhybrids.end(), other) != rhybrids.end()) {
      out.leaf_type = LeafType::T;  // parent already feeds one of the v_i
      break;
    }
    rpath.push_back(p);
    rhybrids.push_back(other);
  }
  out.nodes.assign(rpath.rbegin(), rpath.rend());
  out.hybrids.assign(rhybrids.rbegin(), rhybrids.rend());
  return out;
}

namespace {

// First non-elementary node reached by walking down single children.
NodeId heir_of(const Network& net, NodeId u) {
  std::size_t guard = net.id_bound() + 1;
  while (net.is_elementary(u)) {
    u = net.children(u)[0];
    if (guard-- == 0) fail(errc::not_a_dag, "elementary cycle");
  }
  return u;
}

}  // namespace

Reduction reduce(const Network& src, NodeId leaf) {
  if (!src.is_live(leaf) || !src.is_leaf(leaf)) fail(errc::invalid_leaf, "no such leaf");
  if (src.size() == 1) fail(errc::cannot_reduce, "cannot reduce the trivial network");

  Network net = src;
  THPath path = th_path(net, leaf);

  // Severed parents whose heirs become s1.
  std::vector<NodeId> ws;
  if (path.leaf_type == LeafType::T) {
    ws.push_back(net.parents(path.nodes.front())[0]);
  } else {
    auto ps = net.parents(path.u0);
    ws.assign(ps.begin(), ps.end());
  }

  if (path.u0 != kNoNode) net.remove_node(path.u0);
  for (NodeId u : path.nodes) net.remove_node(u);

  // Heirs are read before elimination so chained elementary nodes (the
  // w1->w2 and w->v cases) resolve to their common heir.
  RecoveringData data;
  data.kind = path.leaf_type == LeafType::T ? PairKind::T : PairKind::H;
  data.s1[0] = heir_of(net, ws[0]);
  if (ws.size() == 2) {
    data.s1[1] = heir_of(net, ws[1]);
    if (data.s1[1] < data.s1[0]) std::swap(data.s1[0], data.s1[1]);
  }
  data.s2.reserve(path.hybrids.size());
  for (NodeId v : path.hybrids) data.s2.push_back(heir_of(net, v));

  eliminate_elementary_inplace(net);
  std::vector<NodeId> map = net.compact();

  data.s1[0] = map[data.s1[0]];
  if (data.kind == PairKind::H) data.s1[1] = map[data.s1[1]];
  for (NodeId& y : data.s2) y = map[y];
  return {std::move(net), std::move(data)};
}

namespace {

MuRef make_ref(const Network& net, const MuTable& table, NodeId u) {
  return MuRef{net.is_hybrid(u), table.mu[u]};
}

NodeId resolve_ref(const Network& net, const MuTable& table, const MuRef& ref) {
  NodeId found = kNoNode;
  for (NodeId u = 0; u < net.id_bound(); ++u) {
    if (!net.is_live(u)) continue;
    if (net.is_hybrid(u) != ref.hybrid) continue;
    if (table.mu[u] != ref.mu) continue;
    if (found != kNoNode) fail(errc::invalid_argument, "ambiguous node reference");
    found = u;
  }
  if (found == kNoNode) fail(errc::invalid_argument, "unresolvable node reference");
  return found;
}

}  // namespace

std::vector<DecompositionStep> decompose(const Network& src) {
  std::vector<std::uint32_t> labels = src.labels_sorted();
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != i + 1)
      fail(errc::invalid_labeling, "decompose expects labels 1..n");

  std::vector<DecompositionStep> steps;
  Network cur = src;
  for (std::uint32_t label = static_cast<std::uint32_t>(labels.size()); label >= 2; --label) {
    Reduction red = reduce(cur, cur.find_leaf(label));
    DecompositionStep step;
    step.label = label;
    step.data = red.data;
    MuTable table = compute_mu(red.network);
    step.s1_refs.push_back(make_ref(red.network, table, red.data.s1[0]));
    if (red.data.kind == PairKind::H)
      step.s1_refs.push_back(make_ref(red.network, table, red.data.s1[1]));
    for (NodeId y : red.data.s2) step.s2_refs.push_back(make_ref(red.network, table, y));
    steps.push_back(std::move(step));
    cur = std::move(red.network);
  }
  return steps;
}

Network replay_decomposition(const std::vector<DecompositionStep>& steps) {
  Network net = new_trivial(1);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    MuTable table = compute_mu(net);
    FeasiblePair pair;
    pair.kind = it->data.kind;
    pair.s1[0] = resolve_ref(net, table, it->s1_refs[0]);
    if (pair.kind == PairKind::H) {
      pair.s1[1] = resolve_ref(net, table, it->s1_refs[1]);
      if (pair.s1[1] < pair.s1[0]) std::swap(pair.s1[0], pair.s1[1]);
    }
    pair.s2.reserve(it->s2_refs.size());
    for (const MuRef& ref : it->s2_refs) pair.s2.push_back(resolve_ref(net, table, ref));
    net = augment(net, it->label, pair);
  }
  return net;
}

}  // namespace btc
