#include "btc/network.hpp"

#include <algorithm>

namespace btc {

const char* to_string(Rule rule) noexcept {
  switch (rule) {
    case Rule::SingleRoot: return "single-root";
    case Rule::Acyclic: return "acyclic";
    case Rule::Degrees: return "degrees";
    case Rule::TreeChild: return "tree-child";
    case Rule::Labels: return "labels";
    case Rule::NodeCounts: return "node-counts";
  }
  return "unknown";
}

bool ValidationReport::violates(Rule rule) const noexcept {
  for (const Violation& v : violations)
    if (v.rule == rule) return true;
  return false;
}

NodeId Network::add_node() {
  nodes_.push_back(Node{});
  ++live_;
  return static_cast<NodeId>(nodes_.size() - 1);
}

void Network::add_arc(NodeId parent, NodeId child) {
  Node& p = node(parent);
  Node& c = node(child);
  if (p.nchild >= 2)
    fail(errc::invalid_node, "node " + std::to_string(parent) + " already has two children");
  if (c.nparent >= 2)
    fail(errc::invalid_node, "node " + std::to_string(child) + " already has two parents");
  p.child[p.nchild++] = child;
  c.parent[c.nparent++] = parent;
}

void Network::remove_arc(NodeId parent, NodeId child) {
  Node& p = node(parent);
  Node& c = node(child);
  bool found = false;
  for (unsigned i = 0; i < p.nchild; ++i) {
    if (p.child[i] == child) {
      for (unsigned j = i; j + 1 < p.nchild; ++j) p.child[j] = p.child[j + 1];
      p.child[--p.nchild] = kNoNode;
      found = true;
      break;
    }
  }
  if (!found) fail(errc::invalid_node, "no such arc");
  for (unsigned i = 0; i < c.nparent; ++i) {
    if (c.parent[i] == parent) {
      for (unsigned j = i; j + 1 < c.nparent; ++j) c.parent[j] = c.parent[j + 1];
      c.parent[--c.nparent] = kNoNode;
      break;
    }
  }
}

void Network::remove_node(NodeId u) {
  Node& n = node(u);
  while (n.nparent > 0) remove_arc(n.parent[0], u);
  while (n.nchild > 0) remove_arc(u, n.child[0]);
  n.alive = false;
  --live_;
}

void Network::set_label(NodeId u, std::uint32_t label) { node(u).label = label; }

NodeKind Network::kind(NodeId u) const {
  const Node& n = node(u);
  unsigned in = n.nparent, out = n.nchild;
  if (in == 0 && out == 2) return NodeKind::Root;
  if (in == 1 && out == 2) return NodeKind::TreeInternal;
  if (in == 1 && out == 0) return NodeKind::Leaf;
  if (in == 0 && out == 0 && n.label != 0) return NodeKind::Leaf;  // trivial network
  if (in == 2 && out == 1) return NodeKind::Hybrid;
  if ((in == 1 || in == 0) && out == 1) return NodeKind::Elementary;
  return NodeKind::Other;
}

NodeId Network::root() const {
  NodeId r = kNoNode;
  for (NodeId u = 0; u < nodes_.size(); ++u) {
    if (!nodes_[u].alive || nodes_[u].nparent != 0) continue;
    if (r != kNoNode) return kNoNode;
    r = u;
  }
  return r;
}

std::vector<NodeId> Network::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(live_);
  for (NodeId u = 0; u < nodes_.size(); ++u)
    if (nodes_[u].alive) ids.push_back(u);
  return ids;
}

std::vector<NodeId> Network::leaves_sorted() const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < nodes_.size(); ++u)
    if (nodes_[u].alive && kind(u) == NodeKind::Leaf) out.push_back(u);
  std::sort(out.begin(), out.end(),
            [this](NodeId a, NodeId b) { return nodes_[a].label < nodes_[b].label; });
  return out;
}

std::vector<std::uint32_t> Network::labels_sorted() const {
  std::vector<std::uint32_t> out;
  for (NodeId u = 0; u < nodes_.size(); ++u)
    if (nodes_[u].alive && nodes_[u].label != 0) out.push_back(nodes_[u].label);
  std::sort(out.begin(), out.end());
  return out;
}

NodeId Network::find_leaf(std::uint32_t label) const {
  for (NodeId u = 0; u < nodes_.size(); ++u)
    if (nodes_[u].alive && nodes_[u].label == label && kind(u) == NodeKind::Leaf) return u;
  return kNoNode;
}

std::size_t Network::leaf_count() const {
  std::size_t c = 0;
  for (NodeId u = 0; u < nodes_.size(); ++u)
    if (nodes_[u].alive && kind(u) == NodeKind::Leaf) ++c;
  return c;
}

std::size_t Network::tree_node_count() const {
  std::size_t c = 0;
  for (NodeId u = 0; u < nodes_.size(); ++u)
    if (nodes_[u].alive && is_tree_node(u)) ++c;
  return c;
}

std::size_t Network::hybrid_count() const {
  std::size_t c = 0;
  for (NodeId u = 0; u < nodes_.size(); ++u)
    if (nodes_[u].alive && kind(u) == NodeKind::Hybrid) ++c;
  return c;
}

std::size_t Network::elementary_count() const {
  std::size_t c = 0;
  for (NodeId u = 0; u < nodes_.size(); ++u)
    if (nodes_[u].alive && kind(u) == NodeKind::Elementary) ++c;
  return c;
}

std::vector<NodeId> Network::compact() {
  std::vector<NodeId> map(nodes_.size(), kNoNode);
  std::vector<Node> packed;
  packed.reserve(live_);
  for (NodeId u = 0; u < nodes_.size(); ++u) {
    if (!nodes_[u].alive) continue;
    map[u] = static_cast<NodeId>(packed.size());
    packed.push_back(nodes_[u]);
  }
  for (Node& n : packed) {
    for (unsigned i = 0; i < n.nparent; ++i) n.parent[i] = map[n.parent[i]];
    for (unsigned i = 0; i < n.nchild; ++i) n.child[i] = map[n.child[i]];
  }
  nodes_ = std::move(packed);
  return map;
}

Network new_trivial(std::uint32_t label) {
  if (label < 1) fail(errc::invalid_label, "leaf labels are positive integers");
  Network net;
  NodeId u = net.add_node();
  net.set_label(u, label);
  return net;
}

std::vector<NodeId> topological_order(const Network& net) {
  std::vector<NodeId> order;
  order.reserve(net.size());
  std::vector<std::uint8_t> pending(net.id_bound(), 0);
  std::vector<NodeId> stack;
  for (NodeId u = 0; u < net.id_bound(); ++u) {
    if (!net.is_live(u)) continue;
    pending[u] = static_cast<std::uint8_t>(net.in_degree(u));
    if (pending[u] == 0) stack.push_back(u);
  }
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (NodeId c : net.children(u))
      if (--pending[c] == 0) stack.push_back(c);
  }
  if (order.size() != net.size()) fail(errc::not_a_dag, "cycle detected");
  return order;
}

ValidationReport validate_btc(const Network& net) {
  ValidationReport report;
  auto add = [&report](Rule rule, std::vector<NodeId> nodes) {
    report.violations.push_back({rule, std::move(nodes)});
  };

  std::vector<NodeId> ids = net.node_ids();
  if (ids.empty()) {
    add(Rule::SingleRoot, {});
    return report;
  }

  // Root uniqueness.
  std::vector<NodeId> roots;
  for (NodeId u : ids)
    if (net.in_degree(u) == 0) roots.push_back(u);
  if (roots.size() != 1) add(Rule::SingleRoot, roots);

  // Acyclicity via Kahn; leftover nodes sit on cycles.
  {
    std::vector<std::uint8_t> pending(net.id_bound(), 0);
    std::vector<NodeId> stack;
    std::size_t seen = 0;
    for (NodeId u : ids) {
      pending[u] = static_cast<std::uint8_t>(net.in_degree(u));
      if (pending[u] == 0) stack.push_back(u);
    }
    std::vector<std::uint8_t> done(net.id_bound(), 0);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      done[u] = 1;
      ++seen;
      for (NodeId c : net.children(u))
        if (--pending[c] == 0) stack.push_back(c);
    }
    if (seen != ids.size()) {
      std::vector<NodeId> cyclic;
      for (NodeId u : ids)
        if (!done[u]) cyclic.push_back(u);
      add(Rule::Acyclic, cyclic);
    }
  }

  // Binary degrees; the labeled (0,0) singleton counts as a leaf.
  {
    std::vector<NodeId> bad;
    for (NodeId u : ids) {
      NodeKind k = net.kind(u);
      bool ok = k == NodeKind::Root || k == NodeKind::TreeInternal || k == NodeKind::Hybrid ||
                (k == NodeKind::Leaf && (net.in_degree(u) == 1 || ids.size() == 1));
      if (!ok) bad.push_back(u);
    }
    if (!bad.empty()) add(Rule::Degrees, bad);
  }

  // Tree-child: every non-leaf needs a child that is not a hybrid.
  {
    std::vector<NodeId> bad;
    for (NodeId u : ids) {
      if (net.out_degree(u) == 0) continue;
      bool has_tree_child = false;
      for (NodeId c : net.children(u))
        if (net.in_degree(c) != 2) has_tree_child = true;
      if (!has_tree_child) bad.push_back(u);
    }
    if (!bad.empty()) add(Rule::TreeChild, bad);
  }

  // Labels: exactly the leaves carry labels, pairwise distinct.
  {
    std::vector<NodeId> bad;
    std::vector<std::uint32_t> seen;
    for (NodeId u : ids) {
      bool leaf = net.out_degree(u) == 0;
      std::uint32_t label = net.label_of(u);
      if (leaf && label == 0) bad.push_back(u);
      if (!leaf && label != 0) bad.push_back(u);
      if (leaf && label != 0) seen.push_back(label);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      for (NodeId u : ids) {
        std::uint32_t label = net.label_of(u);
        if (label == 0) continue;
        if (std::count(seen.begin(), seen.end(), label) > 1) bad.push_back(u);
      }
    }
    if (!bad.empty()) {
      std::sort(bad.begin(), bad.end());
      bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
      add(Rule::Labels, bad);
    }
  }

  // t - h = 2n - 1 and h <= n - 1.
  {
    std::size_t t = net.tree_node_count();
    std::size_t h = net.hybrid_count();
    std::size_t n = net.leaf_count();
    bool ok = t + h == ids.size() &&
              static_cast<long long>(t) - static_cast<long long>(h) ==
                  2 * static_cast<long long>(n) - 1 &&
              (n == 0 || h <= n - 1);
    if (!ok) add(Rule::NodeCounts, {});
  }

  return report;
}

NodeId split_above(Network& net, NodeId u) {
  if (!net.is_live(u)) fail(errc::invalid_node, "split target is not live");
  NodeId fresh = net.add_node();
  // Move the incoming arcs of u onto the new node, then hang u below it.
  std::vector<NodeId> ps(net.parents(u).begin(), net.parents(u).end());
  for (NodeId p : ps) {
    net.remove_arc(p, u);
    net.add_arc(p, fresh);
  }
  net.add_arc(fresh, u);
  return fresh;
}

void eliminate_elementary_inplace(Network& net) {
  const std::size_t guard = net.id_bound() + 1;
  std::vector<std::uint8_t> handled(net.id_bound(), 0);
  for (NodeId u = 0; u < net.id_bound(); ++u) {
    if (!net.is_live(u) || handled[u] || !net.is_elementary(u)) continue;
    // Walk to the top of the maximal elementary path containing u.
    NodeId top = u;
    std::size_t steps = 0;
    while (net.in_degree(top) == 1 && net.is_elementary(net.parents(top)[0])) {
      top = net.parents(top)[0];
      if (++steps > guard) fail(errc::not_a_dag, "elementary cycle");
    }
    NodeId grantor = net.in_degree(top) == 1 ? net.parents(top)[0] : kNoNode;
    // Collect the path downwards and find the heir.
    std::vector<NodeId> path;
    NodeId cur = top;
    steps = 0;
    while (net.is_elementary(cur)) {
      path.push_back(cur);
      cur = net.children(cur)[0];
      if (++steps > guard) fail(errc::not_a_dag, "elementary cycle");
    }
    NodeId heir = cur;
    for (NodeId e : path) {
      handled[e] = 1;
      net.remove_node(e);
    }
    if (grantor != kNoNode) net.add_arc(grantor, heir);
  }
  if (net.size() == 0) fail(errc::empty_network, "elimination removed every node");
}

Network eliminate_elementary(Network net) {
  eliminate_elementary_inplace(net);
  net.compact();
  return net;
}

Reachability::Reachability(const Network& net) {
  std::vector<NodeId> order = topological_order(net);
  words_ = (net.id_bound() + 63) / 64;
  rows_.assign(net.id_bound() * words_, 0);
  // Children first: row(u) = union over children c of row(c) | {c}.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId u = *it;
    std::uint64_t* row = rows_.data() + static_cast<std::size_t>(u) * words_;
    for (NodeId c : net.children(u)) {
      const std::uint64_t* crow = rows_.data() + static_cast<std::size_t>(c) * words_;
      for (std::size_t w = 0; w < words_; ++w) row[w] |= crow[w];
      row[c >> 6] |= std::uint64_t{1} << (c & 63);
    }
  }
}

}  // namespace btc
