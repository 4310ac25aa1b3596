#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "btc/error.hpp"

namespace btc {

/// Dense index of a node inside one Network value. Ids stay stable while a
/// network is mutated; compact() renumbers and drops tombstones.
using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

/// Classification derived from the (indegree, outdegree) pair. Elementary
/// degrees (1,1)/(0,1) only occur transiently during surgery.
enum class NodeKind : std::uint8_t {
  Root,          // (0,2)
  TreeInternal,  // (1,2)
  Leaf,          // (1,0), or the labeled (0,0) node of a one-node network
  Hybrid,        // (2,1)
  Elementary,    // (1,1) or (0,1)
  Other,
};

enum class Rule : std::uint8_t {
  SingleRoot,
  Acyclic,
  Degrees,
  TreeChild,
  Labels,
  NodeCounts,
};

const char* to_string(Rule rule) noexcept;

struct Violation {
  Rule rule;
  std::vector<NodeId> nodes;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool violates(Rule rule) const noexcept;
};

/// A rooted leaf-labeled DAG with at most binary degrees. Cheap to copy;
/// all surgery in this library works on copies and leaves inputs untouched.
class Network {
 public:
  Network() = default;

  NodeId add_node();
  void add_arc(NodeId parent, NodeId child);
  void remove_arc(NodeId parent, NodeId child);
  /// Tombstones the node and detaches every incident arc.
  void remove_node(NodeId u);
  void set_label(NodeId u, std::uint32_t label);

  bool is_live(NodeId u) const noexcept {
    return u < nodes_.size() && nodes_[u].alive;
  }
  /// Number of live nodes.
  std::size_t size() const noexcept { return live_; }
  /// All valid ids are < id_bound(); some may be tombstoned.
  std::size_t id_bound() const noexcept { return nodes_.size(); }

  std::span<const NodeId> parents(NodeId u) const {
    const Node& n = node(u);
    return {n.parent.data(), n.nparent};
  }
  std::span<const NodeId> children(NodeId u) const {
    const Node& n = node(u);
    return {n.child.data(), n.nchild};
  }
  unsigned in_degree(NodeId u) const { return node(u).nparent; }
  unsigned out_degree(NodeId u) const { return node(u).nchild; }
  /// 0 means unlabeled.
  std::uint32_t label_of(NodeId u) const { return node(u).label; }

  NodeKind kind(NodeId u) const;
  bool is_tree_node(NodeId u) const {
    NodeKind k = kind(u);
    return k == NodeKind::Root || k == NodeKind::TreeInternal || k == NodeKind::Leaf;
  }
  bool is_hybrid(NodeId u) const { return kind(u) == NodeKind::Hybrid; }
  bool is_leaf(NodeId u) const { return kind(u) == NodeKind::Leaf; }
  bool is_elementary(NodeId u) const { return kind(u) == NodeKind::Elementary; }

  /// The unique node with indegree 0, or kNoNode if there is not exactly one.
  NodeId root() const;

  std::vector<NodeId> node_ids() const;
  std::vector<NodeId> leaves_sorted() const;  // ascending by label
  std::vector<std::uint32_t> labels_sorted() const;
  NodeId find_leaf(std::uint32_t label) const;

  std::size_t leaf_count() const;
  std::size_t tree_node_count() const;
  std::size_t hybrid_count() const;
  std::size_t elementary_count() const;

  /// Drops tombstoned slots and renumbers; returns the old->new id map
  /// (kNoNode for removed ids).
  std::vector<NodeId> compact();

 private:
  struct Node {
    std::array<NodeId, 2> parent{kNoNode, kNoNode};
    std::array<NodeId, 2> child{kNoNode, kNoNode};
    std::uint32_t label = 0;
    std::uint8_t nparent = 0;
    std::uint8_t nchild = 0;
    bool alive = true;
  };

  const Node& node(NodeId u) const {
    if (!is_live(u)) fail(errc::invalid_node, "node " + std::to_string(u) + " is not live");
    return nodes_[u];
  }
  Node& node(NodeId u) {
    if (!is_live(u)) fail(errc::invalid_node, "node " + std::to_string(u) + " is not live");
    return nodes_[u];
  }

  std::vector<Node> nodes_;
  std::uint32_t live_ = 0;
};

/// One-node network whose single node is a leaf carrying `label`.
Network new_trivial(std::uint32_t label);

/// Full structural check: root uniqueness, acyclicity, binary degrees,
/// tree-child condition, leaf labeling, and the node-count identities.
ValidationReport validate_btc(const Network& net);

/// Inserts a fresh node immediately above `u`: incoming arcs of `u` move to
/// the new node, which becomes the single parent of `u`. Returns the new id.
NodeId split_above(Network& net, NodeId u);

/// Removes every maximal elementary path, adding a grantor->heir arc when the
/// grantor exists. When the whole network is one elementary path the result
/// would be empty and errc::empty_network is raised.
void eliminate_elementary_inplace(Network& net);
Network eliminate_elementary(Network net);

/// Transitive-closure structure over a DAG.
class Reachability {
 public:
  explicit Reachability(const Network& net);

  /// True iff a directed path with at least one arc leads from `b` to `a`.
  bool is_proper_descendant(NodeId a, NodeId b) const {
    return bit(rows_.data() + static_cast<std::size_t>(b) * words_, a);
  }

  /// Union of the descendant rows of `b` into `acc` (acc must hold words()).
  void or_descendants(NodeId b, std::uint64_t* acc) const {
    const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(b) * words_;
    for (std::size_t w = 0; w < words_; ++w) acc[w] |= row[w];
  }

  std::size_t words() const noexcept { return words_; }

  static bool bit(const std::uint64_t* row, NodeId u) noexcept {
    return (row[u >> 6] >> (u & 63)) & 1u;
  }

 private:
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Topological order of the live nodes (parents before children).
/// Raises errc::not_a_dag when a cycle exists.
std::vector<NodeId> topological_order(const Network& net);

}  // namespace btc
