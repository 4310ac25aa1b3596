#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "btc/augmentation.hpp"
#include "btc/bigint.hpp"
#include "btc/network.hpp"

namespace btc {

enum class LeafType : std::uint8_t { T, H };

/// The unique maximal tree-node path ending at a leaf whose off-path children
/// are pairwise distinct hybrids.
struct THPath {
  std::vector<NodeId> nodes;    // u1..ur, nodes.back() is the leaf
  std::vector<NodeId> hybrids;  // v1..v_{r-1}; hybrids[i] is the hybrid child of nodes[i]
  LeafType leaf_type = LeafType::T;
  NodeId u0 = kNoNode;  // hybrid parent of u1, present iff leaf_type == H

  std::size_t length() const noexcept { return nodes.size(); }
  /// Node count of the extended path (u0 included for type H).
  std::size_t extended_length() const noexcept {
    return nodes.size() + (leaf_type == LeafType::H ? 1 : 0);
  }
};

/// Recovering data of a reduction, expressed in ids of the reduced network.
using RecoveringData = FeasiblePair;

struct Reduction {
  Network network;
  RecoveringData data;
};

THPath th_path(const Network& net, NodeId leaf);

/// Removes the extended TH-path of `leaf`, eliminates the elementary nodes
/// this creates, compacts, and reports the recovering data (heirs of the
/// severed parents and of the off-path hybrids).
Reduction reduce(const Network& net, NodeId leaf);

/// Relabel-stable node reference: (hybrid?, path-count vector), unique per
/// node inside one network.
struct MuRef {
  bool hybrid = false;
  std::vector<BigCount> mu;

  friend bool operator==(const MuRef&, const MuRef&) = default;
};

struct DecompositionStep {
  std::uint32_t label = 0;  // leaf removed by this step / re-added on replay
  RecoveringData data;      // ids in the reduced network of this step
  std::vector<MuRef> s1_refs;
  std::vector<MuRef> s2_refs;
};

/// The unique chain reducing a network over [n] down to the trivial network,
/// removing leaves n, n-1, ..., 2 in this order.
std::vector<DecompositionStep> decompose(const Network& net);

/// Rebuilds a network from its decomposition by augmenting the trivial
/// network; step references resolve through the mu signatures.
Network replay_decomposition(const std::vector<DecompositionStep>& steps);

}  // namespace btc
