#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "btc/network.hpp"

namespace btc {

enum class PairKind : std::uint8_t { T, H };

/// Candidate input of an augmentation: a multiset s1 of one (T) or two (H)
/// tree nodes plus an ordered tuple s2 of tree nodes. For H pairs s1 is kept
/// sorted so equal pairs compare equal; s1 may repeat one node.
struct FeasiblePair {
  PairKind kind = PairKind::T;
  std::array<NodeId, 2> s1{kNoNode, kNoNode};
  std::vector<NodeId> s2;

  unsigned s1_size() const noexcept { return kind == PairKind::T ? 1u : 2u; }
  /// Hybrid nodes an augmentation with this pair adds.
  std::size_t hybrid_delta() const noexcept {
    return s2.size() + (kind == PairKind::H ? 1 : 0);
  }

  static FeasiblePair t_pair(NodeId tau, std::vector<NodeId> s2 = {}) {
    FeasiblePair p;
    p.kind = PairKind::T;
    p.s1[0] = tau;
    p.s2 = std::move(s2);
    return p;
  }
  static FeasiblePair h_pair(NodeId tau1, NodeId tau2, std::vector<NodeId> s2 = {}) {
    FeasiblePair p;
    p.kind = PairKind::H;
    p.s1[0] = tau1 <= tau2 ? tau1 : tau2;
    p.s1[1] = tau1 <= tau2 ? tau2 : tau1;
    p.s2 = std::move(s2);
    return p;
  }

  friend bool operator==(const FeasiblePair& a, const FeasiblePair& b) {
    return a.kind == b.kind && a.s1[0] == b.s1[0] &&
           (a.kind == PairKind::T || a.s1[1] == b.s1[1]) && a.s2 == b.s2;
  }
};

/// Canonical pair order: T before H, then |s2|, then s2, then s1.
bool pair_less(const FeasiblePair& a, const FeasiblePair& b);

/// Checks the feasibility conditions of the pair's kind. Members must be
/// live tree nodes (errc::invalid_pair_member otherwise).
bool is_feasible(const Network& net, const FeasiblePair& pair);

/// Grafts a new leaf onto `net` from a T-feasible pair: a fresh tree path is
/// attached below a split of s1 and each tuple entry is rewired through a new
/// hybrid hanging off the path. Adds |s2| hybrid nodes.
Network augment_t(const Network& net, std::uint32_t label, NodeId tau,
                  const std::vector<NodeId>& s2);

/// H-flavored graft: the fresh path starts at a new hybrid fed by splits of
/// the two s1 nodes. Adds |s2|+1 hybrid nodes.
Network augment_h(const Network& net, std::uint32_t label, NodeId tau1, NodeId tau2,
                  const std::vector<NodeId>& s2);

/// Dispatches on |s1|.
Network augment(const Network& net, std::uint32_t label, const FeasiblePair& pair);

}  // namespace btc
