#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "btc/bigint.hpp"
#include "btc/network.hpp"

namespace btc {

/// Per-node vector of directed path counts to each leaf, aligned with the
/// network's sorted label list.
using MuVector = std::vector<BigCount>;

struct MuTable {
  std::vector<std::uint32_t> labels;  // ascending
  std::vector<MuVector> mu;           // indexed by NodeId; empty for dead ids

  std::size_t label_index(std::uint32_t label) const;
};

/// Bottom-up path-count computation in reverse topological order.
MuTable compute_mu(const Network& net);

/// Kind-tagged mu multiset (tag true = hybrid), sorted; the tag separates a
/// hybrid node from its single child, which shares its mu vector.
std::vector<std::pair<bool, MuVector>> mu_signatures(const Network& net);

/// Mu-multiset isomorphism oracle for validated tree-child networks.
bool isomorphic(const Network& a, const Network& b);

/// Independent backtracking search for a leaf-label-preserving digraph
/// isomorphism. Limited to 20 nodes (errc::too_large beyond).
bool brute_force_isomorphic(const Network& a, const Network& b);

/// Number of leaf-label-preserving automorphisms found by the same search.
std::size_t brute_force_automorphism_count(const Network& net);

}  // namespace btc
