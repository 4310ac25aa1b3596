#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "btc/augmentation.hpp"
#include "btc/network.hpp"
#include "btc/reduction.hpp"

namespace btc {

enum class Format : std::uint8_t { ENewick, EdgeList };

/// Canonical node names: L<label> for leaves, T<j>/H<j> for internal tree and
/// hybrid nodes numbered in canonical depth-first order. Children are visited
/// by (smallest reachable leaf label, then lexicographic path-count vector);
/// identical networks always name and order nodes identically.
struct CanonicalNames {
  std::vector<std::string> name;      // indexed by NodeId
  std::vector<NodeId> preorder;       // first-visit order
  std::vector<std::vector<NodeId>> order;  // children of each node, canonical order
};

CanonicalNames canonical_names(const Network& net);

/// Serialization is canonical: isomorphic networks produce identical text.
/// The input must validate as BTC.
std::string serialize(const Network& net, Format format);

/// Parses one document. Syntax errors carry line/column; inputs that build a
/// graph but fail BTC validation raise errc::invalid_network naming the rule.
Network parse(std::string_view text, Format format);

/// Parses a whole stream: one eNewick document per non-empty line, or a
/// sequence of edge-list documents each starting at its header line.
std::vector<Network> parse_stream(std::string_view text, Format format);

/// Recovering-data / feasible-pair text, e.g. "T: S1={L1}; S2=(T2,L1)" with
/// canonical node names; the empty tuple prints as "()".
std::string format_pair(const Network& net, const FeasiblePair& pair);

/// Inverse of format_pair: names resolve against the canonical naming.
FeasiblePair parse_pair(const Network& net, std::string_view text);

/// Augmentation chain in construction order, one line per step:
///   N2 = T^-1(N1, 2; S1={L1}; S2=())
std::string format_decomposition(const std::vector<DecompositionStep>& steps);

NodeId resolve_name(const Network& net, const CanonicalNames& names, std::string_view name);

}  // namespace btc
