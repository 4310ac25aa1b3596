#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "btc/augmentation.hpp"
#include "btc/network.hpp"
#include "btc/random.hpp"

namespace btc {

enum class EmitOrder : std::uint8_t {
  Deterministic,  // canonical depth-first order regardless of worker count
  Any,            // parallel workers may interleave subtrees
};

struct GenerationConfig {
  std::uint32_t n = 1;
  std::uint32_t h_min = 0;
  std::uint32_t h_max = std::numeric_limits<std::uint32_t>::max();  // clamped to n-1
  unsigned jobs = 1;  // 0 = hardware concurrency
  EmitOrder order = EmitOrder::Deterministic;
};

inline constexpr std::size_t kNoHybridCap = std::numeric_limits<std::size_t>::max();

/// Every feasible pair whose augmentation adds at most `max_new_hybrids`
/// hybrid nodes, each exactly once, in canonical pair order.
std::vector<FeasiblePair> enumerate_feasible_pairs(const Network& net,
                                                   std::size_t max_new_hybrids);

/// Test hook: same enumeration with the descent condition (no s1 node below a
/// tuple entry) switched off; counts then match the closed-form bounds.
std::vector<FeasiblePair> enumerate_relaxed_pairs(const Network& net,
                                                  std::size_t max_new_hybrids);

/// Number of feasible pairs without materializing them.
std::uint64_t count_feasible_pairs(const Network& net, std::size_t max_new_hybrids);

/// All networks one augmentation away (labels of `net` must be 1..k; the new
/// leaf is k+1), in canonical pair order.
std::vector<Network> offspring(const Network& net, std::size_t max_new_hybrids = kNoHybridCap);

/// Streams every network over [n] exactly once (depth-first recursion over
/// augmentations; no isomorphism checks needed). The sink runs on the calling
/// thread; with jobs > 1 subtrees are expanded in parallel and re-ordered
/// unless order == Any.
void generate_networks(const GenerationConfig& cfg,
                       const std::function<void(const Network&)>& sink);

/// Counting-only traversal; returns counts[h] for h = 0..n-1 (already
/// restricted to the configured hybrid window).
std::vector<std::uint64_t> count_networks_by_hybrids(const GenerationConfig& cfg);
std::uint64_t count_networks(const GenerationConfig& cfg);

/// Exact census of BTC_n keyed by hybrid count.
std::map<std::uint32_t, std::uint64_t> count_exact(std::uint32_t n);

/// Random network over [n]: n-1 augmentations, each drawn uniformly from the
/// current network's feasible pairs (not uniform over BTC_n). Uses rejection
/// from the closed-form relaxed strata, so it stays cheap when the pair count
/// is astronomical. Deterministic per stream state.
Network random_network(std::uint32_t n, SplitMix64& rng);
Network random_network(std::uint32_t n, std::uint64_t seed);

struct EstimateResult {
  double estimate = 0.0;        // estimated |BTC_n|
  bool exact = false;           // true when every parent network was censused
  std::uint64_t parents = 0;    // |BTC_{n-1}|
  std::uint64_t samples = 0;    // parent networks whose offspring were counted
  std::vector<double> running_means;  // mean offspring size, sampled periodically
};

/// Mean offspring size over uniformly sampled parents (reservoir over the
/// exhaustive parent stream) scaled by |BTC_{n-1}|; exact when the budget
/// covers every parent.
EstimateResult estimate_count(std::uint32_t n, std::uint64_t sample_budget, std::uint64_t seed);

}  // namespace btc
