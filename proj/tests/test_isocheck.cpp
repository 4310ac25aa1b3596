#include "doctest.h"

#include <algorithm>

#include "btc/enumeration.hpp"
#include "btc/isocheck.hpp"
#include "oracle.hpp"

using namespace btc;
using btc::testing::all_networks;
using btc::testing::permuted_copy;

TEST_CASE("mu signatures") {
  SUBCASE("trivial network") {
    auto sigs = mu_signatures(new_trivial(1));
    REQUIRE(sigs.size() == 1);
    CHECK_FALSE(sigs[0].first);
    CHECK(sigs[0].second == MuVector{1});
  }
  SUBCASE("cherry") {
    Network trivial = new_trivial(1);
    Network cherry = augment_t(trivial, 2, trivial.root(), {});
    auto sigs = mu_signatures(cherry);
    std::vector<std::pair<bool, MuVector>> expected{
        {false, {0, 1}}, {false, {1, 0}}, {false, {1, 1}}};
    std::sort(expected.begin(), expected.end());
    CHECK(sigs == expected);
  }
  SUBCASE("the two one-hybrid two-leaf networks differ in their root mu") {
    Network trivial = new_trivial(1);
    NodeId leaf = trivial.root();
    Network under1 = augment_t(trivial, 2, leaf, {leaf});  // leaf 1 below the hybrid
    Network under2 = augment_h(trivial, 2, leaf, leaf, {});  // leaf 2 below the hybrid
    MuTable t1 = compute_mu(under1);
    MuTable t2 = compute_mu(under2);
    CHECK(t1.mu[under1.root()] == MuVector{2, 1});
    CHECK(t2.mu[under2.root()] == MuVector{1, 2});
    CHECK_FALSE(isomorphic(under1, under2));
    CHECK(mu_signatures(under1) != mu_signatures(under2));
  }
}

TEST_CASE("isomorphic") {
  SUBCASE("invariant under node renumbering") {
    for (const Network& net : all_networks(3)) {
      Network copy = permuted_copy(net, 1234);
      CHECK(isomorphic(net, copy));
      CHECK(brute_force_isomorphic(net, copy));
    }
  }
  SUBCASE("level-2 networks are pairwise distinct") {
    std::vector<Network> nets = all_networks(2);
    REQUIRE(nets.size() == 3);
    for (std::size_t i = 0; i < nets.size(); ++i)
      for (std::size_t j = i + 1; j < nets.size(); ++j) {
        CHECK_FALSE(isomorphic(nets[i], nets[j]));
        CHECK_FALSE(brute_force_isomorphic(nets[i], nets[j]));
      }
  }
  SUBCASE("different label sets or hybrid counts never match") {
    Network a = new_trivial(1);
    Network b = new_trivial(2);
    CHECK_FALSE(isomorphic(a, b));
    CHECK_FALSE(brute_force_isomorphic(a, b));
  }
}

TEST_CASE("oracle agreement on every small pair") {
  std::vector<Network> nets;
  for (std::uint32_t n = 1; n <= 3; ++n)
    for (Network& net : all_networks(n)) nets.push_back(std::move(net));
  for (std::size_t i = 0; i < nets.size(); ++i) {
    for (std::size_t j = i; j < nets.size(); ++j) {
      bool fast = isomorphic(nets[i], nets[j]);
      bool slow = brute_force_isomorphic(nets[i], nets[j]);
      CHECK(fast == slow);
      if (i == j) CHECK(fast);
    }
  }
}

TEST_CASE("automorphism rigidity") {
  CHECK(brute_force_automorphism_count(new_trivial(1)) == 1);
  for (const Network& net : all_networks(3))
    CHECK(brute_force_automorphism_count(net) == 1);
}

TEST_CASE("brute force cap") {
  Network big = random_network(8, std::uint64_t{7});
  if (big.size() > 20) {
    CHECK_THROWS_AS(brute_force_isomorphic(big, big), Error);
  } else {
    Network bigger = random_network(12, std::uint64_t{7});
    REQUIRE(bigger.size() > 20);
    CHECK_THROWS_AS(brute_force_isomorphic(bigger, bigger), Error);
  }
}
