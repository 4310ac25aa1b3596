#include "doctest.h"

#include <map>
#include <set>
#include <string>

#include "btc/enumeration.hpp"
#include "btc/io.hpp"
#include "btc/isocheck.hpp"
#include "oracle.hpp"

using namespace btc;
using btc::testing::all_networks;

TEST_CASE("feasible pairs of the trivial network") {
  Network trivial = new_trivial(1);
  NodeId leaf = trivial.root();

  std::vector<FeasiblePair> capped = enumerate_feasible_pairs(trivial, 1);
  REQUIRE(capped.size() == 3);
  CHECK(capped[0] == FeasiblePair::t_pair(leaf));
  CHECK(capped[1] == FeasiblePair::t_pair(leaf, {leaf}));
  CHECK(capped[2] == FeasiblePair::h_pair(leaf, leaf));

  CHECK(enumerate_feasible_pairs(trivial, 0).size() == 1);
  CHECK(enumerate_feasible_pairs(trivial, kNoHybridCap).size() == 3);
  CHECK(count_feasible_pairs(trivial, 1) == 3);
}

TEST_CASE("every emitted pair is feasible, unique, and within the cap") {
  for (const Network& net : all_networks(3)) {
    for (std::size_t cap : {std::size_t{0}, std::size_t{1}, std::size_t{2}, kNoHybridCap}) {
      std::vector<FeasiblePair> pairs = enumerate_feasible_pairs(net, cap);
      CHECK(count_feasible_pairs(net, cap) == pairs.size());
      for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
        CHECK(pair_less(pairs[i], pairs[i + 1]));
      }
      for (const FeasiblePair& pair : pairs) {
        CHECK(pair.hybrid_delta() <= cap);
        CHECK(is_feasible(net, pair));
      }
    }
  }
}

TEST_CASE("offspring") {
  Network trivial = new_trivial(1);
  std::vector<Network> level2 = offspring(trivial);
  REQUIRE(level2.size() == 3);
  for (const Network& net : level2) {
    CHECK(net.leaf_count() == 2);
    CHECK(validate_btc(net).ok());
  }
  std::size_t level3 = 0;
  for (const Network& net : level2) level3 += offspring(net).size();
  CHECK(level3 == 66);
}

TEST_CASE("generation counts match the reference") {
  CHECK(count_networks({.n = 1}) == 1);
  CHECK(count_networks({.n = 2}) == 3);
  CHECK(count_networks({.n = 3}) == 66);
  CHECK(count_networks({.n = 4}) == 4059);
}

TEST_CASE("census by hybrid count") {
  std::map<std::uint32_t, std::uint64_t> two = count_exact(2);
  CHECK(two == std::map<std::uint32_t, std::uint64_t>{{0, 1}, {1, 2}});
  CHECK(count_exact(1) == std::map<std::uint32_t, std::uint64_t>{{0, 1}});
  std::map<std::uint32_t, std::uint64_t> four = count_exact(4);
  std::uint64_t total = 0;
  for (const auto& [h, c] : four) total += c;
  CHECK(total == 4059);

  SUBCASE("hybrid window agrees with the census") {
    for (std::uint32_t h = 0; h <= 3; ++h) {
      GenerationConfig cfg;
      cfg.n = 4;
      cfg.h_min = h;
      cfg.h_max = h;
      std::uint64_t want = four.count(h) ? four[h] : 0;
      CHECK(count_networks(cfg) == want);
    }
  }
}

TEST_CASE("the level-3 stream has no isomorphic duplicates and is complete") {
  std::vector<Network> nets = all_networks(3);
  REQUIRE(nets.size() == 66);
  std::set<std::string> canonical;
  for (const Network& net : nets) canonical.insert(serialize(net, Format::ENewick));
  CHECK(canonical.size() == 66);

  SUBCASE("matches the independent wiring search") {
    CHECK(btc::testing::brute_force_btc(2) ==
          [] {
            std::set<std::string> out;
            for (const Network& net : all_networks(2)) out.insert(serialize(net, Format::ENewick));
            return out;
          }());
    CHECK(btc::testing::brute_force_btc(3) == canonical);
  }
}

TEST_CASE("parallel generation is deterministic") {
  auto serial = [](unsigned jobs) {
    GenerationConfig cfg;
    cfg.n = 4;
    cfg.jobs = jobs;
    std::string out;
    generate_networks(cfg, [&out](const Network& net) {
      out += serialize(net, Format::ENewick);
      out += '\n';
    });
    return out;
  };
  std::string one = serial(1);
  CHECK(serial(4) == one);
  CHECK(serial(3) == one);

  GenerationConfig cfg;
  cfg.n = 4;
  cfg.jobs = 8;
  CHECK(count_networks(cfg) == 4059);
}

TEST_CASE("random networks") {
  CHECK(random_network(1, std::uint64_t{0}).size() == 1);
  CHECK(serialize(random_network(1, std::uint64_t{42}), Format::ENewick) == "1;");

  SUBCASE("deterministic per seed") {
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
      Network a = random_network(5, seed);
      Network b = random_network(5, seed);
      CHECK(serialize(a, Format::ENewick) == serialize(b, Format::ENewick));
      CHECK(validate_btc(a).ok());
    }
  }
  SUBCASE("50k samples at n=3 hit every network") {
    std::set<std::string> seen;
    SplitMix64 rng(2024);
    for (int i = 0; i < 50000; ++i)
      seen.insert(serialize(random_network(3, rng), Format::ENewick));
    CHECK(seen.size() == 66);
  }
  SUBCASE("draws are uniform over each step's feasible pairs") {
    // Expected frequency of a 3-leaf network: (1/3) / |pairs of its parent|.
    std::vector<Network> level2 = all_networks(2);
    REQUIRE(level2.size() == 3);
    std::map<std::string, double> expected;
    const int draws = 30000;
    for (const Network& parent : level2) {
      std::vector<FeasiblePair> pairs = enumerate_feasible_pairs(parent, kNoHybridCap);
      for (const FeasiblePair& pair : pairs) {
        Network child = augment(parent, 3, pair);
        expected[serialize(child, Format::ENewick)] =
            static_cast<double>(draws) / (3.0 * static_cast<double>(pairs.size()));
      }
    }
    REQUIRE(expected.size() == 66);

    std::map<std::string, int> freq;
    SplitMix64 rng(7);
    for (int i = 0; i < draws; ++i)
      freq[serialize(random_network(3, rng), Format::ENewick)] += 1;
    CHECK(freq.size() == 66);
    for (const auto& [key, want] : expected) {
      CHECK(freq[key] > 0.65 * want);
      CHECK(freq[key] < 1.35 * want);
    }
  }
}

TEST_CASE("estimates") {
  SUBCASE("exact census regime") {
    EstimateResult exact = estimate_count(3, 100, 1);
    CHECK(exact.exact);
    CHECK(exact.parents == 3);
    CHECK(exact.estimate == doctest::Approx(66.0));
  }
  SUBCASE("sampling regime lands near the truth") {
    EstimateResult est = estimate_count(5, 500, 12345);
    CHECK_FALSE(est.exact);
    CHECK(est.parents == 4059);
    CHECK(est.samples == 500);
    CHECK(est.estimate == doctest::Approx(496710.0).epsilon(0.10));
    CHECK_FALSE(est.running_means.empty());
  }
  SUBCASE("zero budget is an error") {
    CHECK_THROWS_AS(estimate_count(3, 0, 0), Error);
    try {
      estimate_count(3, 0, 0);
    } catch (const Error& e) {
      CHECK(e.code() == errc::insufficient_samples);
    }
  }
}
