#include "doctest.h"

#include <map>

#include "btc/counting.hpp"
#include "btc/enumeration.hpp"
#include "oracle.hpp"

using namespace btc;
using btc::testing::all_networks;

TEST_CASE("p_aux") {
  for (long long n = 1; n <= 6; ++n)
    for (long long h = 0; h < n; ++h) {
      PAux p = p_aux(n, h, 0);
      CHECK(p.p0 == 1);
      CHECK(p.p1 == 0);
      CHECK(p.p == 1);
    }
  PAux one = p_aux(1, 0, 1);
  CHECK(one.p0 == 0);
  CHECK(one.p1 == 1);
  CHECK(one.p == 1);
  PAux five = p_aux(5, 1, 1);
  CHECK(five.p0 == 6);
  CHECK(five.p1 == 1);
  CHECK(five.p == 7);
  PAux neg = p_aux(4, 0, -2);
  CHECK(neg.p == 0);

  SUBCASE("product form equals the factorial form where the latter exists") {
    auto factorial = [](long long v) {
      BigCount out = 1;
      for (long long i = 2; i <= v; ++i) out *= i;
      return out;
    };
    for (long long n = 1; n <= 8; ++n) {
      for (long long h = 0; h < n; ++h) {
        for (long long k = 0; k <= n - h - 1; ++k) {
          PAux p = p_aux(n, h, k);
          BigCount pow2k = BigCount(1) << k;
          CHECK(p.p0 == pow2k * factorial(n - h - 1) / factorial(n - h - k - 1));
          if (k >= 1 && n - h - k >= 0) {
            BigCount pow2k1 = BigCount(1) << (k - 1);
            CHECK(p.p1 == BigCount(k) * pow2k1 * factorial(n - h - 1) / factorial(n - h - k));
          }
        }
      }
    }
  }
}

TEST_CASE("f_h and f_t closed forms") {
  CHECK(f_h(1, 0, 0) == 1);
  CHECK(f_t(1, 0, 0) == 1);
  CHECK(f_t(1, 0, 1) == 1);
  CHECK(f_h(2, 1, 2) == 0);  // p vanishes
  for (long long k = 0; k <= 4; ++k)
    if (p_aux(3, 1, k).p == 0) CHECK(f_h(3, 1, k) == 0);
  CHECK(f_t_parts(4, 0, 2).hybrid_family == 0);  // no hybrids, no 3h family

  SUBCASE("hand recurrence values") {
    BoundTable table(3);
    CHECK(table.at(2, 0) == 1);
    CHECK(table.at(2, 1) == 2);
    CHECK(table.row_total(2) == 3);
    CHECK(table.at(3, 0) == 3);
    CHECK(table.at(3, 1) == 23);
    CHECK(table.at(3, 2) == 59);
  }
}

TEST_CASE("relaxed enumeration matches the closed forms exactly") {
  std::vector<Network> nets;
  for (std::uint32_t n = 1; n <= 3; ++n)
    for (Network& net : all_networks(n)) nets.push_back(std::move(net));
  for (const Network& net : nets) {
    long long n = static_cast<long long>(net.leaf_count());
    long long h = static_cast<long long>(net.hybrid_count());
    std::map<std::pair<int, std::size_t>, BigCount> histogram;
    for (const FeasiblePair& pair : enumerate_relaxed_pairs(net, kNoHybridCap))
      histogram[{pair.kind == PairKind::T ? 0 : 1, pair.s2.size()}] += 1;
    for (long long k = 0; k <= n + 2; ++k) {
      auto t_key = std::make_pair(0, static_cast<std::size_t>(k));
      auto h_key = std::make_pair(1, static_cast<std::size_t>(k));
      BigCount t_actual = histogram.count(t_key) ? histogram[t_key] : 0;
      BigCount h_actual = histogram.count(h_key) ? histogram[h_key] : 0;
      CHECK(t_actual == f_t(n, h, k));
      CHECK(h_actual == f_h(n, h, k));
    }
  }
}

TEST_CASE("per-network dominance of the closed forms") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (const Network& net : all_networks(n)) {
      long long h = static_cast<long long>(net.hybrid_count());
      std::map<std::pair<int, std::size_t>, std::uint64_t> histogram;
      for (const FeasiblePair& pair : enumerate_feasible_pairs(net, kNoHybridCap))
        histogram[{pair.kind == PairKind::T ? 0 : 1, pair.s2.size()}] += 1;
      for (const auto& [key, count] : histogram) {
        BigCount bound = key.first == 0 ? f_t(n, h, static_cast<long long>(key.second))
                                        : f_h(n, h, static_cast<long long>(key.second));
        CHECK(bound >= count);
      }
    }
  }
}

TEST_CASE("bound table reproduces the reference column") {
  BoundTable table(10);
  const char* expected[] = {
      "1",
      "3",
      "85",
      "7442",
      "1317098",
      "387405870",
      "169781857790",
      "103409407515286",
      "83400205845281275",
      "85947517732640544027",
  };
  for (std::uint32_t n = 1; n <= 10; ++n) CHECK(table.row_total(n).str() == expected[n - 1]);
  CHECK(bound_total(5) == BigCount("1317098"));
  CHECK(bound_total(1) == 1);
}

TEST_CASE("dominance against exact counts") {
  BoundTable table(4);
  for (std::uint32_t n = 1; n <= 4; ++n) {
    auto census = count_exact(n);
    std::uint64_t total = 0;
    for (const auto& [h, c] : census) {
      CHECK(table.at(n, h) >= c);
      total += c;
    }
    CHECK(table.row_total(n) >= total);
    if (n <= 2) CHECK(table.row_total(n) == total);
  }
}
