#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>

#include "btc/enumeration.hpp"
#include "btc/io.hpp"
#include "btc/isocheck.hpp"
#include "btc/reduction.hpp"
#include "oracle.hpp"

using namespace btc;
using btc::testing::all_networks;
using btc::testing::fig2_chain;
using btc::testing::permuted_copy;

TEST_CASE("enewick basics") {
  CHECK(serialize(new_trivial(1), Format::ENewick) == "1;");
  CHECK(serialize(new_trivial(7), Format::ENewick) == "7;");
  Network trivial = new_trivial(1);
  Network cherry = augment_t(trivial, 2, trivial.root(), {});
  CHECK(serialize(cherry, Format::ENewick) == "(1,2);");

  CHECK(isomorphic(parse("1;", Format::ENewick), new_trivial(1)));
  CHECK(isomorphic(parse(" ( 1 , 2 ) ;", Format::ENewick), cherry));
}

TEST_CASE("edge list basics") {
  Network trivial = new_trivial(1);
  Network cherry = augment_t(trivial, 2, trivial.root(), {});
  CHECK(serialize(cherry, Format::EdgeList) == "# btc n=2 h=0\nT1 L1\nT1 L2\n");
  CHECK(serialize(new_trivial(3), Format::EdgeList) == "# btc n=1 h=0\nL3\n");
  CHECK(isomorphic(parse("# btc n=2 h=0\nT1 L1\nT1 L2\n", Format::EdgeList), cherry));
  CHECK(isomorphic(parse("# btc n=1 h=0\nL3\n", Format::EdgeList), new_trivial(3)));
}

TEST_CASE("round trips through both formats") {
  Network n6 = fig2_chain().back();
  for (Format format : {Format::ENewick, Format::EdgeList}) {
    Network back = parse(serialize(n6, format), format);
    CHECK(validate_btc(back).ok());
    CHECK(isomorphic(back, n6));
  }
  for (const Network& net : all_networks(3)) {
    CHECK(isomorphic(parse(serialize(net, Format::ENewick), Format::ENewick), net));
    CHECK(isomorphic(parse(serialize(net, Format::EdgeList), Format::EdgeList), net));
  }
}

TEST_CASE("canonical form") {
  std::set<std::string> seen;
  std::size_t count = 0;
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (const Network& net : all_networks(n)) {
      std::string text = serialize(net, Format::ENewick);
      seen.insert(text);
      ++count;
      CHECK(serialize(permuted_copy(net, 31 * count), Format::ENewick) == text);
      CHECK(serialize(permuted_copy(net, 31 * count), Format::EdgeList) ==
            serialize(net, Format::EdgeList));
    }
  }
  CHECK(seen.size() == count);  // 1 + 3 + 66 distinct strings
}

TEST_CASE("parse errors") {
  SUBCASE("syntax errors carry position") {
    CHECK_THROWS_AS(parse("(1,2;", Format::ENewick), Error);
    CHECK_THROWS_AS(parse("(1,2)", Format::ENewick), Error);
    CHECK_THROWS_AS(parse("(1,2)); ", Format::ENewick), Error);
    CHECK_THROWS_AS(parse("", Format::ENewick), Error);
    try {
      parse("(1,,2);", Format::ENewick);
    } catch (const Error& e) {
      CHECK(e.code() == errc::parse_error);
      CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
  }
  SUBCASE("semantic errors name the violated rule") {
    try {
      parse("(1,2,3);", Format::ENewick);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == errc::invalid_network);
      CHECK(std::string(e.what()).find("degrees") != std::string::npos);
    }
    // Both hybrid parents are the same node: the parent keeps no tree child.
    CHECK_THROWS_AS(parse("((1)#H1,#H1);", Format::ENewick), Error);
    // Duplicate leaf labels.
    CHECK_THROWS_AS(parse("(1,1);", Format::ENewick), Error);
    // A hybrid tag that never carries a subtree.
    CHECK_THROWS_AS(parse("(#H1,#H1);", Format::ENewick), Error);
  }
  SUBCASE("edge list headers") {
    CHECK_THROWS_AS(parse("T1 L1\nT1 L2\n", Format::EdgeList), Error);
    try {
      parse("# btc n=3 h=0\nT1 L1\nT1 L2\n", Format::EdgeList);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == errc::invalid_network);
    }
  }
  SUBCASE("serializing an unvalidated network is rejected") {
    Network net = new_trivial(1);
    split_above(net, net.root());
    CHECK_THROWS_AS(serialize(net, Format::ENewick), Error);
  }
}

TEST_CASE("streams") {
  Network trivial = new_trivial(1);
  Network cherry = augment_t(trivial, 2, trivial.root(), {});
  SUBCASE("one enewick document per line") {
    std::string text = "1;\n(1,2);\n\n(1,2);\n";
    std::vector<Network> nets = parse_stream(text, Format::ENewick);
    REQUIRE(nets.size() == 3);
    CHECK(isomorphic(nets[0], trivial));
    CHECK(isomorphic(nets[1], cherry));
  }
  SUBCASE("edge list documents split at headers") {
    std::string text = serialize(cherry, Format::EdgeList) + serialize(trivial, Format::EdgeList);
    std::vector<Network> nets = parse_stream(text, Format::EdgeList);
    REQUIRE(nets.size() == 2);
    CHECK(isomorphic(nets[0], cherry));
    CHECK(isomorphic(nets[1], trivial));
  }
}

TEST_CASE("pair text") {
  std::vector<Network> chain = fig2_chain();
  Reduction red = reduce(chain[5], chain[5].find_leaf(6));
  CHECK(format_pair(red.network, red.data) == "H: S1={T1,T1}; S2=(L1)");

  FeasiblePair parsed = parse_pair(red.network, "H: S1={T1,T1}; S2=(L1)");
  CHECK(parsed == red.data);

  Network trivial = new_trivial(1);
  FeasiblePair t = parse_pair(trivial, "T: S1={L1}; S2=()");
  CHECK(t == FeasiblePair::t_pair(trivial.root()));
  CHECK(format_pair(trivial, t) == "T: S1={L1}; S2=()");

  CHECK_THROWS_AS(parse_pair(trivial, "T: S1={L9}; S2=()"), Error);
  CHECK_THROWS_AS(parse_pair(trivial, "T: S1={L1,L1}; S2=()"), Error);
  CHECK_THROWS_AS(parse_pair(trivial, "X: S1={L1}; S2=()"), Error);
}

TEST_CASE("decomposition text replays the construction chain") {
  std::vector<Network> chain = fig2_chain();
  std::string text = format_decomposition(decompose(chain[5]));
  CHECK(text.find("N2 = T^-1(N1, 2; S1={L1}; S2=())") != std::string::npos);
  CHECK(text.find("N4 = H^-1(N3, 4;") != std::string::npos);
  CHECK(text.find("N6 = H^-1(N5, 6; S1={T1,T1}; S2=(L1))") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("random network round trips") {
  for (std::uint32_t n : {5u, 8u}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      Network net = random_network(n, seed);
      CHECK(isomorphic(parse(serialize(net, Format::ENewick), Format::ENewick), net));
      CHECK(isomorphic(parse(serialize(net, Format::EdgeList), Format::EdgeList), net));
    }
  }
}
