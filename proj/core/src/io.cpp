#include "btc/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "btc/isocheck.hpp"

namespace btc {

namespace {

// First label a node can reach, then the full path-count vector; distinct for
// any two children of a node, so child orders are total.
struct MuOrder {
  const MuTable& table;

  bool less(NodeId a, NodeId b) const {
    const MuVector& ma = table.mu[a];
    const MuVector& mb = table.mu[b];
    std::size_t fa = first_nonzero(ma);
    std::size_t fb = first_nonzero(mb);
    if (fa != fb) return fa < fb;
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
  }

  static std::size_t first_nonzero(const MuVector& mu) {
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (mu[i] != 0) return i;
    return mu.size();
  }
};

}  // namespace

CanonicalNames canonical_names(const Network& net) {
  MuTable table = compute_mu(net);
  MuOrder cmp{table};

  CanonicalNames out;
  out.name.assign(net.id_bound(), {});
  out.order.assign(net.id_bound(), {});

  NodeId root = net.root();
  if (root == kNoNode) fail(errc::invalid_network, "canonical naming needs a single root");

  std::vector<std::uint8_t> visited(net.id_bound(), 0);
  unsigned next_tree = 1, next_hybrid = 1;

  // Preorder DFS with canonically sorted children.
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (visited[u]) continue;
    visited[u] = 1;
    out.preorder.push_back(u);
    if (net.is_leaf(u)) {
      out.name[u] = "L" + std::to_string(net.label_of(u));
    } else if (net.is_hybrid(u)) {
      out.name[u] = "H" + std::to_string(next_hybrid++);
    } else {
      out.name[u] = "T" + std::to_string(next_tree++);
    }
    auto cs = net.children(u);
    std::vector<NodeId> ordered(cs.begin(), cs.end());
    std::sort(ordered.begin(), ordered.end(), [&cmp](NodeId a, NodeId b) { return cmp.less(a, b); });
    out.order[u] = ordered;
    for (auto it = ordered.rbegin(); it != ordered.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

namespace {

void require_valid(const Network& net) {
  ValidationReport report = validate_btc(net);
  if (!report.ok()) {
    std::string rules;
    for (const Violation& v : report.violations) {
      if (!rules.empty()) rules += ", ";
      rules += to_string(v.rule);
    }
    fail(errc::invalid_network, "network violates: " + rules);
  }
}

std::string serialize_enewick(const Network& net, const CanonicalNames& names) {
  std::string out;
  std::vector<std::uint8_t> expanded(net.id_bound(), 0);
  // Hybrid tags reuse the canonical H numbers.
  auto render = [&](auto&& self, NodeId u) -> void {
    if (net.is_leaf(u)) {
      out += std::to_string(net.label_of(u));
      return;
    }
    if (net.is_hybrid(u)) {
      if (expanded[u]) {
        out += "#" + names.name[u];
        return;
      }
      expanded[u] = 1;
      out += "(";
      self(self, names.order[u][0]);
      out += ")#" + names.name[u];
      return;
    }
    out += "(";
    for (std::size_t i = 0; i < names.order[u].size(); ++i) {
      if (i) out += ",";
      self(self, names.order[u][i]);
    }
    out += ")";
  };
  render(render, net.root());
  out += ";";
  return out;
}

std::string serialize_edgelist(const Network& net, const CanonicalNames& names) {
  std::ostringstream out;
  out << "# btc n=" << net.leaf_count() << " h=" << net.hybrid_count() << "\n";
  if (net.size() == 1) {
    out << names.name[net.root()] << "\n";
    return out.str();
  }
  for (NodeId u : names.preorder)
    for (NodeId c : names.order[u]) out << names.name[u] << " " << names.name[c] << "\n";
  return out.str();
}

// ---- parsing ----------------------------------------------------------

struct GraphBuilder {
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::uint32_t> labels;
  std::vector<char> name_kind;  // 'L', 'T', 'H', or 0 when unconstrained

  std::size_t fresh(char kind_hint, std::uint32_t label) {
    children.emplace_back();
    labels.push_back(label);
    name_kind.push_back(kind_hint);
    return children.size() - 1;
  }

  Network build() const {
    std::vector<std::size_t> indeg(children.size(), 0);
    for (const auto& cs : children)
      for (std::size_t c : cs) ++indeg[c];
    for (std::size_t u = 0; u < children.size(); ++u) {
      if (children[u].size() > 2 || indeg[u] > 2)
        fail(errc::invalid_network, "network violates: degrees (node fan exceeds 2)");
    }
    Network net;
    for (std::size_t u = 0; u < children.size(); ++u) {
      NodeId id = net.add_node();
      if (labels[u] != 0) net.set_label(id, labels[u]);
    }
    for (std::size_t u = 0; u < children.size(); ++u)
      for (std::size_t c : children[u]) net.add_arc(static_cast<NodeId>(u), static_cast<NodeId>(c));
    require_valid(net);
    for (std::size_t u = 0; u < children.size(); ++u) {
      char kind = name_kind[u];
      if (kind == 0) continue;
      NodeKind actual = net.kind(static_cast<NodeId>(u));
      bool ok = (kind == 'L' && actual == NodeKind::Leaf) ||
                (kind == 'H' && actual == NodeKind::Hybrid) ||
                (kind == 'T' && (actual == NodeKind::Root || actual == NodeKind::TreeInternal));
      if (!ok) fail(errc::invalid_network, "node name kind does not match its degrees");
    }
    return net;
  }
};

[[noreturn]] void syntax_error(std::size_t line, std::size_t col, const std::string& what) {
  fail(errc::parse_error,
       "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

struct ENewickParser {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1, col = 1;
  GraphBuilder graph;
  std::map<std::uint32_t, std::size_t> hybrids;        // tag -> node
  std::map<std::uint32_t, bool> hybrid_has_children;   // tag -> carrier seen

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' ||
                                 text[pos] == '\n'))
      advance();
  }
  char peek() {
    skip_ws();
    if (pos >= text.size()) syntax_error(line, col, "unexpected end of input");
    return text[pos];
  }
  void expect(char c) {
    if (peek() != c)
      syntax_error(line, col, std::string("expected '") + c + "'");
    advance();
  }
  std::uint32_t parse_int() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      syntax_error(line, col, "expected an integer");
    std::uint64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (value > 0xffffffffULL) syntax_error(line, col, "integer too large");
      advance();
    }
    return static_cast<std::uint32_t>(value);
  }

  std::size_t hybrid_node(std::uint32_t tag) {
    auto it = hybrids.find(tag);
    if (it != hybrids.end()) return it->second;
    std::size_t u = graph.fresh('H', 0);
    hybrids.emplace(tag, u);
    hybrid_has_children.emplace(tag, false);
    return u;
  }

  // node := '(' node (',' node)* ')' ['#H' INT] | '#H' INT | INT
  std::size_t parse_node() {
    char c = peek();
    if (c == '(') {
      advance();
      std::vector<std::size_t> kids;
      kids.push_back(parse_node());
      while (peek() == ',') {
        advance();
        kids.push_back(parse_node());
      }
      expect(')');
      skip_ws();
      if (pos < text.size() && text[pos] == '#') {
        advance();
        if (pos >= text.size() || text[pos] != 'H') syntax_error(line, col, "expected 'H' after '#'");
        advance();
        std::uint32_t tag = parse_int();
        std::size_t u = hybrid_node(tag);
        if (hybrid_has_children[tag])
          syntax_error(line, col, "hybrid #H" + std::to_string(tag) + " defined twice");
        hybrid_has_children[tag] = true;
        for (std::size_t k : kids) graph.children[u].push_back(k);
        return u;
      }
      std::size_t u = graph.fresh('T', 0);
      graph.children[u] = std::move(kids);
      return u;
    }
    if (c == '#') {
      advance();
      if (pos >= text.size() || text[pos] != 'H') syntax_error(line, col, "expected 'H' after '#'");
      advance();
      return hybrid_node(parse_int());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint32_t label = parse_int();
      if (label == 0) syntax_error(line, col, "leaf labels are positive");
      return graph.fresh('L', label);
    }
    syntax_error(line, col, "expected '(', '#H', or a leaf label");
  }

  Network parse_document() {
    std::size_t root = parse_node();
    expect(';');
    skip_ws();
    if (pos != text.size()) syntax_error(line, col, "trailing input after ';'");
    (void)root;
    for (const auto& [tag, carried] : hybrid_has_children)
      if (!carried)
        fail(errc::parse_error, "hybrid #H" + std::to_string(tag) + " never carries its subtree");
    return graph.build();
  }
};

Network parse_enewick(std::string_view text) {
  ENewickParser parser{text};
  return parser.parse_document();
}

struct NodeName {
  char kind;
  std::uint32_t index;
};

NodeName parse_node_name(std::string_view token, std::size_t line) {
  if (token.size() < 2 || (token[0] != 'L' && token[0] != 'T' && token[0] != 'H'))
    fail(errc::parse_error,
         "line " + std::to_string(line) + ": bad node name '" + std::string(token) + "'");
  std::uint64_t value = 0;
  for (std::size_t i = 1; i < token.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(token[i])))
      fail(errc::parse_error,
           "line " + std::to_string(line) + ": bad node name '" + std::string(token) + "'");
    value = value * 10 + static_cast<std::uint64_t>(token[i] - '0');
  }
  if (value == 0 || value > 0xffffffffULL)
    fail(errc::parse_error, "line " + std::to_string(line) + ": bad node index");
  return {token[0], static_cast<std::uint32_t>(value)};
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

Network parse_edgelist(std::string_view text) {
  std::map<std::pair<char, std::uint32_t>, std::size_t> by_name;
  GraphBuilder graph;
  bool header_seen = false;
  std::uint64_t header_n = 0, header_h = 0;

  auto intern = [&](std::string_view token, std::size_t line) {
    NodeName nn = parse_node_name(token, line);
    auto key = std::make_pair(nn.kind, nn.index);
    auto it = by_name.find(key);
    if (it != by_name.end()) return it->second;
    std::size_t u = graph.fresh(nn.kind, nn.kind == 'L' ? nn.index : 0);
    by_name.emplace(key, u);
    return u;
  };

  std::size_t line_no = 0;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t end = text.find('\n', i);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(i, end - i);
    ++line_no;
    i = end + 1;
    std::vector<std::string_view> fields = split_fields(line);
    if (fields.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (fields[0].starts_with("#")) {
      if (header_seen)
        fail(errc::parse_error, "line " + std::to_string(line_no) + ": unexpected second header");
      if (fields.size() != 4 || fields[0] != "#" || fields[1] != "btc" ||
          !fields[2].starts_with("n=") || !fields[3].starts_with("h="))
        fail(errc::parse_error, "line " + std::to_string(line_no) + ": malformed header");
      header_n = std::strtoull(std::string(fields[2].substr(2)).c_str(), nullptr, 10);
      header_h = std::strtoull(std::string(fields[3].substr(2)).c_str(), nullptr, 10);
      header_seen = true;
    } else if (fields.size() == 1) {
      intern(fields[0], line_no);
    } else if (fields.size() == 2) {
      std::size_t parent = intern(fields[0], line_no);
      std::size_t child = intern(fields[1], line_no);
      graph.children[parent].push_back(child);
    } else {
      fail(errc::parse_error, "line " + std::to_string(line_no) + ": expected '<parent> <child>'");
    }
    if (end == text.size()) break;
  }
  if (!header_seen) fail(errc::parse_error, "missing '# btc' header");
  if (graph.children.empty()) fail(errc::parse_error, "document declares no nodes");
  Network net = graph.build();
  if (net.leaf_count() != header_n || net.hybrid_count() != header_h)
    fail(errc::invalid_network, "header n/h does not match the graph");
  return net;
}

}  // namespace

std::string serialize(const Network& net, Format format) {
  require_valid(net);
  CanonicalNames names = canonical_names(net);
  return format == Format::ENewick ? serialize_enewick(net, names)
                                   : serialize_edgelist(net, names);
}

Network parse(std::string_view text, Format format) {
  return format == Format::ENewick ? parse_enewick(text) : parse_edgelist(text);
}

std::vector<Network> parse_stream(std::string_view text, Format format) {
  std::vector<Network> out;
  if (format == Format::ENewick) {
    std::size_t i = 0, line_no = 0;
    while (i <= text.size()) {
      std::size_t end = text.find('\n', i);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(i, end - i);
      ++line_no;
      bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
      if (!blank) {
        try {
          out.push_back(parse_enewick(line));
        } catch (const Error& e) {
          if (e.code() == errc::parse_error) {
            std::string detail = e.what();
            std::string prefix = std::string(to_string(errc::parse_error)) + ": ";
            if (detail.rfind(prefix, 0) == 0) detail = detail.substr(prefix.size());
            fail(errc::parse_error, "input line " + std::to_string(line_no) + ": " + detail);
          }
          throw;
        }
      }
      if (end == text.size()) break;
      i = end + 1;
    }
    return out;
  }
  // Edge-list streams: documents begin at their header lines.
  std::size_t i = 0;
  std::size_t doc_start = std::string_view::npos;
  auto flush = [&](std::size_t upto) {
    if (doc_start == std::string_view::npos) return;
    out.push_back(parse_edgelist(text.substr(doc_start, upto - doc_start)));
    doc_start = std::string_view::npos;
  };
  while (i <= text.size()) {
    std::size_t end = text.find('\n', i);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(i, end - i);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] == '#') {
      flush(i);
      doc_start = i;
    }
    if (end == text.size()) break;
    i = end + 1;
  }
  flush(text.size());
  if (out.empty() && text.find_first_not_of(" \t\r\n") != std::string_view::npos)
    fail(errc::parse_error, "missing '# btc' header");
  return out;
}

namespace {

std::string format_pair_body(const Network& net, const CanonicalNames& names,
                             const FeasiblePair& pair) {
  (void)net;
  std::string s1a = names.name[pair.s1[0]];
  std::string out = "S1={";
  if (pair.kind == PairKind::H) {
    std::string s1b = names.name[pair.s1[1]];
    if (s1b < s1a) std::swap(s1a, s1b);
    out += s1a + "," + s1b;
  } else {
    out += s1a;
  }
  out += "}; S2=(";
  for (std::size_t i = 0; i < pair.s2.size(); ++i) {
    if (i) out += ",";
    out += names.name[pair.s2[i]];
  }
  out += ")";
  return out;
}

}  // namespace

std::string format_pair(const Network& net, const FeasiblePair& pair) {
  CanonicalNames names = canonical_names(net);
  std::string prefix = pair.kind == PairKind::T ? "T: " : "H: ";
  return prefix + format_pair_body(net, names, pair);
}

NodeId resolve_name(const Network& net, const CanonicalNames& names, std::string_view name) {
  for (NodeId u = 0; u < names.name.size(); ++u)
    if (net.is_live(u) && names.name[u] == name) return u;
  fail(errc::invalid_argument, "no node named '" + std::string(name) + "'");
}

FeasiblePair parse_pair(const Network& net, std::string_view text) {
  CanonicalNames names = canonical_names(net);
  std::size_t pos = 0;
  auto skip_ws = [&]() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto expect = [&](std::string_view token) {
    skip_ws();
    if (text.substr(pos, token.size()) != token)
      fail(errc::parse_error, "expected '" + std::string(token) + "' in pair spec");
    pos += token.size();
  };
  auto read_name = [&]() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])))) ++pos;
    if (pos == start) fail(errc::parse_error, "expected a node name in pair spec");
    return text.substr(start, pos - start);
  };

  skip_ws();
  if (pos >= text.size() || (text[pos] != 'T' && text[pos] != 'H'))
    fail(errc::parse_error, "pair spec must start with 'T:' or 'H:'");
  PairKind kind = text[pos] == 'T' ? PairKind::T : PairKind::H;
  ++pos;
  expect(":");
  expect("S1=");
  expect("{");
  std::vector<NodeId> s1;
  s1.push_back(resolve_name(net, names, read_name()));
  skip_ws();
  if (pos < text.size() && text[pos] == ',') {
    ++pos;
    s1.push_back(resolve_name(net, names, read_name()));
  }
  expect("}");
  expect(";");
  expect("S2=");
  expect("(");
  std::vector<NodeId> s2;
  skip_ws();
  if (pos < text.size() && text[pos] != ')') {
    s2.push_back(resolve_name(net, names, read_name()));
    skip_ws();
    while (pos < text.size() && text[pos] == ',') {
      ++pos;
      s2.push_back(resolve_name(net, names, read_name()));
      skip_ws();
    }
  }
  expect(")");
  skip_ws();
  if (pos != text.size()) fail(errc::parse_error, "trailing input in pair spec");

  if (kind == PairKind::T && s1.size() != 1)
    fail(errc::parse_error, "T pairs carry exactly one S1 node");
  if (kind == PairKind::H && s1.size() != 2)
    fail(errc::parse_error, "H pairs carry exactly two S1 nodes");
  return kind == PairKind::T ? FeasiblePair::t_pair(s1[0], std::move(s2))
                             : FeasiblePair::h_pair(s1[0], s1[1], std::move(s2));
}

std::string format_decomposition(const std::vector<DecompositionStep>& steps) {
  std::ostringstream out;
  Network net = new_trivial(1);
  std::size_t stage = 1;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    MuTable table = compute_mu(net);
    FeasiblePair pair;
    pair.kind = it->data.kind;
    auto resolve = [&](const MuRef& ref) {
      for (NodeId u = 0; u < net.id_bound(); ++u) {
        if (!net.is_live(u)) continue;
        if (net.is_hybrid(u) == ref.hybrid && table.mu[u] == ref.mu) return u;
      }
      fail(errc::invalid_argument, "unresolvable node reference");
    };
    pair.s1[0] = resolve(it->s1_refs[0]);
    if (pair.kind == PairKind::H) {
      pair.s1[1] = resolve(it->s1_refs[1]);
      if (pair.s1[1] < pair.s1[0]) std::swap(pair.s1[0], pair.s1[1]);
    }
    for (const MuRef& ref : it->s2_refs) pair.s2.push_back(resolve(ref));

    out << "N" << stage + 1 << " = " << (pair.kind == PairKind::T ? "T^-1" : "H^-1") << "(N"
        << stage << ", " << it->label << "; "
        << format_pair_body(net, canonical_names(net), pair) << ")\n";
    net = augment(net, it->label, pair);
    ++stage;
  }
  return out.str();
}

}  // namespace btc
