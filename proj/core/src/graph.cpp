#include "grepair/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "grepair/error.hpp"

namespace grepair {

namespace {

void validate_lists(const std::vector<std::vector<Vertex>>& adj, int n, const char* what) {
  for (int v = 1; v <= n; ++v) {
    Vertex prev = 0;
    for (Vertex u : adj[v]) {
      if (u < 1 || u > n) throw ParameterError(std::string(what) + ": neighbor out of range");
      if (u == v) throw ParameterError(std::string(what) + ": self-loop at vertex " + std::to_string(v));
      if (u <= prev) throw ParameterError(std::string(what) + ": unsorted or duplicate neighbor at vertex " + std::to_string(v));
      prev = u;
    }
  }
}

}  // namespace

SparseGraph SparseGraph::undirected(int n, std::int64_t m_bound, const EdgeList& edges,
                                    bool allow_excess_edges) {
  if (n < 1) throw ParameterError("graph needs at least one vertex");
  SparseGraph g;
  g.n_ = n;
  g.directed_ = false;
  g.adj_.assign(n + 1, {});
  for (auto [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n) throw ParameterError("edge endpoint out of range");
    if (u == v) throw ParameterError("self-loop rejected");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  std::int64_t count = 0;
  for (int v = 1; v <= n; ++v) {
    auto& list = g.adj_[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw ParameterError("parallel edge rejected at vertex " + std::to_string(v));
    count += static_cast<std::int64_t>(list.size());
  }
  g.edge_count_ = count / 2;
  g.m_bound_ = m_bound;
  if (m_bound < n) throw ParameterError("edge budget below vertex count");
  if (!allow_excess_edges && g.edge_count_ > m_bound)
    throw ParameterError("edge count exceeds edge budget");
  return g;
}

SparseGraph SparseGraph::directed(int n, std::int64_t m_bound, const EdgeList& arcs,
                                  bool allow_excess_edges) {
  if (n < 1) throw ParameterError("graph needs at least one vertex");
  SparseGraph g;
  g.n_ = n;
  g.directed_ = true;
  g.adj_.assign(n + 1, {});
  g.in_adj_.assign(n + 1, {});
  for (auto [u, v] : arcs) {
    if (u < 1 || u > n || v < 1 || v > n) throw ParameterError("arc endpoint out of range");
    if (u == v) throw ParameterError("self-loop rejected");
    g.adj_[u].push_back(v);
    g.in_adj_[v].push_back(u);
  }
  std::int64_t count = 0;
  for (int v = 1; v <= n; ++v) {
    auto& out = g.adj_[v];
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
      throw ParameterError("parallel arc rejected at vertex " + std::to_string(v));
    std::sort(g.in_adj_[v].begin(), g.in_adj_[v].end());
    count += static_cast<std::int64_t>(out.size());
  }
  g.edge_count_ = count;
  g.m_bound_ = m_bound;
  if (m_bound < n) throw ParameterError("edge budget below vertex count");
  if (!allow_excess_edges && g.edge_count_ > m_bound)
    throw ParameterError("arc count exceeds edge budget");
  return g;
}

void SparseGraph::check_vertex(Vertex v) const {
  if (v < 1 || v > n_) throw QueryViolation("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n_));
}

std::span<const Vertex> SparseGraph::neighbors(Vertex v) const {
  if (directed_) throw WrongGraphKind("undirected adjacency requested on a digraph");
  check_vertex(v);
  return adj_[v];
}

std::span<const Vertex> SparseGraph::out_neighbors(Vertex v) const {
  if (!directed_) throw WrongGraphKind("out-adjacency requested on an undirected graph");
  check_vertex(v);
  return adj_[v];
}

std::span<const Vertex> SparseGraph::in_neighbors(Vertex v) const {
  if (!directed_) throw WrongGraphKind("in-adjacency requested on an undirected graph");
  check_vertex(v);
  return in_adj_[v];
}

bool SparseGraph::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

EdgeList SparseGraph::edges() const {
  EdgeList out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (int v = 1; v <= n_; ++v)
    for (Vertex u : adj_[v])
      if (directed_ || u > v) out.emplace_back(v, u);
  return out;
}

GraphDistance graph_distance(const SparseGraph& a, const SparseGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_bound() != b.edge_bound() ||
      a.is_directed() != b.is_directed())
    throw IncompatibleGraphs("graph_distance requires equal n, edge budget, and kind");
  std::int64_t differing = 0;
  for (int v = 1; v <= a.vertex_count(); ++v) {
    auto la = a.is_directed() ? a.out_neighbors(v) : a.neighbors(v);
    auto lb = b.is_directed() ? b.out_neighbors(v) : b.neighbors(v);
    std::size_t i = 0, j = 0;
    while (i < la.size() || j < lb.size()) {
      if (j == lb.size() || (i < la.size() && la[i] < lb[j])) {
        if (a.is_directed() || la[i] > v) ++differing;
        ++i;
      } else if (i == la.size() || lb[j] < la[i]) {
        if (a.is_directed() || lb[j] > v) ++differing;
        ++j;
      } else {
        ++i;
        ++j;
      }
    }
  }
  return GraphDistance{differing, a.edge_bound()};
}

std::string serialize_graph(const SparseGraph& g) {
  std::string out;
  out += std::to_string(g.vertex_count());
  out += ' ';
  out += std::to_string(g.edge_bound());
  out += ' ';
  out += g.is_directed() ? '1' : '0';
  out += '\n';
  for (int v = 1; v <= g.vertex_count(); ++v) {
    out += std::to_string(v);
    out += ':';
    auto list = g.is_directed() ? g.out_neighbors(v) : g.neighbors(v);
    for (Vertex u : list) {
      out += ' ';
      out += std::to_string(u);
    }
    out += '\n';
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& why) {
  throw ParseError("line " + std::to_string(line) + ": " + why);
}

std::int64_t parse_int(std::string_view token, int line, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    parse_fail(line, std::string("bad ") + what + " '" + std::string(token) + "'");
  return value;
}

}  // namespace

SparseGraph parse_graph(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) parse_fail(1, "empty input");

  std::istringstream header{std::string(lines[0])};
  std::string tok_n, tok_m, tok_d, extra;
  header >> tok_n >> tok_m >> tok_d;
  if (tok_d.empty() || (header >> extra)) parse_fail(1, "header must be 'n m_bound d'");
  int n = static_cast<int>(parse_int(tok_n, 1, "vertex count"));
  std::int64_t m_bound = parse_int(tok_m, 1, "edge budget");
  std::int64_t d = parse_int(tok_d, 1, "direction flag");
  if (d != 0 && d != 1) parse_fail(1, "direction flag must be 0 or 1");
  if (n < 1) parse_fail(1, "vertex count must be positive");
  if (static_cast<int>(lines.size()) != n + 1)
    parse_fail(static_cast<int>(lines.size()), "expected " + std::to_string(n) + " adjacency lines");

  EdgeList pairs;
  for (int v = 1; v <= n; ++v) {
    int line_no = v + 1;
    std::string_view line = lines[v];
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) parse_fail(line_no, "missing ':'");
    if (parse_int(line.substr(0, colon), line_no, "vertex label") != v)
      parse_fail(line_no, "expected adjacency line for vertex " + std::to_string(v));
    std::istringstream rest{std::string(line.substr(colon + 1))};
    std::string tok;
    Vertex prev = 0;
    while (rest >> tok) {
      Vertex u = static_cast<Vertex>(parse_int(tok, line_no, "neighbor"));
      if (u < 1 || u > n) parse_fail(line_no, "neighbor out of range");
      if (u == v) parse_fail(line_no, "self-loop");
      if (u <= prev) parse_fail(line_no, "neighbors must be strictly ascending");
      prev = u;
      if (d == 1 || u > v) pairs.emplace_back(v, u);
      if (d == 0 && u < v) pairs.emplace_back(u, v);  // checked for symmetry below
    }
  }

  try {
    if (d == 1) return SparseGraph::directed(n, m_bound, pairs);
    // Undirected: every edge was recorded from both endpoint lines, so each
    // unordered pair must occur exactly twice.
    std::sort(pairs.begin(), pairs.end());
    EdgeList unique_pairs;
    for (std::size_t i = 0; i < pairs.size();) {
      if (i + 1 >= pairs.size() || pairs[i + 1] != pairs[i])
        throw ParseError("edge {" + std::to_string(pairs[i].first) + "," + std::to_string(pairs[i].second) +
                         "} listed for only one endpoint");
      if (i + 2 < pairs.size() && pairs[i + 2] == pairs[i])
        throw ParseError("duplicate edge");
      unique_pairs.push_back(pairs[i]);
      i += 2;
    }
    return SparseGraph::undirected(n, m_bound, unique_pairs);
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  }
}

SparseGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

void save_graph(const SparseGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << serialize_graph(g);
  if (!out) throw ParseError("write failed for " + path.string());
}

}  // namespace grepair
