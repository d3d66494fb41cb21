#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "otp/error.hpp"
#include "otp/graph.hpp"

namespace otp {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t b = 0;
  while (b < rest.size() && is_blank(rest[b])) ++b;
  std::size_t e = b;
  while (e < rest.size() && !is_blank(rest[e])) ++e;
  std::string_view tok = rest.substr(b, e - b);
  rest.remove_prefix(e);
  return tok;
}

bool parse_id(std::string_view tok, Node& out) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return false;
  if (v < 0 || v >= static_cast<long long>(INT32_MAX)) return false;
  out = static_cast<Node>(v);
  return true;
}

}  // namespace

Graph read_edge_list(std::istream& in, EdgeListStats* stats) {
  EdgeListStats local;
  std::vector<Edge> edges;
  Node max_id = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest(line);
    std::string_view first = next_token(rest);
    if (first.empty() || first.front() == '#') continue;
    std::string_view second = next_token(rest);
    std::string_view extra = next_token(rest);
    Node u, v;
    if (second.empty() || !extra.empty() || !parse_id(first, u) || !parse_id(second, v)) {
      throw ParseError("malformed edge line '" + line + "'", lineno);
    }
    ++local.lines;
    max_id = std::max({max_id, u, v});
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    edges.push_back({u, v});
  }
  if (in.bad()) throw IoError("read failure");
  if (local.lines == 0) throw IoError("edge list contains no edges");
  Graph g(max_id + 1, edges);
  local.duplicates_collapsed = edges.size() - g.edge_count();
  if (stats) *stats = local;
  return g;
}

Graph load_edge_list(const std::filesystem::path& path, EdgeListStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_edge_list(in, stats);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_edge_list(g, out);
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace otp
