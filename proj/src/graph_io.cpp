#include "congestcut/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace congestcut {

namespace {
std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}
[[noreturn]] void fail(int lineno, const std::string& what) {
  throw domain_error("graph parse error at line " + std::to_string(lineno) + ": " + what);
}
}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  long m = -1;
  bool weighted = false;
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(strip_comment(line));
    if (n < 0) {
      std::string flag;
      if (!(ss >> n >> m)) {
        n = -1;
        continue;  // blank or comment-only line before the header
      }
      if (n < 0 || m < 0) fail(lineno, "negative header values");
      if (ss >> flag) {
        if (flag != "weighted") fail(lineno, "unknown header flag '" + flag + "'");
        weighted = true;
      }
      continue;
    }
    int u, v;
    if (!(ss >> u >> v)) {
      std::string rest;
      if (ss >> rest) fail(lineno, "malformed edge line");
      continue;
    }
    Weight w = 1;
    if (weighted && !(ss >> w)) fail(lineno, "missing weight");
    if (u < 0 || u >= n || v < 0 || v >= n) fail(lineno, "endpoint out of range");
    if (u == v) fail(lineno, "self-loop");
    if (w < 1) fail(lineno, "nonpositive weight");
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second) fail(lineno, "duplicate edge");
    edges.push_back({u, v, w});
  }
  if (n < 0) throw domain_error("graph parse error: missing header line");
  if (static_cast<long>(edges.size()) != m)
    throw domain_error("graph parse error: header announces " + std::to_string(m) +
                       " edges, found " + std::to_string(edges.size()));
  return Graph(n, std::move(edges), weighted);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << " " << g.m();
  if (g.weighted()) out << " weighted";
  out << "\n";
  for (const Edge& e : g.edges()) {
    out << e.u << " " << e.v;
    if (g.weighted()) out << " " << e.w;
    out << "\n";
  }
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw domain_error("cannot open output file: " + path);
  write_graph(out, g);
}

}  // namespace congestcut
