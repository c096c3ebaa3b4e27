#include "sparselocal/edgelist_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sparselocal {

void write_edgelist(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
  if (g.arrival()) {
    out << "#arrival\n";
    const auto& rank = *g.arrival();
    std::vector<int> by_rank(rank.size());
    for (int v = 0; v < g.num_vertices(); ++v) by_rank[rank[v]] = v;
    for (int v : by_rank) out << v << '\n';
  }
  if (!out) throw std::runtime_error("write_edgelist: stream failure");
}

Graph read_edgelist(std::istream& in) {
  auto next_line = [&in](std::string& line) -> bool {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  std::string line;
  if (!next_line(line)) throw std::runtime_error("read_edgelist: empty input");
  long long n = -1, m = -1;
  {
    std::istringstream ss(line);
    std::string junk;
    if (!(ss >> n >> m) || (ss >> junk)) throw std::runtime_error("read_edgelist: malformed header");
  }
  if (n < 0 || m < 0) throw std::runtime_error("read_edgelist: negative header counts");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(line)) throw std::runtime_error("read_edgelist: fewer edges than header claims");
    std::istringstream ss(line);
    long long u, v;
    std::string junk;
    if (!(ss >> u >> v) || (ss >> junk)) throw std::runtime_error("read_edgelist: malformed edge line");
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::runtime_error("read_edgelist: edge endpoint out of range");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  std::optional<std::vector<int>> arrival;
  if (next_line(line)) {
    std::string stripped = line;
    stripped.erase(stripped.find_last_not_of(" \t\r") + 1);
    stripped.erase(0, stripped.find_first_not_of(" \t"));
    if (stripped != "#arrival")
      throw std::runtime_error("read_edgelist: unexpected content after edges: " + stripped);
    std::vector<int> rank(static_cast<std::size_t>(n), -1);
    for (long long r = 0; r < n; ++r) {
      if (!next_line(line)) throw std::runtime_error("read_edgelist: truncated arrival section");
      std::istringstream ss(line);
      long long v;
      std::string junk;
      if (!(ss >> v) || (ss >> junk)) throw std::runtime_error("read_edgelist: malformed arrival line");
      if (v < 0 || v >= n) throw std::runtime_error("read_edgelist: arrival id out of range");
      if (rank[v] != -1) throw std::runtime_error("read_edgelist: repeated vertex in arrival section");
      rank[v] = static_cast<int>(r);
    }
    if (next_line(line)) throw std::runtime_error("read_edgelist: trailing content");
    arrival = std::move(rank);
  }
  try {
    return Graph(static_cast<int>(n), edges, std::move(arrival));  // validates loops/dups
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("read_edgelist: ") + e.what());
  }
}

void save_edgelist(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_edgelist: cannot open " + path);
  write_edgelist(out, g);
}

Graph load_edgelist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_edgelist: cannot open " + path);
  return read_edgelist(in);
}

}  // namespace sparselocal
