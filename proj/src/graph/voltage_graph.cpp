#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>

#include "zeta_cover/error.hpp"
#include "zeta_cover/graph.hpp"

namespace zeta_cover {

namespace {

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(
    std::size_t n, const std::vector<Graph::Edge>& edges) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].push_back({edges[i].v, i});
    if (edges[i].u != edges[i].v) adj[edges[i].v].push_back({edges[i].u, i});
  }
  return adj;
}

}  // namespace

bool Graph::is_connected() const {
  if (vertex_count == 0) return false;
  const auto adj = adjacency(vertex_count, edges);
  std::vector<bool> seen(vertex_count, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (const auto& [y, e] : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == vertex_count;
}

Graph cycle_graph(std::size_t n) {
  Graph g{n, {}};
  if (n == 1) {
    g.edges.push_back({0, 0});
  } else {
    for (std::size_t i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
  }
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.edges.push_back({i, j});
  return g;
}

TwistParameter::TwistParameter(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  theta_ = r;
}

VoltageGraph::VoltageGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ == 0)
    throw Error(ErrorKind::InvalidArgument, "VoltageGraph: vertex_count must be >= 1");
  for (const auto& e : edges_)
    if (e.u >= vertex_count_ || e.v >= vertex_count_)
      throw Error(ErrorKind::InvalidArgument, "VoltageGraph: edge endpoint out of range");

  // BFS forest; tree edges fix the potential, every other edge closes a cycle.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(vertex_count_);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    adj[edges_[i].u].push_back({edges_[i].v, i});
    if (edges_[i].u != edges_[i].v) adj[edges_[i].v].push_back({edges_[i].u, i});
  }
  potential_.assign(vertex_count_, 0);
  std::vector<bool> seen(vertex_count_, false);
  std::vector<bool> tree_edge(edges_.size(), false);
  std::size_t components = 0;
  for (std::size_t root = 0; root < vertex_count_; ++root) {
    if (seen[root]) continue;
    ++components;
    seen[root] = true;
    std::queue<std::size_t> queue;
    queue.push(root);
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop();
      for (const auto& [y, idx] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = true;
        tree_edge[idx] = true;
        const auto& e = edges_[idx];
        // Choose the potential so that r + p[u] - p[v] = 0 on this edge.
        if (e.u == x) {
          potential_[y] = potential_[x] + e.voltage;
        } else {
          potential_[y] = potential_[x] - e.voltage;
        }
        queue.push(y);
      }
    }
  }
  connected_ = components == 1;

  std::int64_t g = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (tree_edge[i]) continue;
    const auto& e = edges_[i];
    const std::int64_t net = e.voltage + potential_[e.u] - potential_[e.v];
    g = std::gcd(g, net < 0 ? -net : net);
  }
  cycle_gcd_ = g;
}

Graph VoltageGraph::underlying() const {
  Graph g{vertex_count_, {}};
  g.edges.reserve(edges_.size());
  for (const auto& e : edges_) g.edges.push_back({e.u, e.v});
  return g;
}

VoltageGraph VoltageGraph::gauge_reduced() const {
  std::vector<Edge> reduced = edges_;
  for (auto& e : reduced) e.voltage = e.voltage + potential_[e.u] - potential_[e.v];
  return VoltageGraph(vertex_count_, std::move(reduced));
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_int(std::string_view tok, std::size_t line_no) {
  T value{};
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_no) + ": bad integer '" + std::string(tok) + "'");
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

VoltageGraph load_graph(std::string_view text, LoadOptions options) {
  std::optional<std::size_t> count;
  std::vector<VoltageGraph::Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (tokens[0] == "v") {
      if (tokens.size() != 2)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'v <count>'");
      if (count)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": duplicate 'v' record");
      count = parse_int<std::size_t>(tokens[1], line_no);
      if (*count == 0)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": vertex count must be >= 1");
    } else if (tokens[0] == "e") {
      if (tokens.size() != 4)
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line_no) + ": expected 'e <u> <v> <voltage>'");
      edges.push_back({parse_int<std::size_t>(tokens[1], line_no),
                       parse_int<std::size_t>(tokens[2], line_no),
                       parse_int<std::int64_t>(tokens[3], line_no)});
    } else {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": unknown record '" +
                                             std::string(tokens[0]) + "'");
    }
  }
  if (!count) throw Error(ErrorKind::ParseError, "missing 'v <count>' record");
  for (const auto& e : edges)
    if (e.u >= *count || e.v >= *count)
      throw Error(ErrorKind::ParseError, "edge endpoint out of range");

  VoltageGraph g(*count, std::move(edges));
  if (!g.connected()) throw Error(ErrorKind::Disconnected, "graph is disconnected");
  if (!options.allow_nonsurjective && g.cycle_gcd() != 1)
    throw Error(ErrorKind::NonSurjective,
                "cycle voltages have gcd " + std::to_string(g.cycle_gcd()) +
                    "; the voltage map is not onto Z",
                g.cycle_gcd());
  return g;
}

VoltageGraph load_graph_file(const std::string& path, LoadOptions options) {
  return load_graph(read_file(path), options);
}

CoverGraph::CoverGraph(const VoltageGraph& base, std::size_t degree)
    : base_(base), degree_(degree) {
  if (degree == 0) throw Error(ErrorKind::InvalidArgument, "cover degree must be >= 1");
  const auto n = static_cast<std::int64_t>(degree);
  graph_.vertex_count = degree * base.vertex_count();
  graph_.edges.reserve(degree * base.edges().size());
  for (std::size_t k = 0; k < degree; ++k) {
    for (const auto& e : base.edges()) {
      const auto target = ((static_cast<std::int64_t>(k) + e.voltage) % n + n) % n;
      graph_.edges.push_back({index(e.u, k), index(e.v, static_cast<std::size_t>(target))});
    }
  }
}

std::size_t CoverGraph::deck_shift(std::size_t vertex) const noexcept {
  const std::size_t nv = base_.vertex_count();
  return index(vertex % nv, vertex / nv + 1);
}

bool CoverGraph::deck_shift_is_automorphism() const {
  auto normalized = [](std::size_t a, std::size_t b) { return std::minmax(a, b); };
  std::vector<std::pair<std::size_t, std::size_t>> original, shifted;
  for (const auto& e : graph_.edges) {
    original.push_back(normalized(e.u, e.v));
    shifted.push_back(normalized(deck_shift(e.u), deck_shift(e.v)));
  }
  std::sort(original.begin(), original.end());
  std::sort(shifted.begin(), shifted.end());
  return original == shifted;
}

CoverGraph build_cyclic_cover(const VoltageGraph& base, std::size_t degree) {
  CoverGraph cover(base, degree);
  if (!cover.deck_shift_is_automorphism())
    throw Error(ErrorKind::InvalidArgument, "deck shift failed to preserve the lifted edges");
  return cover;
}

}  // namespace zeta_cover
