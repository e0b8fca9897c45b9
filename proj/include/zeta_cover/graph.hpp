#pragma once

// Voltage graphs, their cyclic covers, and the plain / twisted / bundle
// Laplacians built from them.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "zeta_cover/numerics.hpp"

namespace zeta_cover {

/// Plain undirected multigraph; loops allowed.
struct Graph {
  struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
  };
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;

  bool is_connected() const;
};

Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);

/// Angle of the character, stored as its representative in [0, 2pi).
class TwistParameter {
 public:
  TwistParameter() = default;
  explicit TwistParameter(double theta);
  double value() const noexcept { return theta_; }

 private:
  double theta_ = 0.0;
};

/// Base graph whose integer edge labels define the homomorphism to Z.
class VoltageGraph {
 public:
  struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    std::int64_t voltage = 0;  // read in the u -> v orientation
  };

  /// Validates vertex ids and computes connectivity, the tree potential and
  /// the cycle-voltage gcd. Does not reject disconnected or non-surjective
  /// input; see load_graph for the enforcing entry point.
  VoltageGraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool connected() const noexcept { return connected_; }
  /// gcd of net voltages over a cycle basis; 0 when every cycle has net voltage 0.
  std::int64_t cycle_gcd() const noexcept { return cycle_gcd_; }
  bool surjective() const noexcept { return connected_ && cycle_gcd_ == 1; }

  /// Path sums of voltages along a BFS spanning tree from vertex 0 (per
  /// component). Edge (u, v, r) has net voltage r + potential[u] - potential[v],
  /// which vanishes on tree edges.
  const std::vector<std::int64_t>& potential() const noexcept { return potential_; }

  Graph underlying() const;

  /// Same graph with voltages replaced by their gauge-reduced values.
  VoltageGraph gauge_reduced() const;

 private:
  std::size_t vertex_count_;
  std::vector<Edge> edges_;
  bool connected_ = false;
  std::int64_t cycle_gcd_ = 0;
  std::vector<std::int64_t> potential_;
};

struct LoadOptions {
  bool allow_nonsurjective = false;  // diagnostic bypass
};

/// Parses the edge-list format (`# comment`, `v <count>`, `e <u> <v> <voltage>`).
/// Throws ParseError, Disconnected, or NonSurjective (detail = gcd).
VoltageGraph load_graph(std::string_view text, LoadOptions options = {});
VoltageGraph load_graph_file(const std::string& path, LoadOptions options = {});

/// N-sheeted cyclic cover. Vertex (x, k) has index k * |V| + x.
class CoverGraph {
 public:
  CoverGraph(const VoltageGraph& base, std::size_t degree);

  const VoltageGraph& base() const noexcept { return base_; }
  std::size_t degree() const noexcept { return degree_; }
  const Graph& graph() const noexcept { return graph_; }

  std::size_t index(std::size_t base_vertex, std::size_t sheet) const noexcept {
    return (sheet % degree_) * base_.vertex_count() + base_vertex;
  }
  /// Image of a cover vertex under the deck generator (x, k) -> (x, k + 1).
  std::size_t deck_shift(std::size_t vertex) const noexcept;

  /// True when the deck shift maps the lifted edge multiset onto itself.
  bool deck_shift_is_automorphism() const;

 private:
  VoltageGraph base_;
  std::size_t degree_;
  Graph graph_;
};

/// Requires N >= 1 (InvalidArgument). Surjectivity is checked by load_graph, so a
/// non-surjective base built through the bypass yields a split cover.
CoverGraph build_cyclic_cover(const VoltageGraph& base, std::size_t degree);

/// L = D - A. Loops add 2 to the degree and 2 to the adjacency diagonal, so cancel.
HermitianMatrix laplacian(const Graph& g);
IntegerMatrix integer_laplacian(const Graph& g);

/// Delta_theta: edge (u, v, r) puts -e^{-i theta r} at (u, v), -e^{+i theta r}
/// at (v, u), +1 on each endpoint's diagonal; a loop adds 2 - 2 cos(r theta).
HermitianMatrix twisted_laplacian(const VoltageGraph& g, TwistParameter theta);

/// d/dtheta of twisted_laplacian (entrywise).
HermitianMatrix twisted_laplacian_derivative(const VoltageGraph& g, TwistParameter theta);

/// log det Delta_theta computed without forming the tiny bottom eigenvalue by
/// subtraction: gauge to the spanning tree, split off the constant vector,
/// and take a Schur complement. Accurate as theta -> 0. Returns -inf at
/// theta = 0 (mod 2pi).
double log_det_twisted(const VoltageGraph& g, double theta);

/// Unitary transport along the deck generator.
class Monodromy {
 public:
  /// Throws NonUnitary if ||U^H U - I||_F > 1e-12.
  Monodromy(std::size_t rank, std::vector<Complex> entries);
  static Monodromy diagonal(std::span<const double> angles);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<Complex>& entries() const noexcept { return entries_; }
  Complex operator()(std::size_t i, std::size_t j) const { return entries_[i * rank_ + j]; }

  /// Eigenvalue angles in [0, 2pi), ascending.
  const std::vector<double>& eigen_angles() const noexcept { return angles_; }
  /// All eigenvalue angles pairwise distinct (circular distance > 1e-8).
  bool simple() const noexcept { return simple_; }

  /// U^k; negative k uses the adjoint.
  std::vector<Complex> power(std::int64_t k) const;

 private:
  std::size_t rank_;
  std::vector<Complex> entries_;
  std::vector<double> angles_;
  bool simple_ = false;
};

/// Monodromy file: `n <rank>` followed by rank rows of `<re>,<im>` entries,
/// or the shorthand `diag <phi1> <phi2> ...`.
Monodromy load_monodromy(std::string_view text);
Monodromy load_monodromy_file(const std::string& path);

/// (n |V|)-dimensional Laplacian of the flat bundle twisted by theta. Vertex x,
/// channel c maps to index x * n + c.
HermitianMatrix bundle_twisted_laplacian(const VoltageGraph& g, const Monodromy& m,
                                         TwistParameter theta);
HermitianMatrix bundle_twisted_laplacian_derivative(const VoltageGraph& g, const Monodromy& m,
                                                    TwistParameter theta);

/// Kirchhoff count via the reduced integer Laplacian; loops dropped. 0 if disconnected.
mpz_class spanning_tree_count(const Graph& g);

/// Product of nonzero Laplacian eigenvalues computed exactly as the sum of the
/// (|V|-1)-principal minors of the integer Laplacian.
mpz_class integer_det_prime(const Graph& g);

/// e^{-t Delta_inf}((x, 0), (y, m)) by Fourier inversion over the twist angle.
/// The integrand is analytic and periodic, so the trapezoid rule is refined by
/// doubling until successive estimates agree within tol / 10.
double infinite_cover_heat_kernel(const VoltageGraph& g, double t, std::size_t x, std::size_t y,
                                  std::int64_t m, double tol);

}  // namespace zeta_cover
