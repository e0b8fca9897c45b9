#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>

#include "zeta_cover/error.hpp"
#include "zeta_cover/graph.hpp"

namespace zeta_cover {

namespace {

using MatrixXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

MatrixXc as_eigen(std::size_t n, const std::vector<Complex>& entries) {
  MatrixXc m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entries[i * n + j];
  return m;
}

std::vector<Complex> from_eigen(const MatrixXc& m) {
  return std::vector<Complex>(m.data(), m.data() + m.size());
}

double circular_distance(double a, double b) {
  const double d = std::abs(std::remainder(a - b, kTwoPi));
  return d;
}

}  // namespace

Monodromy::Monodromy(std::size_t rank, std::vector<Complex> entries)
    : rank_(rank), entries_(std::move(entries)) {
  if (rank_ == 0) throw Error(ErrorKind::InvalidArgument, "monodromy rank must be >= 1");
  if (entries_.size() != rank_ * rank_)
    throw Error(ErrorKind::InvalidArgument, "monodromy entry count != rank^2");
  const MatrixXc u = as_eigen(rank_, entries_);
  const double defect = (u.adjoint() * u - MatrixXc::Identity(rank_, rank_)).norm();
  if (defect > 1e-12)
    throw Error(ErrorKind::NonUnitary, "monodromy is not unitary: ||U^H U - I||_F = " +
                                           std::to_string(defect));

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(u), false);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    angles_.push_back(TwistParameter(std::arg(solver.eigenvalues()[i])).value());
  std::sort(angles_.begin(), angles_.end());
  simple_ = true;
  for (std::size_t i = 0; i < angles_.size(); ++i)
    for (std::size_t j = i + 1; j < angles_.size(); ++j)
      if (circular_distance(angles_[i], angles_[j]) <= 1e-8) simple_ = false;
}

Monodromy Monodromy::diagonal(std::span<const double> angles) {
  const std::size_t n = angles.size();
  std::vector<Complex> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = std::polar(1.0, angles[i]);
  return Monodromy(n, std::move(entries));
}

std::vector<Complex> Monodromy::power(std::int64_t k) const {
  MatrixXc base = as_eigen(rank_, entries_);
  if (k < 0) {
    base = base.adjoint().eval();
    k = -k;
  }
  MatrixXc result = MatrixXc::Identity(rank_, rank_);
  while (k > 0) {
    if (k & 1) result = (result * base).eval();
    base = (base * base).eval();
    k >>= 1;
  }
  return from_eigen(result);
}

Monodromy load_monodromy(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    lines.push_back(std::move(tokens));
  }
  auto parse_double = [](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw Error(ErrorKind::ParseError, "bad real number '" + s + "'");
    return v;
  };
  if (lines.empty()) throw Error(ErrorKind::ParseError, "empty monodromy file");

  if (lines[0][0] == "diag") {
    if (lines.size() != 1 || lines[0].size() < 2)
      throw Error(ErrorKind::ParseError, "expected a single 'diag <phi1> ...' record");
    std::vector<double> angles;
    for (std::size_t i = 1; i < lines[0].size(); ++i) angles.push_back(parse_double(lines[0][i]));
    return Monodromy::diagonal(angles);
  }
  if (lines[0][0] != "n" || lines[0].size() != 2)
    throw Error(ErrorKind::ParseError, "expected 'n <rank>' or 'diag ...'");
  const double rank_real = parse_double(lines[0][1]);
  if (rank_real < 1.0 || rank_real != std::floor(rank_real))
    throw Error(ErrorKind::ParseError, "rank must be a positive integer");
  const auto rank = static_cast<std::size_t>(rank_real);
  if (lines.size() != rank + 1)
    throw Error(ErrorKind::ParseError, "expected " + std::to_string(rank) + " matrix rows");
  std::vector<Complex> entries;
  for (std::size_t r = 1; r <= rank; ++r) {
    if (lines[r].size() != rank)
      throw Error(ErrorKind::ParseError, "row " + std::to_string(r) + " needs " +
                                             std::to_string(rank) + " entries");
    for (const auto& cell : lines[r]) {
      const auto comma = cell.find(',');
      if (comma == std::string::npos)
        throw Error(ErrorKind::ParseError, "entry '" + cell + "' is not '<re>,<im>'");
      entries.emplace_back(parse_double(cell.substr(0, comma)), parse_double(cell.substr(comma + 1)));
    }
  }
  return Monodromy(rank, std::move(entries));
}

Monodromy load_monodromy_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_monodromy(ss.str());
}

namespace {

template <typename BlockFn>
HermitianMatrix assemble_bundle(const VoltageGraph& g, const Monodromy& m, BlockFn&& block) {
  const std::size_t n = m.rank();
  HermitianMatrix out(g.vertex_count() * n);
  for (const auto& e : g.edges()) block(out, e, n);
  return out;
}

}  // namespace

HermitianMatrix bundle_twisted_laplacian(const VoltageGraph& g, const Monodromy& m,
                                         TwistParameter theta) {
  const double th = theta.value();
  return assemble_bundle(g, m, [&](HermitianMatrix& out, const VoltageGraph::Edge& e,
                                   std::size_t n) {
    const auto up = m.power(e.voltage);
    const Complex phase = std::polar(1.0, th * static_cast<double>(e.voltage));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Complex w = up[i * n + j] * phase;       // W(i, j)
        const Complex w_adj = std::conj(up[j * n + i] * phase);  // W^H(i, j)
        const Complex id = i == j ? 1.0 : 0.0;
        if (e.u == e.v) {
          out(e.u * n + i, e.u * n + j) += 2.0 * id - w - w_adj;
        } else {
          out(e.u * n + i, e.u * n + j) += id;
          out(e.v * n + i, e.v * n + j) += id;
          out(e.u * n + i, e.v * n + j) -= w_adj;
          out(e.v * n + i, e.u * n + j) -= w;
        }
      }
    }
  });
}

HermitianMatrix bundle_twisted_laplacian_derivative(const VoltageGraph& g, const Monodromy& m,
                                                    TwistParameter theta) {
  const double th = theta.value();
  return assemble_bundle(g, m, [&](HermitianMatrix& out, const VoltageGraph::Edge& e,
                                   std::size_t n) {
    const auto up = m.power(e.voltage);
    const double r = static_cast<double>(e.voltage);
    const Complex phase = std::polar(1.0, th * r);
    const Complex ir(0.0, r);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Complex dw = ir * up[i * n + j] * phase;
        const Complex dw_adj = std::conj(ir * up[j * n + i] * phase);
        if (e.u == e.v) {
          out(e.u * n + i, e.u * n + j) -= dw + dw_adj;
        } else {
          out(e.u * n + i, e.v * n + j) -= dw_adj;
          out(e.v * n + i, e.u * n + j) -= dw;
        }
      }
    }
  });
}

}  // namespace zeta_cover
