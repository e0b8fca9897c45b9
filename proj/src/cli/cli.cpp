#include "zeta_cover/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zeta_cover/analysis.hpp"
#include "zeta_cover/error.hpp"
#include "zeta_cover/graph.hpp"
#include "zeta_cover/series_io.hpp"
#include "zeta_cover/torus.hpp"
#include "zeta_cover/zeta.hpp"

namespace zeta_cover::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string graph;
  std::string monodromy;
  std::string tau = "0,1";
  double l = 1.0;
  std::string n;
  double theta = 0.0;
  std::size_t grid = 256;
  double tol = 1e-8;
  std::string format;
  std::string out;
  std::size_t jobs = 1;
  // subcommand extras
  bool direct = false;
  bool check_mellin = false;
  std::string fit_window = "0.001,0.1";
  std::string times = "0.5,1,2";
  std::string ks = "3,4,6";
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

double parse_real(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw CLI::ValidationError(what, "'" + s + "' is not a number");
  return v;
}

std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& p : split_commas(text)) out.push_back(parse_real(p, what));
  if (out.empty()) throw CLI::ValidationError(what, "empty list");
  return out;
}

/// "4,16,64" or "max:M" (powers of two from 2 up to M).
std::vector<std::size_t> parse_n(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.rfind("max:", 0) == 0) {
    const double m = parse_real(text.substr(4), "--n");
    if (m < 2) throw CLI::ValidationError("--n", "max must be >= 2");
    for (std::size_t n = 2; static_cast<double>(n) <= m; n *= 2) out.push_back(n);
    return out;
  }
  for (const auto& p : split_commas(text)) {
    const double v = parse_real(p, "--n");
    if (v < 1 || v != std::floor(v)) throw CLI::ValidationError("--n", "N values must be integers >= 1");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw CLI::ValidationError("--n", "empty list");
  return out;
}

Complex parse_tau(const std::string& text) {
  const auto v = parse_reals(text, "--tau");
  if (v.size() != 2) throw CLI::ValidationError("--tau", "expected <re>,<im>");
  return {v[0], v[1]};
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json big(const mpz_class& z) {
  if (z.fits_ulong_p()) return json(z.get_ui());
  return json(z.get_str());
}

json spectrum_json(const Spectrum& s) {
  json j;
  j["dim"] = s.size();
  j["zero_count"] = s.zero_count();
  j["zero_tol"] = s.zero_tol();
  j["values"] = std::vector<double>(s.values().begin(), s.values().end());
  return j;
}

std::string spectrum_csv(const Spectrum& s) {
  std::string text = "index,value\n";
  char buf[64];
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, s.values()[i]);
    text += buf;
  }
  return text;
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out, bool series_default)
      : cfg_(cfg), out_(out) {
    const std::string f = cfg.format.empty() ? (series_default ? "csv" : "json") : cfg.format;
    csv_ = f == "csv";
  }
  bool csv() const { return csv_; }

  void write(const std::string& text) const {
    if (cfg_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(cfg_.out, std::ios::binary);
    if (!file) throw Error(ErrorKind::IoError, "cannot open '" + cfg_.out + "' for writing");
    file << text;
    if (!file) throw Error(ErrorKind::IoError, "write to '" + cfg_.out + "' failed");
  }
  void write(const json& j) const { write(j.dump(2) + "\n"); }
  void write_series(const ConvergenceSeries& s) const {
    write(emit_series(s, csv_ ? SeriesFormat::Csv : SeriesFormat::Json));
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
  bool csv_ = false;
};

void cmd_spectrum(const RunConfig& cfg, const Emitter& em) {
  const auto ns = parse_n(cfg.n.empty() ? "1" : cfg.n);
  if (ns.size() != 1) throw CLI::ValidationError("--n", "spectrum takes a single N");
  const std::size_t n = ns[0];
  const auto g = load_graph_file(cfg.graph, {.allow_nonsurjective = n == 1});
  const Spectrum s = n == 1     ? hermitian_eigenvalues(laplacian(g.underlying()))
                     : cfg.direct ? cover_spectrum_direct(g, n)
                                  : cover_spectrum_twisted(g, n, cfg.jobs);
  if (em.csv()) return em.write(spectrum_csv(s));
  json j = spectrum_json(s);
  j["N"] = n;
  const bool has_nonzero = s.zero_count() < s.size();
  const double ldp = has_nonzero ? log_det_prime(s) : NAN;
  j["log_det_prime"] = number_or_null(ldp);
  j["density"] = number_or_null(ldp / static_cast<double>(s.size()));
  em.write(j);
}

void cmd_twist_spectrum(const RunConfig& cfg, const Emitter& em) {
  const auto g = load_graph_file(cfg.graph);
  const TwistParameter theta(cfg.theta);
  Spectrum s;
  if (cfg.monodromy.empty()) {
    s = hermitian_eigenvalues(twisted_laplacian(g, theta));
  } else {
    s = hermitian_eigenvalues(bundle_twisted_laplacian(g, load_monodromy_file(cfg.monodromy), theta));
  }
  if (em.csv()) return em.write(spectrum_csv(s));
  json j = spectrum_json(s);
  j["theta"] = theta.value();
  em.write(j);
}

void cmd_tree_count(const RunConfig& cfg, const Emitter& em) {
  const auto g = load_graph_file(cfg.graph, {.allow_nonsurjective = true}).underlying();
  const mpz_class k = spanning_tree_count(g);
  const mpz_class det = k * static_cast<unsigned long>(g.vertex_count);
  const Spectrum s = hermitian_eigenvalues(laplacian(g));
  const double spectral = g.vertex_count == 1 ? 1.0 : std::exp(log_det_prime(s));
  bool ok = integer_det_prime(g) == det &&
            std::abs(spectral - det.get_d()) <= 1e-7 * det.get_d();
  const bool brute = g.edges.size() <= 24;
  if (brute) ok = ok && verify_matrix_tree(g).ok() && brute_force_spanning_trees(g) == k;
  json j;
  j["K"] = big(k);
  j["det_prime"] = det.get_d();
  j["det_prime_spectral"] = spectral;
  j["kirchhoff_ok"] = ok;
  j["brute_force_checked"] = brute;
  j["vertices"] = g.vertex_count;
  j["edges"] = g.edges.size();
  if (em.csv()) {
    std::ostringstream os;
    os << "K,det_prime,kirchhoff_ok\n" << k.get_str() << "," << det.get_str() << ","
       << (ok ? "true" : "false") << "\n";
    return em.write(os.str());
  }
  em.write(j);
}

void cmd_converge(const RunConfig& cfg, const Emitter& em) {
  const auto g = load_graph_file(cfg.graph);
  const auto ns = parse_n(cfg.n.empty() ? "64,128,256,512,1024" : cfg.n);
  em.write_series(convergence_series(g, ns, cfg.tol, cfg.jobs));
}

void cmd_gap_scan(const RunConfig& cfg, const Emitter& em) {
  const auto g = load_graph_file(cfg.graph);
  const auto w = parse_reals(cfg.fit_window, "--fit-window");
  if (w.size() != 2) throw CLI::ValidationError("--fit-window", "expected <lo>,<hi>");
  const auto r = gap_scan(g, cfg.grid, {w[0], w[1]}, cfg.jobs);
  if (em.csv()) {
    std::string text = "theta,lambda0,lambda1\n";
    char buf[96];
    for (const auto& s : r.grid) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.theta, s.lambda0, s.lambda1);
      text += buf;
    }
    return em.write(text);
  }
  json j;
  j["p"] = r.p;
  j["exponent"] = r.exponent;
  j["amplitude"] = r.amplitude;
  j["lower"] = r.lower;
  j["epsilon0"] = r.epsilon0;
  j["eta"] = r.eta;
  j["r_squared"] = r.r_squared;
  j["grid"] = json::array();
  for (const auto& s : r.grid)
    j["grid"].push_back({s.theta, s.lambda0, number_or_null(s.lambda1)});
  em.write(j);
}

void cmd_bundle_scan(const RunConfig& cfg, const Emitter& em) {
  const auto g = load_graph_file(cfg.graph);
  const auto m = load_monodromy_file(cfg.monodromy);
  const auto z = monodromy_zero_locus(g, m, cfg.grid);
  std::vector<double> expected;
  for (double phi : m.eigen_angles()) {
    const double a = TwistParameter(-phi).value();
    expected.push_back(kTwoPi - a < 1e-10 ? 0.0 : a + 0.0);
  }
  std::sort(expected.begin(), expected.end());
  if (em.csv()) {
    std::string text = "zero,lambda0,lambda1\n";
    char buf[96];
    for (std::size_t i = 0; i < z.angles.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", z.angles[i], z.lambda0_at_zero[i],
                    z.lambda1_at_zero[i]);
      text += buf;
    }
    return em.write(text);
  }
  json j;
  j["zeros"] = z.angles;
  j["monodromy_angles"] = m.eigen_angles();
  j["expected_zeros"] = expected;
  j["epsilon0"] = number_or_null(z.epsilon0);
  j["lambda0_at_zero"] = z.lambda0_at_zero;
  json l1 = json::array();
  for (double v : z.lambda1_at_zero) l1.push_back(number_or_null(v));
  j["lambda1_at_zero"] = l1;
  em.write(j);
}

void cmd_deck_check(const RunConfig& cfg, const Emitter& em) {
  const auto g = load_graph_file(cfg.graph);
  const auto ns = parse_n(cfg.n.empty() ? "2,3,5" : cfg.n);
  const auto ts = parse_reals(cfg.times, "--t");
  json rows = json::array();
  std::string text = "N,t,direct,orbit_sum,residual\n";
  bool all_ok = true;
  char buf[160];
  for (std::size_t n : ns) {
    for (double t : ts) {
      const auto r = verify_deck_sum(g, n, t, cfg.tol);
      const bool ok = r.residual <= 100.0 * cfg.tol;
      all_ok = all_ok && ok;
      rows.push_back({{"N", n}, {"t", t}, {"direct", r.direct}, {"orbit_sum", r.orbit_sum},
                      {"residual", r.residual}, {"orbit_terms", r.orbit_terms}, {"ok", ok}});
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", n, t, r.direct, r.orbit_sum,
                    r.residual);
      text += buf;
    }
  }
  if (em.csv()) return em.write(text);
  em.write(json{{"checks", rows}, {"all_ok", all_ok}});
}

void cmd_torus(const RunConfig& cfg, const Emitter& em) {
  const ModularParameter tau(parse_tau(cfg.tau));
  const Complex eta = dedekind_eta(tau);
  json j;
  j["tau"] = {tau.tau().real(), tau.tau().imag()};
  j["eta"] = {eta.real(), eta.imag()};
  j["det_closed"] = torus_det_zeta(tau);
  if (cfg.check_mellin) {
    const auto z = torus_zeta_prime_mellin(tau, 1e-2 * cfg.tol);
    const double det = std::exp(-z.value);
    j["zeta_prime_mellin"] = z.value;
    j["mellin_error"] = z.error;
    j["det_mellin"] = det;
    j["agree"] = std::abs(det - torus_det_zeta(tau)) <= cfg.tol;
  }
  if (em.csv()) {
    std::ostringstream os;
    os.precision(17);
    os << "det_closed" << (cfg.check_mellin ? ",det_mellin,agree" : "") << "\n"
       << j["det_closed"].get<double>();
    if (cfg.check_mellin)
      os << "," << j["det_mellin"].get<double>() << "," << (j["agree"].get<bool>() ? "true" : "false");
    os << "\n";
    return em.write(os.str());
  }
  em.write(j);
}

void cmd_torus_limit(const RunConfig& cfg, const Emitter& em) {
  const auto ns = parse_n(cfg.n.empty() ? "10,50,100,500,1000" : cfg.n);
  em.write_series(torus_limit_series(cfg.l, ns));
}

void cmd_lattice2d(const RunConfig& cfg, const Emitter& em) {
  const auto a = lattice2d_limit(cfg.tol);
  const double log_c4 = std::log(mckay_constant(4));
  json j{{"alpha", a.value}, {"error", a.error}, {"log_c4", log_c4},
         {"bounds_ok", a.value > 0.0 && a.value < log_c4}};
  if (em.csv()) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "alpha,error,log_c4\n%.17g,%.17g,%.17g\n", a.value, a.error, log_c4);
    return em.write(std::string(buf));
  }
  em.write(j);
}

void cmd_mckay(const RunConfig& cfg, const Emitter& em) {
  json rows = json::array();
  std::string text = "k,c_k,log_c_k\n";
  char buf[96];
  for (double kd : parse_reals(cfg.ks, "--k")) {
    if (kd != std::floor(kd)) throw CLI::ValidationError("--k", "k must be an integer");
    const int k = static_cast<int>(kd);
    const double c = mckay_constant(k);
    rows.push_back({{"k", k}, {"c_k", c}, {"log_c_k", std::log(c)}});
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", k, c, std::log(c));
    text += buf;
  }
  if (em.csv()) return em.write(text);
  em.write(json{{"constants", rows}});
}

struct Command {
  const char* name;
  const char* help;
  bool series;
  void (*fn)(const RunConfig&, const Emitter&);
};

const Command kCommands[] = {
    {"spectrum", "Laplacian spectrum of the base graph or of its N-sheeted cover", false, cmd_spectrum},
    {"twist-spectrum", "Spectrum of the twisted (or bundle) Laplacian at one angle", false,
     cmd_twist_spectrum},
    {"tree-count", "Spanning trees and the matrix-tree identity", false, cmd_tree_count},
    {"converge", "log det'/volume of cyclic covers against the theta-integral limit", true,
     cmd_converge},
    {"gap-scan", "Bottom of the twisted spectrum: gap, exponent and amplitude", false, cmd_gap_scan},
    {"bundle-scan", "Zero locus of the bundle Laplacian against the monodromy", false,
     cmd_bundle_scan},
    {"deck-check", "Heat trace of the cover against the deck-orbit sum", false, cmd_deck_check},
    {"torus", "Dedekind eta and det_zeta of a flat torus", false, cmd_torus},
    {"torus-limit", "Density of the torus covers tau = i N L", true, cmd_torus_limit},
    {"lattice2d", "Spanning-tree entropy of the square lattice", false, cmd_lattice2d},
    {"mckay", "McKay constants c_k", false, cmd_mckay},
};

void add_options(CLI::App& sub, const std::string& name, RunConfig& cfg) {
  const bool needs_graph = name == "spectrum" || name == "twist-spectrum" || name == "tree-count" ||
                           name == "converge" || name == "gap-scan" || name == "bundle-scan" ||
                           name == "deck-check";
  if (needs_graph)
    sub.add_option("--graph", cfg.graph, "Voltage graph file")->required()->check(CLI::ExistingFile);
  if (name == "twist-spectrum")
    sub.add_option("--monodromy", cfg.monodromy, "Monodromy file (bundle Laplacian)")
        ->check(CLI::ExistingFile);
  if (name == "bundle-scan")
    sub.add_option("--monodromy", cfg.monodromy, "Monodromy file")->required()->check(CLI::ExistingFile);
  if (name == "torus") {
    sub.add_option("--tau", cfg.tau, "Modular parameter <re>,<im>")->capture_default_str();
    sub.add_flag("--check-mellin", cfg.check_mellin, "Also regularize through the heat trace");
  }
  if (name == "torus-limit")
    sub.add_option("--L", cfg.l, "Base length L")->capture_default_str()->check(CLI::PositiveNumber);
  if (name == "spectrum") {
    sub.add_option("--n", cfg.n, "Cover degree N")->default_str("1");
    sub.add_flag("--direct", cfg.direct, "Eigensolve the full cover Laplacian");
  }
  if (name == "converge")
    sub.add_option("--n", cfg.n, "N list (comma separated, or max:M for powers of two)")
        ->default_str("64,128,256,512,1024");
  if (name == "deck-check") {
    sub.add_option("--n", cfg.n, "N list")->default_str("2,3,5");
    sub.add_option("--t", cfg.times, "Heat times")->capture_default_str();
  }
  if (name == "torus-limit")
    sub.add_option("--n", cfg.n, "N list (comma separated, or max:M for powers of two)")
        ->default_str("10,50,100,500,1000");
  if (name == "twist-spectrum")
    sub.add_option("--theta", cfg.theta, "Twist angle")->capture_default_str();
  if (name == "gap-scan" || name == "bundle-scan")
    sub.add_option("--grid", cfg.grid, "Grid size")->capture_default_str()->check(CLI::PositiveNumber);
  if (name == "gap-scan")
    sub.add_option("--fit-window", cfg.fit_window, "Exponent fit window <lo>,<hi>")
        ->capture_default_str();
  if (name == "converge" || name == "lattice2d" || name == "torus" || name == "deck-check") {
    cfg.tol = name == "torus" ? 1e-6 : name == "deck-check" ? 1e-10 : 1e-8;
    sub.add_option("--tol", cfg.tol, "Tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  }
  if (name == "mckay") sub.add_option("--k", cfg.ks, "Degrees k >= 3")->capture_default_str();
  if (name == "spectrum" || name == "converge" || name == "gap-scan")
    sub.add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sub.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_str(name == "converge" || name == "torus-limit" ? "csv" : "json");
  sub.add_option("--out", cfg.out, "Write output to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta-regularized determinants of cyclic covers", "zeta-cover"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : kCommands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_options(*sub, c.name, cfg);
    subs[c.name] = sub;
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << (e.get_name() == "CallForAllHelp" ? app.help("", CLI::AppFormatMode::All)
                                              : app.help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << e.what() << "\n" << "Run with --help for usage.\n";
    return kExitUsage;
  }

  for (const auto& c : kCommands) {
    if (!subs[c.name]->parsed()) continue;
    try {
      const Emitter em(cfg, out, c.series);
      c.fn(cfg, em);
      return kExitOk;
    } catch (const CLI::ValidationError& e) {
      err << e.what() << "\n";
      return kExitUsage;
    } catch (const Error& e) {
      err << json{{"error", std::string(to_string(e.kind()))},
                  {"message", e.what()},
                  {"detail", e.detail()}}
                 .dump()
          << "\n";
      return kExitComputation;
    } catch (const std::exception& e) {
      err << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
      return kExitComputation;
    }
  }
  return kExitUsage;
}

}  // namespace zeta_cover::cli
