// Copyright 2026 The gpath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "gpath/gpath.hpp"

namespace gpath::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "gpath";
  for (const auto& a : args) s += " " + a;
  return s;
}

void metadata(std::ostream& os, const std::vector<std::string>& args, std::uint64_t seed) {
  os << "# version=" << kVersion << '\n';
  os << "# seed=" << seed << '\n';
  os << "# command=" << join_args(args) << '\n';
}

/// Whitespace- or comma-separated numbers; '#' starts a comment.
std::vector<double> read_numbers(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path.string() + "'");
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw std::invalid_argument("'" + path.string() + "': not a number: " + tok);
      values.push_back(v);
    }
  }
  return values;
}

Vector to_vector(const std::vector<double>& v) { return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size())); }

std::filesystem::path resolve_output(const std::string& output) {
  std::filesystem::path p(output);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("GPATH_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

struct Common {
  std::string output;
  bool gnuplot = false;
  std::uint64_t seed = 1;
};

// Link values for the partition command.
Vector partition_links(const std::string& source, Index n, std::uint64_t seed) {
  const Index n_links = 3 * n / 2 - 2;
  if (source == "preset:twin6") {
    if (n != 6) throw std::invalid_argument("preset:twin6 is the six-vertex example; use --n 6");
    const ChainComplex c = make_chain_complex(build_ladder_graph(6));
    Vector v(6);
    v << 1, 2, 3, 4, 5, 6;
    return coboundary(c, 1, v);
  }
  if (source == "preset:uniform") return uniform_links(n, 1.0, 1.0);
  if (source == "preset:random") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector e(n_links);
    for (Index i = 0; i < n_links; ++i) e(i) = u(rng);
    return e;
  }
  if (source.rfind("preset:", 0) == 0) throw std::invalid_argument("unknown preset '" + source + "'");
  Vector e = to_vector(read_numbers(source));
  if (e.size() != n_links) {
    throw std::invalid_argument("source file has " + std::to_string(e.size()) + " values, expected " +
                                std::to_string(n_links) + " links");
  }
  return e;
}

void cmd_graph(Index n, const std::vector<std::string>& args, std::ostream& os) {
  const LadderGraph g = build_ladder_graph(n);
  metadata(os, args, 0);
  write_graph(os, g);
}

bool all_integral(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x) && std::abs(x) < 1e15 && x == std::round(x); });
}

void print_report(std::ostream& os, const std::vector<ValidationCheck>& checks, const std::string& failure = {}) {
  os << std::left << std::setw(26) << "check" << std::setw(8) << "status" << "value\n";
  for (const auto& c : checks) {
    os << std::left << std::setw(26) << c.name << std::setw(8) << (c.passed ? "pass" : "FAIL") << c.detail << '\n';
  }
  if (!failure.empty()) os << std::left << std::setw(26) << "K v = (beta/alpha) J" << std::setw(8) << "FAIL" << failure << '\n';
}

int cmd_scc(Index n, int degree, const std::string& from_vertices, const std::string& links_file, double alpha,
            double beta, std::uint64_t seed, const std::vector<std::string>& args, std::ostream& os,
            std::ostream& err) {
  const ChainComplex c = make_chain_complex(build_ladder_graph(n));
  const IntMatrix& d = c.boundary(degree);
  Vector v(d.rows());
  if (from_vertices == "random") {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(-1000, 1000);
    for (Index i = 0; i < v.size(); ++i) v(i) = u(rng);
  } else if (from_vertices == "ramp") {
    for (Index i = 0; i < v.size(); ++i) v(i) = static_cast<double>(i + 1);
  } else {
    v = to_vector(read_numbers(from_vertices));
    if (v.size() != d.rows()) {
      throw std::invalid_argument("vertex file has " + std::to_string(v.size()) + " values, expected " +
                                  std::to_string(d.rows()));
    }
  }
  Vector e = links_file.empty() ? Vector(coboundary(c, degree, v)) : to_vector(read_numbers(links_file));

  metadata(os, args, seed);
  os << "scc report: ladder N=" << n << ", degree " << degree << ", alpha=" << num(alpha) << ", beta=" << num(beta)
     << '\n';
  try {
    if (all_integral(v) && all_integral(e)) {
      os << "exact integer path\n";
      print_report(os, verify_scc_exact(c, degree, e.cast<std::int64_t>(), v.cast<std::int64_t>()).checks);
    }
    const SccSystem sys = make_scc_system(c, degree, e, Couplings{alpha, beta, 1.0});
    os << "floating path\n";
    const SccReport report = verify_scc(sys, v);
    print_report(os, report.checks);
    return report.ok() ? kExitOk : kExitDomain;
  } catch (const SccViolation& ex) {
    print_report(os, {}, num(ex.max_residual()));
    err << "error: " << ex.what() << '\n';
    return kExitDomain;
  }
}

void cmd_spectrum(Index n, double beta, bool lorentzian, const std::string& method, const std::vector<std::string>& args,
                  std::ostream& os) {
  Spectrum s;
  if (method == "closed") {
    s = ladder_spectrum_closed_form(n, beta);
    if (lorentzian) s = continue_to_lorentzian(s, n);
  } else if (method == "numeric") {
    const ChainComplex c = make_chain_complex(build_ladder_graph(n));
    Matrix K = build_operator(c, 1, beta);
    if (lorentzian) K = lorentzian_operator(K, beta);
    s = numeric_spectrum(K, beta);
    if (lorentzian) s.regime = Regime::lorentzian;
  } else {
    throw UsageError("--method must be closed or numeric");
  }
  metadata(os, args, 0);
  os << "index,eigenvalue,parity,is_zero_mode\n";
  for (Index i = 0; i < s.size(); ++i) {
    os << i << ',' << num(s[i].value) << ',' << to_string(s[i].parity) << ',' << (s.is_zero_mode(i) ? "true" : "false")
       << '\n';
  }
}

void cmd_partition(Index n, const std::string& source, double alpha, double beta, const std::string& oracle,
                   std::size_t budget, std::uint64_t seed, const std::vector<std::string>& args, std::ostream& os) {
  const ChainComplex c = make_chain_complex(build_ladder_graph(n));
  const Vector e = partition_links(source, n, seed);
  const SccSystem sys = make_scc_system(c, 1, e, Couplings{alpha, beta, 1.0});
  const Spectrum s = ladder_spectrum_closed_form(n, beta);
  const PartitionResult z = euclidean_Z(sys, s);

  metadata(os, args, seed);
  if (oracle.empty()) {
    os << "log_Z,exponent_term,restricted_dim\n";
    os << num(z.log_magnitude) << ',' << num(z.exponent_term) << ',' << z.restricted_dimension << '\n';
    return;
  }
  OracleOptions opt;
  if (oracle == "quadrature") {
    opt.method = OracleMethod::quadrature;
    opt.budget = budget ? budget : 32;
  } else if (oracle == "mc") {
    opt.method = OracleMethod::montecarlo;
    opt.budget = budget ? budget : 1000000;
    opt.target_error = 1e-2;
  } else {
    throw UsageError("--oracle must be quadrature or mc");
  }
  opt.seed = seed;
  const OracleEstimate est = brute_force_Z(sys, s, opt);
  os << "# oracle_error_estimate=" << num(est.error_estimate) << '\n';
  if (est.precision_warning) os << "# warning=oracle budget too small for requested precision\n";
  os << "log_Z,exponent_term,restricted_dim,oracle_log_Z,abs_err\n";
  os << num(z.log_magnitude) << ',' << num(z.exponent_term) << ',' << z.restricted_dimension << ','
     << num(est.result.log_magnitude) << ',' << num(std::abs(est.result.log_magnitude - z.log_magnitude)) << '\n';
}

struct Sweep {
  double from = 0.0, to = 0.0;
  Index steps = 1;
};

Sweep parse_range(const std::string& text) {
  Sweep s;
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw UsageError("--y-range expects a:b:steps");
  try {
    s.from = std::stod(text.substr(0, a));
    s.to = std::stod(text.substr(a + 1, b - a - 1));
    s.steps = std::stol(text.substr(b + 1));
  } catch (const std::exception&) {
    throw UsageError("--y-range expects a:b:steps");
  }
  if (s.steps < 1) throw UsageError("--y-range needs at least one step");
  return s;
}

void cmd_twinslit(Index n, double d, double L, double lambda, const std::string& range,
                  const std::vector<std::string>& args, std::ostream& os) {
  const Sweep sweep = parse_range(range);
  require_ladder_size(n);
  const Couplings k = calibrated_couplings(lambda);
  struct Row {
    double y, phase, intensity;
    std::int64_t nearest;
    bool exact;
  };
  std::vector<Row> rows(static_cast<std::size_t>(sweep.steps));
  for (Index i = 0; i < sweep.steps; ++i) {
    const double y = sweep.steps == 1 ? sweep.from
                                      : sweep.from + (sweep.to - sweep.from) * static_cast<double>(i) /
                                                         static_cast<double>(sweep.steps - 1);
    const SlitGeometry g{d, L, y, lambda};
    const auto [ex, ext] = geometry_to_links(g, n);
    TwinSlitConfig cfg{n, ex, ext, 1.0, k, lambda};
    const double phase = interference_phase_difference(cfg);
    const double order = phase / kTwoPi;
    const auto [l1, l2] = path_lengths(g);
    const auto nearest = static_cast<std::int64_t>(std::llround(order));
    rows[static_cast<std::size_t>(i)] = {y, phase, nrqm_intensity(l1 - l2, lambda), nearest,
                                         std::abs(order - static_cast<double>(nearest)) <= 1e-9};
  }
  metadata(os, args, 0);
  os << "y,delta_phi,n_nearest,is_maximum,nrqm_intensity\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // A sample is a maximum when it sits on an integer order, or when cos(delta_phi)
    // peaks there among its sweep neighbours.
    const double here = std::cos(rows[i].phase);
    const bool left_ok = i == 0 || here > std::cos(rows[i - 1].phase);
    const bool right_ok = i + 1 == rows.size() || here >= std::cos(rows[i + 1].phase);
    const bool interior_peak = rows.size() > 2 && left_ok && right_ok && i != 0 && i + 1 != rows.size();
    const bool is_max = rows[i].exact || interior_peak;
    os << num(rows[i].y) << ',' << num(rows[i].phase) << ',' << rows[i].nearest << ',' << (is_max ? "true" : "false")
       << ',' << num(rows[i].intensity) << '\n';
  }
}

void cmd_gauge(std::size_t trials, std::uint64_t seed, const std::vector<std::string>& args, std::ostream& os) {
  using namespace continuum;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double mw_null = 0, mw_trans = 0, fp_null = 0, fp_trans = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    FourVector k;
    do {
      k = FourVector(u(rng), u(rng), u(rng), u(rng));
    } while (std::abs(k.square()) < 0.1);
    const Vector4 a(u(rng), u(rng), u(rng), u(rng));
    const Vector4 eps(u(rng), u(rng), u(rng), u(rng));
    Matrix4 h;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) h(i, j) = h(j, i) = u(rng);
    mw_null = std::max(mw_null, null_residual(maxwell_kernel(k), k.up));
    mw_trans = std::max(mw_trans, maxwell_transverse_residual(k, a));
    fp_null = std::max(fp_null, null_residual(fierz_pauli_kernel(k), to_coordinates(gauge_perturbation(k, eps))));
    fp_trans = std::max(fp_trans, fierz_pauli_transverse_residual(k, h));
  }
  metadata(os, args, seed);
  os << "kernel,property,max_residual\n";
  os << "maxwell,gauge_null," << num(mw_null) << '\n';
  os << "maxwell,transverse," << num(mw_trans) << '\n';
  os << "fierz_pauli,gauge_null," << num(fp_null) << '\n';
  os << "fierz_pauli,transverse," << num(fp_trans) << '\n';
}

std::string first_header(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw std::invalid_argument("cannot open '" + csv.string() + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') return line;
  }
  return {};
}

}  // namespace

std::string plot_script(const std::filesystem::path& csv) {
  const std::string header = first_header(csv);
  const std::string name = csv.filename().string();
  std::ostringstream gp;
  gp << "# gnuplot script generated by gpath " << kVersion << "\n";
  gp << "set datafile separator ','\nset datafile commentschars '#'\nset key autotitle columnhead\n";
  if (header == "y,delta_phi,n_nearest,is_maximum,nrqm_intensity") {
    gp << "set title 'Twin-slit fringes'\nset xlabel 'detector position y'\nset ylabel 'intensity'\n";
    gp << "set yrange [0:4.2]\n";
    gp << "plot '" << name << "' using 1:5 with lines title 'two-path intensity', \\\n";
    gp << "     '' using 1:(stringcolumn(4) eq \"true\" ? $5 : 1/0) with points pt 7 title 'graph maxima'\n";
  } else if (header == "index,eigenvalue,parity,is_zero_mode") {
    gp << "set title 'Ladder operator spectrum'\nset xlabel 'index'\nset ylabel 'eigenvalue'\n";
    gp << "plot '" << name << "' using 1:2 with impulses lw 2 title 'eigenvalue', \\\n";
    gp << "     '' using 1:2 with points pt 7 notitle\n";
  } else {
    throw std::invalid_argument("no plot defined for schema '" + header + "'");
  }
  return gp.str();
}

std::filesystem::path emit_plot_script(const std::filesystem::path& csv) {
  const std::string script = plot_script(csv);
  std::filesystem::path out = csv;
  out.replace_extension(".gp");
  std::ofstream f(out);
  if (!f) throw std::invalid_argument("cannot write '" + out.string() + "'");
  f << script;
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graphical path-integral numerics on ladder graphs", "gpath"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", common.output, "write to this file (relative paths resolve against $GPATH_OUTPUT_DIR)");
  };

  Index n = 6;
  double alpha = 1.0, beta = 1.0;

  auto* graph = app.add_subcommand("graph", "print the ladder graph in link-record form");
  graph->add_option("--n", n, "vertex count (even, >= 4)")->required();
  add_common(graph);

  int degree = 1;
  std::string from_vertices = "random", links_file;
  auto* scc = app.add_subcommand("scc", "verify K v = (beta/alpha) J for e derived from v");
  scc->add_option("--n", n, "vertex count")->required();
  scc->add_option("--degree", degree, "chain degree (1 or 2)")->check(CLI::IsMember({1, 2}));
  scc->add_option("--from-vertices", from_vertices, "random | ramp | <file>");
  scc->add_option("--links", links_file, "override e with values from a file");
  scc->add_option("--alpha", alpha);
  scc->add_option("--beta", beta);
  scc->add_option("--seed", common.seed);
  add_common(scc);

  bool lorentzian = false;
  std::string method = "closed";
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the ladder operator");
  spectrum->add_option("--n", n, "vertex count")->required();
  spectrum->add_option("--beta", beta);
  spectrum->add_flag("--lorentzian", lorentzian, "continue to K_M");
  spectrum->add_option("--method", method, "closed | numeric");
  spectrum->add_flag("--gnuplot", common.gnuplot, "write a plot script next to --output");
  add_common(spectrum);

  std::string source, oracle;
  std::size_t budget = 0;
  auto* partition = app.add_subcommand("partition", "restricted Gaussian partition function");
  partition->add_option("--n", n, "vertex count")->required();
  partition->add_option("--source", source, "<file> | preset:twin6 | preset:uniform | preset:random")->required();
  partition->add_option("--alpha", alpha);
  partition->add_option("--beta", beta);
  partition->add_option("--oracle", oracle, "quadrature | mc");
  partition->add_option("--budget", budget, "nodes per axis (quadrature) or samples (mc)");
  partition->add_option("--seed", common.seed);
  add_common(partition);

  double d = 0.0, L = 0.0, lambda = 0.0;
  std::string range;
  auto* twinslit = app.add_subcommand("twinslit", "fringe sweep: graph phase vs two-path intensity");
  twinslit->add_option("--n", n, "vertex count")->required();
  twinslit->add_option("--d", d, "slit separation")->required();
  twinslit->add_option("--L", L, "screen distance")->required();
  twinslit->add_option("--lambda", lambda, "wavelength")->required();
  twinslit->add_option("--y-range", range, "a:b:steps")->required();
  twinslit->add_flag("--gnuplot", common.gnuplot, "write a plot script next to --output");
  add_common(twinslit);

  std::size_t trials = 1000;
  auto* gauge = app.add_subcommand("gauge-check", "momentum-space gauge null-space residuals");
  gauge->add_option("--trials", trials);
  gauge->add_option("--seed", common.seed);
  add_common(gauge);

  std::vector<const char*> argv{"gpath"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ostringstream buffer;
  int status = kExitOk;
  try {
    if (common.gnuplot && common.output.empty()) throw UsageError("--gnuplot needs --output");
    if (*graph) cmd_graph(n, args, buffer);
    else if (*scc) status = cmd_scc(n, degree, from_vertices, links_file, alpha, beta, common.seed, args, buffer, err);
    else if (*spectrum) cmd_spectrum(n, beta, lorentzian, method, args, buffer);
    else if (*partition) cmd_partition(n, source, alpha, beta, oracle, budget, common.seed, args, buffer);
    else if (*twinslit) cmd_twinslit(n, d, L, lambda, range, args, buffer);
    else if (*gauge) cmd_gauge(trials, common.seed, args, buffer);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  try {
    if (common.output.empty()) {
      out << buffer.str();
    } else {
      const auto path = resolve_output(common.output);
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot write '" + path.string() + "'");
      f << buffer.str();
      f.close();
      if (common.gnuplot) emit_plot_script(path);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return status;
}

}  // namespace gpath::cli
