#include "treeharm/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "treeharm/abel.hpp"
#include "treeharm/census.hpp"
#include "treeharm/engine.hpp"
#include "treeharm/io.hpp"
#include "treeharm/spherical.hpp"
#include "treeharm/zline.hpp"

namespace treeharm {

namespace {

struct RunConfig {
  std::string kernel_path;
  std::string symbol_path;
  std::string zkernel_path;
  std::string out_path;
  int q = 2;
  double p = 1.5;
  int radius = -1;
  int grid = 512;
  double shift = 0.0;
  std::uint64_t seed = 42;
  int threads = 1;
  bool deterministic = false;
  int instances = 100;
  std::vector<int> hilbert_n{64, 256, 1024};
};

// Writes to --out when given, otherwise to the command's output stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (cfg.out_path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw IoError("cannot open output file '" + cfg.out_path + "'");
  body(file);
  if (!file) throw IoError("failed writing '" + cfg.out_path + "'");
}

void emit_json(const RunConfig& cfg, std::ostream& out, const nlohmann::json& doc) {
  emit(cfg, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
}

int threads_of(const RunConfig& cfg) {
  if (cfg.deterministic) return 1;
  return std::max(1, cfg.threads);
}

TorusSymbol load_symbol_csv(const std::string& path, const TreeParams& params) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open symbol file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "s,re,im") throw IoError("symbol CSV must start with header s,re,im");
  std::vector<double> nodes;
  TorusSymbol sym{params, 0.0, {}};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c)) {
      throw IoError("malformed symbol row: " + line);
    }
    try {
      nodes.push_back(std::stod(a));
      sym.samples.emplace_back(std::stod(b), std::stod(c));
    } catch (const std::exception&) {
      throw IoError("non-numeric symbol row: " + line);
    }
  }
  if (sym.samples.empty()) throw IoError("symbol CSV has no rows");
  for (int n = 0; n < sym.size(); ++n) {
    if (std::abs(nodes[n] - sym.node(n)) > 1e-9 * params.tau()) {
      throw IoError("symbol CSV nodes do not match the grid s_n = -tau/2 + n tau/N for q = " +
                    std::to_string(params.q()));
    }
  }
  return sym;
}

ZKernel load_zkernel_csv(const std::string& path, const TreeParams& params) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ZKernel file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "d,re,im") throw IoError("ZKernel CSV must start with header d,re,im");
  std::vector<std::pair<int, cplx>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c)) {
      throw IoError("malformed ZKernel row: " + line);
    }
    try {
      rows.emplace_back(std::stoi(a), cplx(std::stod(b), std::stod(c)));
    } catch (const std::exception&) {
      throw IoError("non-numeric ZKernel row: " + line);
    }
  }
  if (rows.empty()) return ZKernel::zero(params);
  int lo = rows.front().first, hi = lo;
  for (const auto& r : rows) {
    lo = std::min(lo, r.first);
    hi = std::max(hi, r.first);
  }
  if (hi - lo > 10'000'000) throw IoError("ZKernel support is too wide");
  std::vector<cplx> v(hi - lo + 1);
  for (const auto& r : rows) v[r.first - lo] += r.second;
  return {params, lo, std::move(v)};
}

int cmd_transform(const RunConfig& cfg, std::ostream& out) {
  const RadialKernel k = load_kernel(cfg.kernel_path);
  if (cfg.grid < 1 || !is_power_of_two(cfg.grid)) throw std::invalid_argument("--grid must be a power of two");
  const TorusSymbol sym = sample_spherical_transform(k, cfg.grid, cfg.shift);
  emit(cfg, out, [&](std::ostream& o) { write_symbol_csv(sym, o); });
  return kExitOk;
}

int cmd_invert(const RunConfig& cfg, std::ostream& out) {
  if (cfg.radius < 0) throw std::invalid_argument("invert needs --radius (support radius D of the output)");
  const TreeParams P(cfg.q);
  const TorusSymbol sym = load_symbol_csv(cfg.symbol_path, P);
  std::vector<cplx> values(cfg.radius + 1);
  for (int d = 0; d <= cfg.radius; ++d) values[d] = inverse_transform(sym, d);
  emit_json(cfg, out, kernel_to_json(RadialKernel(P, std::move(values))));
  return kExitOk;
}

int cmd_abel(const RunConfig& cfg, std::ostream& out) {
  const AbelSequence a = abel_forward(load_kernel(cfg.kernel_path));
  emit(cfg, out, [&](std::ostream& o) { write_abel_csv(a, o); });
  return kExitOk;
}

int cmd_norms(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.zkernel_path.empty()) {
    const ZKernel F = load_zkernel_csv(cfg.zkernel_path, TreeParams(cfg.q));
    emit_json(cfg, out, to_json(cvp_interval(F, cfg.p)));
    return kExitOk;
  }
  const RadialKernel k = load_kernel(cfg.kernel_path);
  const SymbolNormReport rep = symbol_norm_report(k, cfg.p);
  nlohmann::json doc = to_json(rep.interval);
  doc["weyl_residual"] = rep.weyl_residual;
  doc["p"] = cfg.p;
  doc["q"] = k.q();
  emit_json(cfg, out, doc);
  return kExitOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const RadialKernel k = load_kernel(cfg.kernel_path);
  const int R = cfg.radius < 0 ? 10 : cfg.radius;
  NormEstimateOptions opt;
  opt.seed = cfg.seed;
  opt.threads = threads_of(cfg);
  const TheoremReport rep = theorem_report(k, cfg.p, R, cfg.grid, opt);
  emit_json(cfg, out, to_json(rep));
  return rep.sandwich_ok ? kExitOk : kExitViolation;
}

int cmd_census(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int R = cfg.radius < 0 ? 4 : cfg.radius;
  const TreeBall ball(TreeParams(cfg.q), R);
  const CensusTable table = horocycle_census(ball);
  emit(cfg, out, [&](std::ostream& o) { write_census_csv(table, o); });
  const std::int64_t bad = census_model_mismatches(table) + table.max_law_violations;
  if (bad != 0) {
    err << "census disagrees with the horocycle model in " << bad << " places\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_transference(const RunConfig& cfg, std::ostream& out) {
  const int R = cfg.radius < 0 ? 8 : cfg.radius;
  const int qs[] = {cfg.q};
  const double ps[] = {cfg.p};
  const TransferenceSuiteResult res = transference_suite(cfg.seed, cfg.instances, qs, ps, R);
  emit(cfg, out, [&](std::ostream& o) {
    o << res.passed << '/' << res.instances << " pass (worst lhs/rhs = " << format_double(res.worst_ratio)
      << ")\n";
  });
  return res.passed == res.instances ? kExitOk : kExitViolation;
}

int cmd_hilbert(const RunConfig& cfg, std::ostream& out) {
  const TreeParams P(cfg.q);
  bool ok = true;
  double previous = -1.0;
  std::ostringstream body;
  body << "N,lower,upper,log_N,harmonic_sum\n";
  for (int N : cfg.hilbert_n) {
    const NormInterval iv = cvp_interval(harmonic_truncation(P, N), 2.0);
    double harmonic = 0.0;
    for (int j = N; j >= 1; --j) harmonic += 1.0 / j;
    const double logN = std::log(static_cast<double>(N));
    ok = ok && iv.lower >= logN && iv.lower > previous;
    previous = iv.lower;
    body << N << ',' << format_double(iv.lower) << ',' << format_double(iv.upper) << ',' << format_double(logN)
         << ',' << format_double(harmonic) << '\n';
  }
  emit(cfg, out, [&](std::ostream& o) { o << body.str(); });
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spherical harmonic analysis on homogeneous trees"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Output file (default: standard output)");
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--deterministic", cfg.deterministic, "Single-threaded, reproducible reductions");
    sub->add_option("--seed", cfg.seed, "Seed for randomised trials");
  };
  auto add_kernel = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--kernel", cfg.kernel_path, "Radial kernel JSON");
    if (required) o->required();
  };
  auto add_q = [&](CLI::App* sub) { sub->add_option("--q", cfg.q, "Branching number q >= 2"); };
  auto add_p = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--p", cfg.p, "Exponent p >= 1");
    if (required) o->required();
  };
  auto add_radius = [&](CLI::App* sub) { sub->add_option("--radius", cfg.radius, "Ball radius R"); };
  auto add_grid = [&](CLI::App* sub) { sub->add_option("--grid", cfg.grid, "Grid size N (power of two)"); };

  auto* transform = app.add_subcommand("transform", "Sample the spherical transform on the torus");
  add_kernel(transform, true);
  add_grid(transform);
  transform->add_option("--shift", cfg.shift, "Sample along Im z = shift");
  add_common(transform);

  auto* invert = app.add_subcommand("invert", "Invert a sampled symbol back to a radial kernel");
  invert->add_option("--symbol", cfg.symbol_path, "Symbol CSV (s,re,im)")->required();
  add_q(invert);
  add_radius(invert);
  add_common(invert);

  auto* abel = app.add_subcommand("abel", "Abel transform of a radial kernel");
  add_kernel(abel, true);
  add_common(abel);

  auto* norms = app.add_subcommand("norms", "Convolutor norm interval of the shifted symbol");
  add_kernel(norms, false);
  norms->add_option("--zkernel", cfg.zkernel_path, "Kernel on Z as CSV (d,re,im) instead of --kernel");
  add_q(norms);
  add_p(norms, true);
  add_common(norms);

  auto* check = app.add_subcommand("check", "Certified upper and compression lower bounds");
  add_kernel(check, true);
  add_p(check, true);
  add_radius(check);
  add_grid(check);
  add_common(check);

  auto* census = app.add_subcommand("census", "Horocycle census of a ball");
  add_q(census);
  add_radius(census);
  add_common(census);

  auto* transference = app.add_subcommand("transference", "Randomised transference inequality suite");
  add_q(transference);
  add_p(transference, false);
  add_radius(transference);
  transference->add_option("--instances", cfg.instances, "Number of random instances");
  add_common(transference);

  auto* hilbert = app.add_subcommand("hilbert", "Growth of truncated discrete Hilbert kernels");
  hilbert->add_option("--n", cfg.hilbert_n, "Truncation lengths")->expected(1, -1);
  add_q(hilbert);
  add_common(hilbert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, out, msg);
    err << msg.str();
    return e.get_exit_code() == 0 ? kExitOk : kExitIo;
  }

  try {
    if (norms->parsed() && cfg.kernel_path.empty() && cfg.zkernel_path.empty()) {
      throw std::invalid_argument("norms needs --kernel or --zkernel");
    }
    if (transform->parsed()) return cmd_transform(cfg, out);
    if (invert->parsed()) return cmd_invert(cfg, out);
    if (abel->parsed()) return cmd_abel(cfg, out);
    if (norms->parsed()) return cmd_norms(cfg, out);
    if (check->parsed()) return cmd_check(cfg, out);
    if (census->parsed()) return cmd_census(cfg, out, err);
    if (transference->parsed()) return cmd_transference(cfg, out);
    if (hilbert->parsed()) return cmd_hilbert(cfg, out);
  } catch (const ScopeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitScope;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace treeharm
