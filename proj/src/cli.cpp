#include "turandet/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "turandet/christoffel.hpp"
#include "turandet/errors.hpp"
#include "turandet/estimator.hpp"
#include "turandet/oracle.hpp"
#include "turandet/parallel.hpp"
#include "turandet/recurrence.hpp"
#include "turandet/reference.hpp"
#include "turandet/table.hpp"
#include "turandet/turan.hpp"

namespace turandet::cli {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return std::isfinite(v) ? fmt::format("{:.17g}", v) : std::string{}; }

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string_view error_kind(const std::exception& e) {
  if (dynamic_cast<const OutOfRangeError*>(&e)) return "out-of-range";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const ArgumentError*>(&e)) return "argument";
  if (dynamic_cast<const FormatError*>(&e)) return "format";
  if (dynamic_cast<const DiagnosticError*>(&e)) return "diagnostic";
  if (dynamic_cast<const ModeError*>(&e)) return "mode";
  if (dynamic_cast<const HypothesisError*>(&e)) return "hypothesis";
  if (dynamic_cast<const OverflowError*>(&e)) return "overflow";
  if (dynamic_cast<const DegenerateError*>(&e)) return "degenerate";
  if (dynamic_cast<const NumericError*>(&e)) return "numeric";
  if (dynamic_cast<const UnsupportedError*>(&e)) return "unsupported";
  return "error";
}

std::size_t default_n(const RunConfig& c) {
  if (!c.ns.empty()) return c.ns.back();
  if (c.command == "oracle-check") return 200;
  if (c.command == "poly-eval") return 10;
  return 100;
}

json meta(const RunConfig& c) {
  json m;
  m["command"] = c.command;
  m["family"] = c.family;
  m["t"] = c.t;
  m["lambda"] = c.lambda;
  m["phi"] = c.phi;
  m["beta"] = c.beta;
  m["kappa"] = c.kappa;
  m["epsilon"] = c.epsilon;
  if (!c.file.empty()) m["file"] = c.file;
  m["mode"] = c.mode;
  m["N"] = c.N;
  m["n"] = c.ns;
  if (c.x) m["x"] = *c.x;
  if (c.xmin) m["xmin"] = *c.xmin;
  if (c.xmax) m["xmax"] = *c.xmax;
  m["points"] = c.points;
  m["residue"] = c.residue;
  if (c.tol) m["tol"] = *c.tol;
  if (!c.preset.empty()) m["preset"] = c.preset;
  m["m"] = c.m;
  m["M"] = c.M;
  return m;
}

GridSpec grid_for(const RunConfig& c, GridSpec fallback) {
  if (c.xmin) fallback.xmin = *c.xmin;
  if (c.xmax) fallback.xmax = *c.xmax;
  fallback.points = c.points;
  if (!(fallback.xmin < fallback.xmax)) {
    throw UsageError(fmt::format("grid needs xmin < xmax (got {} and {})", fallback.xmin, fallback.xmax));
  }
  return fallback;
}

EstimatorKind resolve_kind(const RunConfig& c, const CoefficientSequence& seq) {
  if (c.command == "christoffel") return EstimatorKind::Christoffel;
  if (c.command == "pair") return EstimatorKind::Pair;
  if (c.mode == "regular") return EstimatorKind::Regular;
  if (c.mode == "critical") return EstimatorKind::Critical;
  if (c.mode == "christoffel") return EstimatorKind::Christoffel;
  if (c.mode == "pair") return EstimatorKind::Pair;
  return auto_mode(seq, c.N) == Mode::Regular ? EstimatorKind::Regular : EstimatorKind::Critical;
}

Mode turan_mode(const RunConfig& c, const CoefficientSequence& seq) {
  if (c.mode == "regular") return Mode::Regular;
  if (c.mode == "critical") return Mode::Critical;
  if (c.mode == "auto") return auto_mode(seq, c.N);
  throw UsageError(fmt::format("--mode {} is not a Turán mode", c.mode));
}

// Density from the adaptive limit G(x) of S_n instead of a fixed n.
double adaptive_density(const CoefficientSequence& seq, const RunConfig& c, const LimitData& limits,
                        double x, std::size_t n_max) {
  GLimitOptions opts;
  opts.tol = *c.tol;
  opts.n_max = n_max;
  opts.residue = c.residue;
  if (limits.mode == Mode::Regular) {
    const double discr = discr_regular_limit(limits).discr;
    if (discr >= 0.0) {
      throw HypothesisError(fmt::format("limit matrix has discr F = {} >= 0", discr));
    }
    const auto g = g_limit(seq, c.N, x, Mode::Regular, opts);
    return std::sqrt(-discr) / (2.0 * std::numbers::pi * std::abs(g.value));
  }
  const auto cf = critical_forbidden(c.N, limits.critical_q(), limits.s);
  if (cf.forbids(x) || cf.h(x) < 0.0) {
    throw DomainError(fmt::format("x = {} lies in the forbidden interval [{}, {}]", x,
                                  cf.x_minus.value_or(kNaN), cf.x_plus.value_or(kNaN)));
  }
  const auto g = g_limit(seq, c.N, x, Mode::Critical, opts);
  return std::sqrt(cf.h(x)) / (2.0 * std::numbers::pi * std::abs(g.value));
}

void emit(const RunConfig& c, std::ostream& out, const std::string& body) {
  if (c.output.empty()) {
    out << body;
    return;
  }
  std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
  if (!f) throw ArgumentError(fmt::format("cannot open {} for writing", c.output));
  f << body;
  if (!f) throw ArgumentError(fmt::format("failed writing {}", c.output));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string run_density(const RunConfig& c) {
  const auto seq = build_sequence(c);
  const auto kind = resolve_kind(c, seq);
  std::size_t n = default_n(c);
  if (kind == EstimatorKind::Critical) n = round_to_residue(n, c.N, c.residue);

  const std::vector<double> xs =
      c.x ? std::vector<double>{*c.x} : grid_for(c, default_grid(seq)).points_vector();

  const auto est = make_estimator(seq, kind, c.N, n);
  std::vector<double> values;
  if (c.tol && est.limits) {
    values = sweep(xs, [&](double x) { return adaptive_density(seq, c, *est.limits, x, n); });
  } else {
    values = estimate_on_grid(seq, est, xs);
  }

  std::vector<double> refs(xs.size(), kNaN);
  if (const auto ref = ReferenceDensity::for_sequence(seq)) {
    refs = sweep(xs, [&](double x) {
      try {
        return (*ref)(x);
      } catch (const DomainError&) {
        return kNaN;  // x = 0 for genhermite with t < 0
      }
    });
  }

  std::ostringstream os;
  json rows = json::array();
  if (c.format == Format::Csv) os << "x,estimate,reference,rel_error\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double ref = refs[i];
    const double rel =
        std::isfinite(ref) && ref >= kReferenceFloor ? std::abs(values[i] - ref) / ref : kNaN;
    if (c.format == Format::Csv) {
      os << num(xs[i]) << ',' << num(values[i]) << ',' << num(ref) << ',' << num(rel) << '\n';
    } else {
      rows.push_back({{"x", xs[i]}, {"estimate", jnum(values[i])}, {"reference", jnum(ref)},
                      {"rel_error", jnum(rel)}});
    }
  }
  if (c.format == Format::Json) {
    json doc;
    auto m = meta(c);
    m["estimator"] = estimator_name(kind);
    m["n_used"] = n;
    doc["meta"] = m;
    doc["rows"] = rows;
    return dump(doc);
  }
  return os.str();
}

std::string run_table(const RunConfig& c) {
  const auto ns = c.ns.empty() ? standard_truncations() : c.ns;
  ErrorTable table;
  if (c.preset == "table1") {
    table = hermite_error_table(ns, grid_for(c, default_grid(CoefficientSequence::gen_hermite(0.0))));
  } else if (c.preset == "table2") {
    table = mp_error_table(ns, grid_for(c, default_grid(CoefficientSequence::meixner_pollaczek(0.5, 1.0))));
  } else {
    const auto seq = build_sequence(c);
    const auto kind = resolve_kind(c, seq);
    table = relative_error_table(seq, kind, c.N, ns, grid_for(c, default_grid(seq)));
  }

  if (c.format == Format::Json) {
    json rows = json::array();
    for (const auto& r : table.rows) {
      rows.push_back({{"row", r.label}, {"N", r.N}, {"mode", estimator_name(r.kind)}, {"cells", r.cells}});
    }
    json doc;
    doc["meta"] = meta(c);
    doc["n"] = table.ns;
    doc["rows"] = rows;
    return dump(doc);
  }
  std::ostringstream os;
  os << "row,N,mode,n,max_rel_error\n";
  for (const auto& r : table.rows) {
    for (std::size_t k = 0; k < table.ns.size(); ++k) {
      os << r.label << ',' << r.N << ',' << estimator_name(r.kind) << ',' << table.ns[k] << ','
         << num(r.cells[k]) << '\n';
    }
  }
  return os.str();
}

std::string run_oracle(const RunConfig& c) {
  const auto seq = build_sequence(c);
  const auto grid = grid_for(c, default_grid(seq));
  const Interval interval{grid.xmin, grid.xmax};
  const auto rule = golub_welsch(seq, c.m);
  const auto kind = resolve_kind(c, seq);
  std::size_t n = default_n(c);
  if (kind == EstimatorKind::Critical) n = round_to_residue(n, c.N, c.residue);
  const auto est = make_estimator(seq, kind, c.N, n);

  struct Line {
    std::string target;
    double discrepancy;
  };
  std::vector<Line> lines;
  lines.push_back({std::string(estimator_name(kind)),
                   cdf_compare(rule, [&](double x) { return est(seq, x); }, interval, grid.points)});
  if (const auto ref = ReferenceDensity::for_sequence(seq)) {
    lines.push_back({"reference", cdf_compare(rule, [&](double x) { return (*ref)(x); }, interval, grid.points)});
  }

  if (c.format == Format::Json) {
    json doc;
    auto m = meta(c);
    m["n_used"] = n;
    m["max_weight"] = rule.max_weight();
    doc["meta"] = m;
    doc["rows"] = json::array();
    for (const auto& l : lines) doc["rows"].push_back({{"target", l.target}, {"discrepancy", l.discrepancy}});
    return dump(doc);
  }
  std::ostringstream os;
  os << "target,m,n,discrepancy\n";
  for (const auto& l : lines) os << l.target << ',' << c.m << ',' << n << ',' << num(l.discrepancy) << '\n';
  return os.str();
}

std::string run_assumptions(const RunConfig& c) {
  const auto seq = build_sequence(c);
  const auto mode = turan_mode(c, seq);
  const auto rep = check_assumptions(seq, c.N, mode, c.M);

  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("mode", std::string(mode_name(rep.mode)));
  kv.emplace_back("N", std::to_string(rep.N));
  kv.emplace_back("M", std::to_string(rep.M));
  kv.emplace_back("carleman_partial", num(rep.carleman_partial));
  kv.emplace_back("growth_exponent", num(rep.growth_exponent));
  kv.emplace_back("carleman_divergent", rep.carleman_divergent ? "true" : "false");
  kv.emplace_back("inv_a_tail", num(rep.inv_a_tail));
  for (const auto& v : rep.variations) {
    const auto key = fmt::format("variation[{};step={}]", v.selector.label(), v.step);
    if (!v.available) {
      kv.emplace_back(key + ".note", v.note);
      continue;
    }
    kv.emplace_back(key + ".partial", num(v.partial));
    kv.emplace_back(key + ".tail_increment", num(v.tail_increment));
  }
  if (rep.limits) {
    const auto& L = rep.limits->limits;
    for (std::size_t i = 0; i < L.q.size(); ++i) kv.emplace_back(fmt::format("limit.q{}", i), num(L.q[i]));
    for (std::size_t i = 0; i < L.r.size(); ++i) kv.emplace_back(fmt::format("limit.r{}", i), num(L.r[i]));
    for (std::size_t i = 0; i < L.s.size(); ++i) kv.emplace_back(fmt::format("limit.s{}", i), num(L.s[i]));
    kv.emplace_back("limit.deviation", num(rep.limits->deviation));
    kv.emplace_back("limit.converged", rep.limits->converged ? "true" : "false");
  }
  if (!rep.limits_note.empty()) kv.emplace_back("limit.note", rep.limits_note);

  if (c.format == Format::Json) {
    json doc;
    doc["meta"] = meta(c);
    json body;
    for (const auto& [k, v] : kv) body[k] = v;
    doc["report"] = body;
    return dump(doc);
  }
  std::ostringstream os;
  os << "quantity,value\n";
  for (const auto& [k, v] : kv) {
    // notes may contain commas
    const bool quote = v.find(',') != std::string::npos;
    os << k << ',' << (quote ? "\"" + v + "\"" : v) << '\n';
  }
  return os.str();
}

std::string run_poly(const RunConfig& c) {
  if (!c.x) throw UsageError("poly-eval needs --x");
  const auto seq = build_sequence(c);
  const auto stream = eval_stream(seq, *c.x, default_n(c));
  if (c.format == Format::Json) {
    json doc;
    doc["meta"] = meta(c);
    doc["rows"] = json::array();
    for (const auto& p : stream) doc["rows"].push_back({{"n", p.n}, {"p", p.hi}});
    return dump(doc);
  }
  std::ostringstream os;
  os << "n,p\n";
  for (const auto& p : stream) os << p.n << ',' << num(p.hi) << '\n';
  return os.str();
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.points < 2) throw UsageError("--points must be at least 2");
  if (c.xmin && c.xmax && !(*c.xmin < *c.xmax)) throw UsageError("--xmin must be below --xmax");
  if (c.N == 0) throw UsageError("--N must be positive");
  if (c.residue >= c.N) throw UsageError(fmt::format("--residue must lie in [0, N) (N = {})", c.N));
  if (!std::is_sorted(c.ns.begin(), c.ns.end()) ||
      std::adjacent_find(c.ns.begin(), c.ns.end()) != c.ns.end()) {
    throw UsageError("--n list must be strictly ascending");
  }
  if (c.ns.size() > 1 && c.command != "table") throw UsageError("only `table` takes a list for --n");
  if (c.family == "custom" && c.file.empty()) throw UsageError("--family custom needs --file");
  if (c.tol && !(*c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.m == 0) throw UsageError("--m must be positive");
}

CoefficientSequence build_sequence(const RunConfig& c) {
  const auto& f = c.family;
  if (f == "genhermite") return CoefficientSequence::gen_hermite(c.t);
  if (f == "mp" || f == "meixnerpollaczek") return CoefficientSequence::meixner_pollaczek(c.lambda, c.phi);
  if (f == "freudasymptotic" || f == "freud") return CoefficientSequence::freud_asymptotic(c.beta);
  if (f == "powerpair") return CoefficientSequence::power_pair(c.kappa, c.epsilon);
  if (f == "powerpairshift") return CoefficientSequence::power_pair_shift(c.kappa);
  if (f == "custom") return load_sequence_file(c.file);
  throw UsageError(fmt::format("unknown family '{}'", f));
}

std::size_t round_to_residue(std::size_t n, std::size_t N, std::size_t residue) {
  if (N == 0 || residue >= N) throw UsageError("residue must lie in [0, N)");
  if (n < residue) throw UsageError(fmt::format("no n <= {} with n = {} (mod {})", n, residue, N));
  const std::size_t rounded = n - (n - residue) % N;
  if (rounded == 0) throw UsageError(fmt::format("no n in [1, {}] with n = {} (mod {})", n, residue, N));
  return rounded;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    std::string body;
    const auto& cmd = config.command;
    if (cmd == "density" || cmd == "christoffel" || cmd == "pair") {
      body = run_density(config);
    } else if (cmd == "table") {
      body = run_table(config);
    } else if (cmd == "oracle-check") {
      body = run_oracle(config);
    } else if (cmd == "assumptions") {
      body = run_assumptions(config);
    } else if (cmd == "poly-eval") {
      body = run_poly(config);
    } else {
      throw UsageError(fmt::format("unknown command '{}'", cmd));
    }
    emit(config, out, body);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << error_kind(e) << " error: " << e.what() << '\n';
    return 1;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthogonality measure densities from recurrence coefficients via scaled Turán determinants"};
  app.name("turandet");
  app.require_subcommand(1);

  RunConfig cfg;
  double x = 0.0, xmin = 0.0, xmax = 0.0, tol = 0.0;
  std::string format = "csv";
  std::map<std::string, CLI::Option*> opt_x, opt_xmin, opt_xmax, opt_tol;

  const auto family_flags = [&](CLI::App* s) {
    s->add_option("--family", cfg.family, "genhermite|mp|meixnerpollaczek|freudasymptotic|powerpair|powerpairshift|custom")
        ->check(CLI::IsMember({"genhermite", "mp", "meixnerpollaczek", "freud", "freudasymptotic", "powerpair",
                               "powerpairshift", "custom"}))
        ->capture_default_str();
    s->add_option("--t", cfg.t, "genhermite exponent, t > -1")->capture_default_str();
    s->add_option("--lambda", cfg.lambda, "Meixner-Pollaczek lambda > 0")->capture_default_str();
    s->add_option("--phi", cfg.phi, "Meixner-Pollaczek phi in (0, pi)")->capture_default_str();
    s->add_option("--beta", cfg.beta, "freudasymptotic exponent >= 1")->capture_default_str();
    s->add_option("--kappa", cfg.kappa, "powerpair/powerpairshift exponent")->capture_default_str();
    s->add_option("--epsilon", cfg.epsilon, "powerpair a_0")->capture_default_str();
    s->add_option("--file", cfg.file, "CSV with header n,a,b for --family custom");
  };
  const auto output_flags = [&](CLI::App* s) {
    s->add_option("--output,-o", cfg.output, "write here instead of stdout");
    s->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  const auto grid_flags = [&](CLI::App* s) {
    const std::string name = s->get_name();
    opt_xmin[name] = s->add_option("--xmin", xmin, "grid start (family default if omitted)");
    opt_xmax[name] = s->add_option("--xmax", xmax, "grid end (family default if omitted)");
    s->add_option("--points", cfg.points, "grid size")->capture_default_str();
  };
  const auto turan_flags = [&](CLI::App* s, bool any_mode) {
    if (any_mode) {
      s->add_option("--mode", cfg.mode, "regular|critical|christoffel|pair|auto")
          ->check(CLI::IsMember({"regular", "critical", "christoffel", "pair", "auto"}))
          ->capture_default_str();
    } else {
      s->add_option("--mode", cfg.mode, "regular|critical|auto")
          ->check(CLI::IsMember({"regular", "critical", "auto"}))
          ->capture_default_str();
    }
    s->add_option("--N", cfg.N, "period of the limit")->capture_default_str();
    s->add_option("--residue", cfg.residue, "critical mode: n is rounded down to this class mod N")
        ->capture_default_str();
  };

  auto* density = app.add_subcommand("density", "Turán density estimate on a grid or at one point");
  auto* table = app.add_subcommand("table", "maximal relative error by truncation index");
  auto* christoffel = app.add_subcommand("christoffel", "Christoffel-function density estimate");
  auto* pair = app.add_subcommand("pair", "two-polynomial density estimate 1/(pi a_n (p_{n-1}^2 + p_n^2))");
  auto* oracle = app.add_subcommand("oracle-check", "CDF discrepancy against the Gauss quadrature rule");
  auto* assumptions = app.add_subcommand("assumptions", "Carleman sum, variation sums and limit estimates");
  auto* poly = app.add_subcommand("poly-eval", "orthonormal polynomial values p_0..p_n at one point");

  for (auto* s : {density, christoffel, pair}) {
    family_flags(s);
    grid_flags(s);
    output_flags(s);
    s->add_option("--n", cfg.ns, "truncation index")->expected(1);
    opt_x[s->get_name()] = s->add_option("--x", x, "single evaluation point instead of a grid");
  }
  turan_flags(density, true);
  opt_tol["density"] = density->add_option("--tol", tol, "use the adaptive limit of S_n with this Cauchy tolerance; --n caps n");

  family_flags(table);
  grid_flags(table);
  output_flags(table);
  turan_flags(table, true);
  table->add_option("--n", cfg.ns, "comma-separated truncation indices")->delimiter(',');
  table->add_option("--preset", cfg.preset, "table1|table2")->check(CLI::IsMember({"table1", "table2"}));

  family_flags(oracle);
  grid_flags(oracle);
  output_flags(oracle);
  turan_flags(oracle, true);
  oracle->add_option("--n", cfg.ns, "truncation index of the estimate (default 200)")->expected(1);
  oracle->add_option("--m", cfg.m, "Gauss nodes")->capture_default_str();

  family_flags(assumptions);
  output_flags(assumptions);
  turan_flags(assumptions, false);
  assumptions->add_option("--M", cfg.M, "horizon")->capture_default_str();

  family_flags(poly);
  output_flags(poly);
  poly->add_option("--n", cfg.ns, "highest degree (default 10)")->expected(1);
  opt_x["poly-eval"] = poly->add_option("--x", x, "evaluation point")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  const auto given = [&](const std::map<std::string, CLI::Option*>& opts) {
    const auto it = opts.find(cfg.command);
    return it != opts.end() && it->second->count() > 0;
  };
  if (given(opt_x)) cfg.x = x;
  if (given(opt_xmin)) cfg.xmin = xmin;
  if (given(opt_xmax)) cfg.xmax = xmax;
  if (given(opt_tol)) cfg.tol = tol;
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  return run(cfg, out, err);
}

}  // namespace turandet::cli
