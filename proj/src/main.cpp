#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "orthobound/bounds.hpp"
#include "orthobound/ffunc.hpp"
#include "orthobound/mfunc.hpp"
#include "orthobound/quadrature.hpp"
#include "orthobound/solver.hpp"
#include "orthobound/specfun.hpp"
#include "orthobound/verify.hpp"

namespace {

namespace ob = orthobound;
using nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;
constexpr int kDimCap = 2000;

struct GlobalOpts {
  std::string format = "plain";
  int precision = 0;  // 0 = format default: 17 machine, 6 plain
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  long max_evals = 2000000;
  double mn_delta = 1e-3;
  double mn_big_b = 1e3;
  double root_tol = ob::solver::kDefaultRootTol;
  bool seedless = false;
};

int out_precision(const GlobalOpts& g) {
  if (g.precision > 0) return g.precision;
  return g.format == "plain" ? 6 : 17;
}

std::string fmt_num(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
  return buf;
}

// Numbers are rounded to the output precision before they reach any
// serializer, so CSV, JSON, and plain renderings of one run carry
// identical values.
double rounded(double v, int prec) {
  return std::strtod(fmt_num(v, prec).c_str(), nullptr);
}

ob::quad::Options quad_opts(const GlobalOpts& g) {
  ob::quad::Options o;
  o.abs_tol = g.abs_tol;
  o.rel_tol = g.rel_tol;
  o.max_evals = g.max_evals;
  return o;
}

ob::mfunc::MnConfig mn_config(const GlobalOpts& g) {
  ob::mfunc::MnConfig c;
  c.delta = g.mn_delta;
  c.big_b = g.mn_big_b;
  c.oracle_max_evals = g.max_evals;
  return c;
}

void check_dim_cap(int n) {
  if (n > kDimCap)
    throw std::invalid_argument("dimension ranges are capped at n <= 2000");
}

std::pair<int, int> parse_dim_range(const std::string& s) {
  const auto bad = [&]() {
    return std::invalid_argument("bad dimension range '" + s +
                                 "' (expected e.g. 3..8 or 5)");
  };
  try {
    const auto pos = s.find("..");
    if (pos == std::string::npos) {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw bad();
      return {v, v};
    }
    std::size_t used = 0;
    const int lo = std::stoi(s.substr(0, pos), &used);
    if (used != pos) throw bad();
    const std::string rest = s.substr(pos + 2);
    const int hi = std::stoi(rest, &used);
    if (used != rest.size()) throw bad();
    if (lo > hi) throw bad();
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw bad();
  } catch (const std::out_of_range&) {
    throw bad();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string cell_to_string(const ordered_json& v, int prec) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) return fmt_num(v.get<double>(), prec);
  return v.dump();
}

void emit_csv(const std::vector<ordered_json>& rows, int prec) {
  if (rows.empty()) return;
  std::string header;
  for (const auto& item : rows.front().items()) {
    if (!header.empty()) header += ",";
    header += csv_field(item.key());
  }
  std::cout << header << "\n";
  for (const auto& row : rows) {
    std::string line;
    for (const auto& item : row.items()) {
      if (!line.empty()) line += ",";
      line += csv_field(cell_to_string(item.value(), prec));
    }
    std::cout << line << "\n";
  }
}

void emit_plain_single(const ordered_json& row, int prec) {
  std::size_t width = 0;
  for (const auto& item : row.items()) width = std::max(width, item.key().size());
  for (const auto& item : row.items()) {
    std::cout << item.key() << std::string(width - item.key().size(), ' ')
              << " = " << cell_to_string(item.value(), prec) << "\n";
  }
}

void emit_plain_table(const std::vector<ordered_json>& rows, int prec) {
  if (rows.empty()) {
    std::cout << "(no rows)\n";
    return;
  }
  std::vector<std::string> keys;
  for (const auto& item : rows.front().items()) keys.push_back(item.key());
  std::vector<std::size_t> width(keys.size());
  std::vector<std::vector<std::string>> cells;
  cells.push_back(keys);
  for (const auto& row : rows) {
    std::vector<std::string> line;
    std::size_t i = 0;
    for (const auto& item : row.items()) {
      (void)i;
      line.push_back(cell_to_string(item.value(), prec));
    }
    cells.push_back(std::move(line));
  }
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], line[i].size());
  for (const auto& line : cells) {
    std::string out;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out += "  ";
      out += line[i];
      if (i + 1 < line.size()) out += std::string(width[i] - line[i].size(), ' ');
    }
    std::cout << out << "\n";
  }
}

// single_object: eval/solve/bound results are one JSON object; tables are a
// JSON array of row objects.
void emit_rows(const GlobalOpts& g, const std::vector<ordered_json>& rows,
               bool single_object) {
  const int prec = out_precision(g);
  if (g.format == "json") {
    if (single_object && rows.size() == 1) {
      std::cout << rows.front().dump(2) << "\n";
    } else {
      std::cout << ordered_json(rows).dump(2) << "\n";
    }
    return;
  }
  if (g.format == "csv") {
    emit_csv(rows, prec);
    return;
  }
  if (single_object && rows.size() == 1) {
    emit_plain_single(rows.front(), prec);
  } else {
    emit_plain_table(rows, prec);
  }
}

void emit_verify(const GlobalOpts& g, const ob::verify::Report& rep) {
  const int prec = out_precision(g);
  if (g.format == "json") {
    ordered_json doc;
    doc["suite"] = rep.suite;
    doc["all_pass"] = rep.all_pass;
    ordered_json cases = ordered_json::array();
    for (const auto& c : rep.cases) {
      ordered_json jc;
      jc["inputs"] = c.inputs;
      jc["lhs"] = rounded(c.lhs, prec);
      jc["rhs"] = rounded(c.rhs, prec);
      jc["margin"] = rounded(c.margin, prec);
      jc["pass"] = c.pass;
      cases.push_back(std::move(jc));
    }
    doc["cases"] = std::move(cases);
    std::cout << doc.dump(2) << "\n";
    return;
  }
  if (g.format == "csv") {
    std::vector<ordered_json> rows;
    rows.reserve(rep.cases.size());
    for (const auto& c : rep.cases) {
      ordered_json row;
      row["suite"] = rep.suite;
      row["inputs"] = c.inputs;
      row["lhs"] = rounded(c.lhs, prec);
      row["rhs"] = rounded(c.rhs, prec);
      row["margin"] = rounded(c.margin, prec);
      row["pass"] = c.pass;
      rows.push_back(std::move(row));
    }
    emit_csv(rows, prec);
    return;
  }
  std::size_t passed = 0;
  for (const auto& c : rep.cases) passed += c.pass ? 1 : 0;
  std::cout << "suite " << rep.suite << ": " << rep.cases.size() << " cases, "
            << passed << " passed, " << (rep.cases.size() - passed)
            << " failed\n";
  for (const auto& c : rep.cases) {
    if (c.pass) continue;
    std::cout << "FAIL " << c.inputs << "  lhs=" << fmt_num(c.lhs, prec)
              << " rhs=" << fmt_num(c.rhs, prec)
              << " margin=" << fmt_num(c.margin, prec) << "\n";
  }
  std::cout << "all_pass = " << (rep.all_pass ? "true" : "false") << "\n";
}

struct EvalArgs {
  std::string fn;
  int n = 0;
  double b = 0.0;
  double l = 0.0;
  double x = 0.0;
  bool with_oracle = false;
  bool has_n = false, has_b = false, has_l = false, has_x = false;
};

void require(bool have, const char* what) {
  if (!have) throw std::invalid_argument(std::string("missing required option ") + what);
}

int cmd_eval(const GlobalOpts& g, const EvalArgs& a) {
  const int prec = out_precision(g);
  ordered_json row;
  row["function"] = a.fn;
  auto putd = [&](const char* k, double v) { row[k] = rounded(v, prec); };
  if (a.has_n) check_dim_cap(a.n);

  if (a.fn == "F3") {
    require(a.has_l, "--l");
    putd("l", a.l);
    putd("value", ob::ffunc::f3_closed(a.l));
  } else if (a.fn == "Fn") {
    require(a.has_n, "--n");
    require(a.has_l, "--l");
    const auto r = ob::ffunc::fn_integral(a.n, a.l, quad_opts(g));
    row["n"] = a.n;
    putd("l", a.l);
    putd("value", r.value);
    putd("abs_error_estimate", r.abs_error_estimate);
    row["n_evals"] = r.n_evals;
    row["converged"] = r.converged;
  } else if (a.fn == "Mn") {
    require(a.has_n, "--n");
    require(a.has_b, "--b");
    const auto mv = ob::mfunc::mn(a.n, a.b, mn_config(g));
    row["n"] = a.n;
    putd("b", a.b);
    putd("value", mv.value);
    row["regime"] = ob::mfunc::regime_name(mv.regime);
    if (a.with_oracle) {
      const auto r = ob::mfunc::mn_oracle(a.n, a.b, quad_opts(g));
      putd("oracle_value", r.value);
      putd("rel_gap", std::fabs(mv.value - r.value) / std::fabs(r.value));
      row["oracle_n_evals"] = r.n_evals;
    }
  } else if (a.fn == "Mn-oracle") {
    require(a.has_n, "--n");
    require(a.has_b, "--b");
    const auto r = ob::mfunc::mn_oracle(a.n, a.b, quad_opts(g));
    row["n"] = a.n;
    putd("b", a.b);
    putd("value", r.value);
    putd("abs_error_estimate", r.abs_error_estimate);
    row["n_evals"] = r.n_evals;
    row["converged"] = r.converged;
  } else if (a.fn == "Sn") {
    require(a.has_n, "--n");
    require(a.has_x, "--x");
    row["n"] = a.n;
    putd("x", a.x);
    putd("value", ob::specfun::cosh_power_integral(a.n, a.x));
  } else if (a.fn == "basmajian") {
    require(a.has_n, "--n");
    require(a.has_l, "--l");
    row["n"] = a.n;
    putd("l", a.l);
    putd("value", ob::bounds::basmajian_term(a.n, a.l));
  } else if (a.fn == "Kn") {
    require(a.has_n, "--n");
    const auto kc = ob::ffunc::kernel_constants(a.n);
    row["n"] = a.n;
    putd("value", kc.k_n);
    putd("floor", kc.k_n_floor);
  } else if (a.fn == "gn" || a.fn == "hn") {
    require(a.has_n, "--n");
    const auto cb = ob::bounds::constants_bundle(a.n);
    row["n"] = a.n;
    putd("value", a.fn == "gn" ? cb.g_n : cb.h_n);
  } else {
    throw std::invalid_argument("eval: unknown function '" + a.fn +
                                "' (expected Fn, F3, Mn, Mn-oracle, Sn, "
                                "basmajian, Kn, gn, or hn)");
  }
  emit_rows(g, {row}, true);
  return 0;
}

int cmd_table(const GlobalOpts& g, const std::string& quantity,
              const std::string& range) {
  const auto [lo, hi] = parse_dim_range(range);
  check_dim_cap(hi);
  if (lo < 2) throw std::invalid_argument("table: dimension range starts at 2");
  const int prec = out_precision(g);
  std::vector<ordered_json> rows;
  auto putd = [&](ordered_json& row, const char* k, double v) {
    row[k] = rounded(v, prec);
  };

  if (quantity == "gn" || quantity == "hn") {
    if (lo < 3)
      throw std::invalid_argument("table " + quantity + ": needs n >= 3");
    for (int n = lo; n <= hi; ++n) {
      const auto cb = ob::bounds::constants_bundle(n);
      ordered_json row;
      row["n"] = n;
      putd(row, "value", quantity == "gn" ? cb.g_n : cb.h_n);
      rows.push_back(std::move(row));
    }
  } else if (quantity == "Kn") {
    if (lo < 3) throw std::invalid_argument("table Kn: needs n >= 3");
    for (int n = lo; n <= hi; ++n) {
      const auto kc = ob::ffunc::kernel_constants(n);
      ordered_json row;
      row["n"] = n;
      putd(row, "value", kc.k_n);
      putd(row, "floor", kc.k_n_floor);
      rows.push_back(std::move(row));
    }
  } else if (quantity == "odd-floor") {
    for (int n = lo; n <= hi; ++n) {
      if (n % 2 == 0 || n < 3) continue;
      ordered_json row;
      row["n"] = n;
      putd(row, "value", ob::bounds::odd_dim_volume_floor(n));
      rows.push_back(std::move(row));
    }
  } else if (quantity == "even-floor") {
    for (int n = lo; n <= hi; ++n) {
      if (n % 2 != 0) continue;
      ordered_json row;
      row["n"] = n;
      putd(row, "value", ob::bounds::even_dim_volume_floor(n));
      rows.push_back(std::move(row));
    }
  } else if (quantity == "comparators") {
    for (int n = lo; n <= hi; ++n) {
      ordered_json row;
      row["n"] = n;
      putd(row, "adeboye_wei", ob::bounds::adeboye_wei_comparator(n));
      if (n % 2 == 1 && n >= 3) {
        putd(row, "miyamoto_kellerhals", ob::bounds::miyamoto_kellerhals_floor(n));
      } else {
        row["miyamoto_kellerhals"] = nullptr;
      }
      rows.push_back(std::move(row));
    }
  } else {
    throw std::invalid_argument(
        "table: unknown quantity '" + quantity +
        "' (expected gn, hn, Kn, odd-floor, even-floor, or comparators)");
  }
  emit_rows(g, rows, false);
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite,
               const std::string& range) {
  int lo = 0, hi = 0;
  if (!range.empty()) {
    std::tie(lo, hi) = parse_dim_range(range);
    check_dim_cap(hi);
    if (lo < 3) throw std::invalid_argument("verify: dimension range starts at 3");
  }
  const auto rep = ob::verify::run_suite(suite, lo, hi);
  emit_verify(g, rep);
  return rep.all_pass ? 0 : 1;
}

int cmd_solve(const GlobalOpts& g, const std::string& problem, int n,
              double area, bool has_n, bool has_area) {
  if (has_n) check_dim_cap(n);
  ob::solver::RootResult r;
  double bound = 0.0;
  ordered_json row;
  row["problem"] = problem;

  if (problem == "dim3-bound") {
    n = 3;
    area = 4.0 * kPi;
    r = ob::solver::general_volume_root(n, area, g.root_tol);
    bound = area * ob::specfun::cosh_power_integral(n, 0.5 * r.root) + r.residual;
  } else if (problem == "collar") {
    require(has_n, "--n");
    require(has_area, "--area");
    r = ob::solver::solve_collar_balance(n, area, g.root_tol);
    bound = 0.5 * area * r.root + r.residual;
  } else if (problem == "l0") {
    require(has_n, "--n");
    require(has_area, "--area");
    r = ob::solver::solve_l0(n, area, g.root_tol);
    bound = 0.5 * area * r.root + r.residual;
  } else if (problem == "volume-bound") {
    require(has_n, "--n");
    require(has_area, "--area");
    r = ob::solver::general_volume_root(n, area, g.root_tol);
    bound = area * ob::specfun::cosh_power_integral(n, 0.5 * r.root) + r.residual;
  } else {
    throw std::invalid_argument(
        "solve: unknown problem '" + problem +
        "' (expected dim3-bound, collar, l0, or volume-bound)");
  }

  const int prec = out_precision(g);
  row["n"] = n;
  row["area"] = rounded(area, prec);
  row["root"] = rounded(r.root, prec);
  row["residual"] = rounded(r.residual, prec);
  row["iterations"] = r.iterations;
  row["bound"] = rounded(bound, prec);
  emit_rows(g, {row}, true);
  return 0;
}

int cmd_bound(const GlobalOpts& g, const std::string& problem, int n,
              double volume, double area, double systole, bool has_n,
              bool has_volume, bool has_area, bool has_systole) {
  require(has_n, "--n");
  check_dim_cap(n);
  const int prec = out_precision(g);
  ordered_json row;
  row["problem"] = problem;
  row["n"] = n;
  auto putd = [&](const char* k, double v) { row[k] = rounded(v, prec); };

  auto put_report = [&](const ob::bounds::BoundReport& rep) {
    row["input_kind"] = ob::bounds::input_kind_name(rep.input_kind);
    putd("input_value", rep.input_value);
    putd("bound_value", rep.bound_value);
    row["branch"] = ob::bounds::branch_name(rep.branch);
    putd("alternative", rep.alternative);
    putd("g_n", rep.constants.g_n);
    putd("h_n", rep.constants.h_n);
  };

  if (problem == "ortholength") {
    require(has_volume, "--volume");
    put_report(ob::bounds::ortholength_bound(n, volume));
  } else if (problem == "volume-from-boundary") {
    require(has_area, "--area");
    put_report(ob::bounds::volume_vs_boundary(n, area));
  } else if (problem == "bt") {
    require(has_systole, "--systole");
    row["input_kind"] = "systole";
    putd("input_value", systole);
    putd("bound_value", ob::bounds::bt_volume_bound(n, systole));
  } else if (problem == "dichotomy") {
    putd("bound_value", ob::bounds::dichotomy_bound(n));
    putd("g_n", ob::bounds::constants_bundle(n).g_n);
  } else {
    throw std::invalid_argument(
        "bound: unknown problem '" + problem +
        "' (expected ortholength, volume-from-boundary, bt, or dichotomy)");
  }
  emit_rows(g, {row}, true);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;
  CLI::App app{
      "orthobound: Bridgeman-Kahn ortho-spectrum kernels, explicit bound "
      "constants, and verification suites for hyperbolic n-manifolds with "
      "geodesic boundary"};
  app.require_subcommand(1);

  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "plain"}))
      ->capture_default_str();
  app.add_option("--precision", g.precision,
                 "Significant digits (default: 17 machine formats, 6 plain)")
      ->check(CLI::Range(1, 17));
  app.add_option("--abs-tol", g.abs_tol, "Quadrature absolute tolerance")
      ->envname("ORTHOBOUND_ABS_TOL")
      ->capture_default_str();
  app.add_option("--rel-tol", g.rel_tol, "Quadrature relative tolerance")
      ->envname("ORTHOBOUND_REL_TOL")
      ->capture_default_str();
  app.add_option("--max-evals", g.max_evals, "Quadrature evaluation budget")
      ->envname("ORTHOBOUND_MAX_EVALS")
      ->capture_default_str();
  app.add_option("--mn-delta", g.mn_delta,
                 "Near-one band half-width for the M_n regime switch")
      ->envname("ORTHOBOUND_MN_DELTA")
      ->capture_default_str();
  app.add_option("--mn-big-b", g.mn_big_b,
                 "Large-argument threshold for the M_n regime switch")
      ->envname("ORTHOBOUND_MN_BIG_B")
      ->capture_default_str();
  app.add_option("--root-tol", g.root_tol, "Root solver tolerance")
      ->envname("ORTHOBOUND_ROOT_TOL")
      ->capture_default_str();
  app.add_flag("--seedless", g.seedless,
               "Accepted for scripting compatibility; every evaluation here "
               "is deterministic already");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate a single value");
  eval->fallthrough();
  eval->add_option("function", ea.fn,
                   "Fn | F3 | Mn | Mn-oracle | Sn | basmajian | Kn | gn | hn")
      ->required();
  auto* e_n = eval->add_option("--n", ea.n, "Dimension (n >= 3)");
  auto* e_b = eval->add_option("--b", ea.b, "Kernel argument b > 1");
  auto* e_l = eval->add_option("--l", ea.l, "Orthogeodesic length l > 0");
  auto* e_x = eval->add_option("--x", ea.x, "Integral upper limit");
  eval->add_flag("--with-oracle", ea.with_oracle,
                 "Also run the double-integral oracle (Mn only)");

  std::string t_quantity, t_range;
  auto* table = app.add_subcommand("table", "Emit one row per dimension");
  table->fallthrough();
  table
      ->add_option("quantity", t_quantity,
                   "gn | hn | Kn | odd-floor | even-floor | comparators")
      ->required();
  table->add_option("--n", t_range, "Dimension range, e.g. 3..6")->required();

  std::string v_suite, v_range;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->fallthrough();
  verify->add_option("suite", v_suite, "Suite name (or 'all')")
      ->required()
      ->check(CLI::IsMember(ob::verify::suite_names()));
  verify->add_option("--n", v_range, "Optional dimension-range filter, e.g. 3..8");

  std::string s_problem;
  int s_n = 0;
  double s_area = 0.0;
  auto* solve = app.add_subcommand("solve", "Root solves for balance equations");
  solve->fallthrough();
  solve
      ->add_option("problem", s_problem,
                   "dim3-bound | collar | l0 | volume-bound")
      ->required();
  auto* s_n_opt = solve->add_option("--n", s_n, "Dimension (n >= 3)");
  auto* s_area_opt = solve->add_option("--area", s_area, "Boundary volume");

  std::string b_problem;
  int b_n = 0;
  double b_volume = 0.0, b_area = 0.0, b_systole = 0.0;
  auto* bound = app.add_subcommand("bound", "Explicit theorem-level bounds");
  bound->fallthrough();
  bound
      ->add_option("problem", b_problem,
                   "ortholength | volume-from-boundary | bt | dichotomy")
      ->required();
  auto* b_n_opt = bound->add_option("--n", b_n, "Dimension (n >= 3)");
  auto* b_vol_opt = bound->add_option("--volume", b_volume, "Manifold volume");
  auto* b_area_opt = bound->add_option("--area", b_area, "Boundary volume");
  auto* b_sys_opt = bound->add_option("--systole", b_systole, "Systole");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  ea.has_n = e_n->count() > 0;
  ea.has_b = e_b->count() > 0;
  ea.has_l = e_l->count() > 0;
  ea.has_x = e_x->count() > 0;

  try {
    if (*eval) return cmd_eval(g, ea);
    if (*table) return cmd_table(g, t_quantity, t_range);
    if (*verify) return cmd_verify(g, v_suite, v_range);
    if (*solve)
      return cmd_solve(g, s_problem, s_n, s_area, s_n_opt->count() > 0,
                       s_area_opt->count() > 0);
    if (*bound)
      return cmd_bound(g, b_problem, b_n, b_volume, b_area, b_systole,
                       b_n_opt->count() > 0, b_vol_opt->count() > 0,
                       b_area_opt->count() > 0, b_sys_opt->count() > 0);
  } catch (const ob::quad::BudgetExceeded& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
