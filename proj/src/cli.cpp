#include "lfvdw/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "lfvdw/cavity.hpp"
#include "lfvdw/config.hpp"
#include "lfvdw/errors.hpp"
#include "lfvdw/oracle.hpp"
#include "lfvdw/potentials.hpp"

namespace lfvdw::cli {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double kBornTolerance = 0.01;
constexpr double kForceTolerance = 1e-6;

struct Options {
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string positions;
  double tol = 0.0;
  int threads = 1;
};

struct Context {
  config::RunConfig cfg;
  quad::QuadSpec q;
  std::string hash;
  Options opts;
};

// Evaluates f(i) for i in [0, n) on up to `threads` workers; results keep
// index order and the lowest-index exception is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int threads, F f) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += workers) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

// Values that JSON cannot hold (inf) are written as strings.
json num(double v) { return std::isfinite(v) ? json(v) : json(v > 0 ? "inf" : (v < 0 ? "-inf" : "nan")); }

const std::string& require(const std::optional<std::string>& v, const char* key) {
  if (!v) throw ValidationError(std::string("run.") + key + " is required for this command");
  return *v;
}

double require(const std::optional<double>& v, const char* key) {
  if (!v) throw ValidationError(std::string("run.") + key + " is required for this command");
  return *v;
}

const std::vector<double>& require(const std::vector<double>& v, const char* key) {
  if (v.empty()) throw ValidationError(std::string("sweep.") + key + " is required for this command");
  return v;
}

json meta(const Context& ctx) {
  json m{{"version", kVersion}, {"config_hash", ctx.hash}, {"command", ctx.opts.command}};
  m["unit_system"] = ctx.cfg.units.si ? "si" : "reduced";
  if (ctx.cfg.units.si) m["omega_ref"] = ctx.cfg.units.omega_ref;
  return m;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> warnings;
};

std::string render_table(const Context& ctx, const Table& t) {
  if (ctx.opts.format == "json") {
    json j{{"meta", meta(ctx)}, {"columns", t.columns}, {"rows", json::array()}, {"warnings", t.warnings}};
    for (const auto& r : t.rows) {
      json row = json::array();
      for (double v : r) row.push_back(num(v));
      j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "# lfvdw " << kVersion << " config_hash=" << ctx.hash << " command=" << ctx.opts.command
     << " units=" << (ctx.cfg.units.si ? "si" : "reduced") << "\n";
  for (const auto& w : t.warnings) os << "# warning: " << w << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt(r[i]);
    os << "\n";
  }
  return os.str();
}

std::string render_json(const Context& ctx, json body) {
  if (ctx.opts.format == "csv") {
    throw ValidationError("command '" + ctx.opts.command + "' produces structured output; use --format json");
  }
  json j{{"meta", meta(ctx)}};
  j.update(body);
  return j.dump(2) + "\n";
}

void append_unique(std::vector<std::string>& into, const std::vector<std::string>& from) {
  for (const auto& w : from) {
    if (std::find(into.begin(), into.end(), w) == into.end()) into.push_back(w);
  }
}

// --------------------------------------------------------------- commands

std::string cmd_coeffs(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const CavitySpec spec{require(cfg.run.cavity_radius, "cavity_radius"),
                        cfg.material(require(cfg.run.material, "material"))};
  validate(spec);
  const auto& grid = require(cfg.sweep.u_grid, "u_grid");
  Table t;
  t.columns = {"u", "eps", "mu", "n", "D_leading", "D_exact", "C1_exact", "C1_expansion", "C2_exact"};
  if (cfg.units.si) t.columns.push_back("u_si");
  t.rows = parallel_map<std::vector<double>>(grid.size(), ctx.opts.threads, [&](std::size_t i) {
    const double u = grid[i];
    std::vector<double> row{u,
                            eps_iu(spec.host, u),
                            mu_iu(spec.host, u),
                            n_iu(spec.host, u),
                            coeff_D_leading(spec.host, u),
                            coeff_D_exact(spec, u),
                            coeff_C_exact(spec, 1, u),
                            coeff_C_expansion(spec, u).total(),
                            coeff_C_exact(spec, 2, u)};
    if (cfg.units.si) row.push_back(u * cfg.units.omega_ref);
    return row;
  });
  return render_table(ctx, t);
}

std::string cmd_pair(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& a = cfg.atom(require(cfg.run.atom_a, "atom_a")).polarizability;
  const auto& b = cfg.atom(require(cfg.run.atom_b, "atom_b")).polarizability;
  const auto& m = cfg.material(require(cfg.run.material, "material"));
  const auto& grid = require(cfg.sweep.distances, "distances");
  PairOptions po;
  po.cavity_radius = cfg.run.cavity_radius.value_or(0.0);

  struct Point {
    std::vector<double> row;
    std::vector<std::string> warnings;
  };
  auto points = parallel_map<Point>(grid.size(), ctx.opts.threads, [&](std::size_t i) {
    const double l = grid[i];
    const auto main = pair_bulk(a, b, m, l, ctx.q, cfg.run.corrected, po);
    const auto bare = pair_bulk(a, b, m, l, ctx.q, false, po);
    const auto f = force_pair(a, b, m, l, ctx.q, cfg.run.corrected, po);
    // d ln|U| / d ln l = (l/U) dU/dl = -l F / U
    Point p{{l, main.energy, bare.energy, main.energy / bare.energy, -l * f.force / main.energy}, main.warnings};
    if (cfg.units.si) {
      const auto s = cfg.units.scale();
      p.row.push_back(s.length_to_si(l));
      p.row.push_back(s.energy_to_si(main.energy));
      p.row.push_back(s.energy_to_si(bare.energy));
    }
    return p;
  });
  Table t;
  t.columns = {"l", "U", "U_uncorrected", "ratio", "local_slope"};
  if (cfg.units.si) {
    t.columns.insert(t.columns.end(), {"l_si", "U_si", "U_uncorrected_si"});
  }
  for (auto& p : points) {
    t.rows.push_back(std::move(p.row));
    append_unique(t.warnings, p.warnings);
  }
  return render_table(ctx, t);
}

std::string cmd_force_check(const Context& ctx, bool& all_pass) {
  const auto& cfg = ctx.cfg;
  const auto& a = cfg.atom(require(cfg.run.atom_a, "atom_a")).polarizability;
  const auto& b = cfg.atom(require(cfg.run.atom_b, "atom_b")).polarizability;
  const auto& m = cfg.material(require(cfg.run.material, "material"));
  const auto& grid = require(cfg.sweep.distances, "distances");
  PairOptions po;
  po.cavity_radius = cfg.run.cavity_radius.value_or(0.0);

  Table t;
  t.columns = {"l", "F_analytic", "F_finite_difference", "fd_error", "relative_deviation", "pass"};
  if (cfg.units.si) t.columns.insert(t.columns.end(), {"l_si", "F_analytic_si"});
  t.rows = parallel_map<std::vector<double>>(grid.size(), ctx.opts.threads, [&](std::size_t i) {
    const double l = grid[i];
    const double f = force_pair(a, b, m, l, ctx.q, cfg.run.corrected, po).force;
    const auto fd = oracle::finite_difference_force(
        [&](double x) { return pair_bulk(a, b, m, x, ctx.q, cfg.run.corrected).energy; }, l);
    const double dev = std::abs(f / fd.value - 1.0);
    std::vector<double> row{l, f, fd.value, fd.error, dev, dev <= kForceTolerance ? 1.0 : 0.0};
    if (cfg.units.si) {
      row.push_back(cfg.units.scale().length_to_si(l));
      row.push_back(cfg.units.scale().force_to_si(f));
    }
    return row;
  });
  for (const auto& r : t.rows) all_pass = all_pass && r[5] == 1.0;
  return render_table(ctx, t);
}

BodyShell material_body(const MediumResponse& m, double inner, double outer) {
  BodyShell shell;
  shell.inner_radius = inner;
  shell.outer_radius = outer;
  shell.chi = [m](double u) { return eps_iu(m, u) - 1.0; };
  if (!m.mu_terms.empty()) shell.zeta = [m](double u) { return mu_iu(m, u) - 1.0; };
  return shell;
}

std::string cmd_single(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& atom = cfg.atom(require(cfg.run.atom_a, "atom_a")).polarizability;
  const auto& m = cfg.material(require(cfg.run.material, "material"));
  std::vector<double> radii = cfg.sweep.radii;
  if (radii.empty()) radii.push_back(require(cfg.run.cavity_radius, "cavity_radius"));
  const double outer = cfg.run.outer_radius.value_or(std::numeric_limits<double>::infinity());

  auto points = parallel_map<json>(radii.size(), ctx.opts.threads, [&](std::size_t i) {
    const CavitySpec spec{radii[i], m};
    if (outer < spec.radius) throw ValidationError("run.outer_radius must not be below the cavity radius");
    const auto shell = material_body(m, spec.radius, outer);
    std::vector<std::string> trace_warnings;
    const ScatterTrace trace = [&](double u) {
      return std::isinf(outer) ? 0.0 : born_scatter_trace(shell, u, ctx.q, &trace_warnings);
    };
    const auto r = single_atom(atom, spec, trace, ctx.q);
    const auto k = cavity_center_stiffness(atom, spec, ctx.q);
    std::vector<std::string> warnings = r.warnings;
    append_unique(warnings, trace_warnings);
    json p{{"cavity_radius", spec.radius},
           {"U1", r.u1},
           {"U1_radius_cubed_term", r.u1_terms.radius_cubed_term},
           {"U1_radius_inverse_term", r.u1_terms.radius_inverse_term},
           {"U1_exact", r.u1_exact},
           {"U2", r.u2},
           {"total", r.total},
           {"U2_factor_min", r.u2_detail.factor_min},
           {"U2_factor_max", r.u2_detail.factor_max},
           {"stiffness",
            {{"K_exact", k.k_exact},
             {"K_small_radius", k.k_small_radius},
             {"regime", to_string(k.regime)},
             {"host", to_string(k.host)},
             {"signs_agree", k.signs_agree},
             {"diagnostics", k.diagnostics}}},
           {"warnings", warnings}};
    if (cfg.units.si) {
      const auto s = cfg.units.scale();
      p["si"] = {{"cavity_radius_m", s.length_to_si(spec.radius)},
                 {"U1_J", s.energy_to_si(r.u1)},
                 {"U2_J", s.energy_to_si(r.u2)},
                 {"total_J", s.energy_to_si(r.total)},
                 {"K_exact_N_per_m", s.stiffness_to_si(k.k_exact)}};
    }
    return p;
  });
  return render_json(ctx, {{"outer_radius", num(outer)}, {"points", points}});
}

std::vector<PlacedAtom> read_positions(const Context& ctx, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open positions file '" + path + "'");
  std::vector<PlacedAtom> atoms;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    double x, y, z;
    std::string extra;
    if (!(ls >> x >> y >> z) || (ls >> extra)) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected 'name x y z'");
    }
    Vec3 r(x, y, z);
    if (ctx.cfg.units.si) r = r.unaryExpr([&](double v) { return ctx.cfg.units.scale().length_to_reduced(v); });
    atoms.push_back({name, ctx.cfg.atom(name).polarizability, r});
  }
  return atoms;
}

std::string positions_path(const Context& ctx) {
  if (!ctx.opts.positions.empty()) return ctx.opts.positions;
  const auto rel = require(ctx.cfg.run.positions_file, "positions_file");
  return (std::filesystem::path(ctx.cfg.base_dir) / rel).string();
}

std::string cmd_nbody(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& m = cfg.material(require(cfg.run.material, "material"));
  const auto atoms = read_positions(ctx, positions_path(ctx));
  PairOptions po;
  po.cavity_radius = cfg.run.cavity_radius.value_or(0.0);
  const auto r = n_atom_bulk(atoms, m, ctx.q, cfg.run.corrected, po);
  json orderings = json::array();
  for (const auto& t : r.orderings) orderings.push_back({{"cycle", t.cycle}, {"energy", t.energy}});
  json names = json::array();
  for (const auto& a : atoms) names.push_back(a.name);
  json body{{"atoms", names},
            {"corrected", cfg.run.corrected},
            {"energy", r.energy},
            {"orderings", orderings},
            {"warnings", r.warnings}};
  if (cfg.units.si) body["energy_J"] = cfg.units.scale().energy_to_si(r.energy);
  return render_json(ctx, body);
}

std::string cmd_limits(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& a = cfg.atom(require(cfg.run.atom_a, "atom_a")).polarizability;
  const auto& b = cfg.atom(require(cfg.run.atom_b, "atom_b")).polarizability;
  const auto& m = cfg.material(require(cfg.run.material, "material"));
  const double cr = coeff_retarded(a, b, m, true);
  const double cnr = coeff_nonretarded(a, b, m, ctx.q, true);
  const double d0 = local_field_factor(eps_static(m));
  json body{{"C_r", cr},
            {"C_nr", cnr},
            // separation where -C_r/l^7 and -C_nr/l^6 cross
            {"crossover_length_estimate", cr / cnr},
            {"uncorrected", {{"C_r", coeff_retarded(a, b, m, false)}, {"C_nr", coeff_nonretarded(a, b, m, ctx.q, false)}}},
            {"static_enhancement", {{"single_atom", d0 * d0}, {"pair", d0 * d0 * d0 * d0}}}};
  json sweep = json::array();
  for (double e : cfg.sweep.static_permittivities) {
    if (!(e >= 1.0)) throw ValidationError("sweep.static_permittivities must be >= 1");
    const double d = local_field_factor(e);
    sweep.push_back({{"eps", e}, {"single_atom", d * d}, {"pair", d * d * d * d}});
  }
  body["enhancement_sweep"] = sweep;
  if (cfg.units.si) {
    const auto s = cfg.units.scale();
    // U = -C l^-k: C_si = E_si(C) * (c/w_ref)^k
    const double unit = s.length_to_si(1.0);
    body["si"] = {{"C_r_J_m7", s.energy_to_si(cr) * std::pow(unit, 7)},
                  {"C_nr_J_m6", s.energy_to_si(cnr) * std::pow(unit, 6)},
                  {"crossover_length_m", s.length_to_si(cr / cnr)}};
  }
  return render_json(ctx, body);
}

std::string cmd_born_check(const Context& ctx, bool& pass) {
  const auto& cfg = ctx.cfg;
  const auto& guest = cfg.atom(require(cfg.run.atom_a, "atom_a")).polarizability;
  const auto& host_spec = cfg.atom(require(cfg.run.host_atom, "host_atom"));
  oracle::DiluteHost host{require(cfg.run.host_density, "host_density"), host_spec.polarizability,
                          host_spec.magnetizability};
  oracle::validate(host);
  const double rc = require(cfg.run.cavity_radius, "cavity_radius");
  const double outer = cfg.run.outer_radius.value_or(std::numeric_limits<double>::infinity());

  const CavitySpec spec{rc, host.medium()};
  const auto shell = host.body(rc, outer);
  std::vector<std::string> warnings;
  const ScatterTrace trace = [&](double u) {
    return std::isinf(outer) ? 0.0 : born_scatter_trace(shell, u, ctx.q, &warnings);
  };
  const auto module = single_atom(guest, spec, trace, ctx.q);
  append_unique(warnings, module.warnings);
  const double orc = oracle::total_pairwise_sum(guest, host, outer, rc, ctx.q);
  const double dev = orc != 0.0 ? std::abs(module.total / orc - 1.0) : std::abs(module.total);
  pass = dev <= kBornTolerance;
  return render_json(ctx, {{"module_value", module.total},
                           {"module_U1", module.u1},
                           {"module_U2", module.u2},
                           {"oracle_value", orc},
                           {"relative_deviation", dev},
                           {"tolerance", kBornTolerance},
                           {"pass", pass},
                           {"chi_static", host.chi(0.0)},
                           {"zeta_static", host.zeta(0.0)},
                           {"warnings", warnings}});
}

int exit_code_for(const Error& e) {
  const auto& k = e.kind();
  if (k == "validation" || k == "domain" || k == "unsupported_order") return 2;
  return 3;
}

std::string error_json(const std::string& kind, const std::string& message) {
  return json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  Options opts;
  CLI::App app{"Local-field corrected van der Waals potentials", "lfvdw"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"coeffs", "cavity coefficients C_1, C_2 and D on a frequency grid"},
      {"single", "single-atom potential U1 + U2 and cavity-centre stiffness"},
      {"pair", "two-atom potential in bulk over a distance sweep"},
      {"nbody", "N-atom potential for a positions file"},
      {"limits", "retarded and non-retarded pair coefficients"},
      {"born-check", "module single-atom potential against the pairwise sum"},
      {"force-check", "analytic pair force against finite differences"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config_path, "JSON run configuration")->required();
    sub->add_option("--out", opts.out_path, "write output to this file instead of stdout");
    sub->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", opts.tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--threads", opts.threads, "worker threads for sweeps")->check(CLI::Range(1, 256));
    if (name == "nbody") sub->add_option("--positions", opts.positions, "positions file (name x y z per line)");
    sub->callback([&opts, name = name] { opts.command = name; });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help(), false};
  } catch (const CLI::CallForVersion&) {
    return {0, std::string(kVersion) + "\n", false};
  } catch (const CLI::ParseError& e) {
    return {2, error_json("usage", e.what()), false};
  }
  if (opts.format.empty()) {
    const bool tabular = opts.command == "coeffs" || opts.command == "pair" || opts.command == "force-check";
    opts.format = tabular ? "csv" : "json";
  }

  Outcome out;
  try {
    Context ctx{config::load(opts.config_path), {}, {}, opts};
    ctx.q = ctx.cfg.quadrature;
    if (opts.tol > 0.0) ctx.q.rel_tol = opts.tol;
    quad::validate(ctx.q);
    std::string hashed = read_file(opts.config_path);
    hashed += "\ntol=" + fmt(ctx.q.rel_tol);
    if (opts.command == "nbody") hashed += "\n" + read_file(positions_path(ctx));
    ctx.hash = config::fnv1a_hex(hashed);

    bool pass = true;
    if (opts.command == "coeffs") {
      out.output = cmd_coeffs(ctx);
    } else if (opts.command == "single") {
      out.output = cmd_single(ctx);
    } else if (opts.command == "pair") {
      out.output = cmd_pair(ctx);
    } else if (opts.command == "nbody") {
      out.output = cmd_nbody(ctx);
    } else if (opts.command == "limits") {
      out.output = cmd_limits(ctx);
    } else if (opts.command == "born-check") {
      out.output = cmd_born_check(ctx, pass);
    } else {
      out.output = cmd_force_check(ctx, pass);
    }
    out.exit_code = pass ? 0 : 1;
  } catch (const ConvergenceError& e) {
    json j{{"error",
            {{"kind", e.kind()},
             {"message", e.what()},
             {"partial_value", num(e.partial_value())},
             {"error_estimate", num(e.error_estimate())}}}};
    out = {3, j.dump(2) + "\n", false};
  } catch (const Error& e) {
    out = {exit_code_for(e), error_json(e.kind(), e.what()), false};
  } catch (const std::exception& e) {
    out = {3, error_json("internal", e.what()), false};
  }

  if (!opts.out_path.empty()) {
    std::ofstream f(opts.out_path, std::ios::binary);
    if (!f) return {2, error_json("validation", "cannot write '" + opts.out_path + "'"), false};
    f << out.output;
    out.written_to_file = true;
  }
  return out;
}

}  // namespace lfvdw::cli
