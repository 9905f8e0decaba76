#include "hypgeo/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypgeo/errors.hpp"
#include "hypgeo/geometry.hpp"
#include "hypgeo/hyp2f1.hpp"
#include "hypgeo/verifier.hpp"

namespace hypgeo {
namespace {

using json = nlohmann::json;

constexpr const char* kSchemaVersion = "1";

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest text that reads back to the same double.
std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

json opt_num(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json report_json(const CheckReport& r) {
  return {{"name", r.name},
          {"passed", r.passed},
          {"worst_violation", std::isfinite(r.worst_violation) ? json(r.worst_violation) : json(nullptr)},
          {"tolerance", r.tolerance},
          {"location", r.location},
          {"details", r.details}};
}

json record(const std::string& command, json inputs, json results) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"inputs", std::move(inputs)},
          {"results", std::move(results)}};
}

json params_json(const Params& p) { return {{"a", p.a}, {"b", p.b}, {"c", p.c}}; }

json numeric_order_json(const NumericOrder& n) {
  json per = json::array();
  for (const auto& r : n.per_radius) {
    per.push_back({{"radius", r.radius},
                   {"minimum", std::isfinite(r.minimum) ? json(r.minimum) : json(nullptr)},
                   {"argmin_theta", r.argmin_theta},
                   {"min_abs_denominator", r.min_abs_denominator}});
  }
  return {{"defined", n.defined},
          {"estimate", n.defined ? json(n.estimate) : json(nullptr)},
          {"monotone", n.monotone},
          {"extrapolated", n.defined && n.extrapolated ? json(*n.extrapolated) : json(nullptr)},
          {"per_radius", per},
          {"note", n.note}};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  return f;
}

void finish_file(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("write to " + path + " failed");
}

Range parse_range(const std::string& text, std::optional<double> step_override) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::parameter, "bad range '" + text + "', expected lo:hi:step");
    }
  }
  if (parts.size() == 2 && step_override) parts.push_back(*step_override);
  if (parts.size() != 3) throw Error(ErrorKind::parameter, "bad range '" + text + "', expected lo:hi:step");
  if (step_override) parts[2] = *step_override;
  if (!(parts[2] > 0.0)) throw Error(ErrorKind::parameter, "range step must be positive");
  return Range{parts[0], parts[1], parts[2]};
}

// Failures that come out of the numerics rather than from bad input.
bool numerical_failure(ErrorKind k) {
  return k == ErrorKind::non_convergence || k == ErrorKind::inconsistency ||
         k == ErrorKind::division_hazard || k == ErrorKind::derivative_zero;
}

struct Options {
  double a = 0, b = 0;
  std::optional<double> c;
  double z_re = 0, z_im = 0, tol = 1e-16;
  bool numeric = true;
  std::vector<double> radii{0.9, 0.99, 0.999};
  bool radii_set = false;
  int angles = 4096;
  bool angles_set = false;
  int samples = 0;
  double theta_min = 1e-3;
  std::string format = "csv";
  std::string out_path;
  std::string check;
  std::string fn = "H_over_G";
  int grid_n = 0;
  std::vector<double> list;
  std::string mode;
  std::string a_range, b_range;
  std::optional<double> step;
};

Params params_of(const Options& o, bool zero_balanced_default) {
  if (!o.c && !zero_balanced_default) throw Error(ErrorKind::parameter, "--c is required");
  Params p{o.a, o.b, o.c ? *o.c : o.a + o.b};
  p.validate();
  return p;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Params p = params_of(o, false);
  EngineConfig cfg;
  cfg.tol = o.tol;
  const EvalResult r = hyp2f1_continued(p, Complex(o.z_re, o.z_im), cfg);
  json inputs = params_json(p);
  inputs["z"] = complex_json(Complex(o.z_re, o.z_im));
  inputs["tol"] = o.tol;
  out << record("eval", inputs,
                {{"value", complex_json(r.value)},
                 {"abs_err_est", r.abs_err_est},
                 {"method", std::string(to_string(r.method))}})
             .dump(2)
      << '\n';
  return 0;
}

int cmd_order(const Options& o, std::ostream& out) {
  const Params p = params_of(o, false);
  GridOptions grid{o.radii, o.angles};
  const OrderReport r = order_report(p, o.numeric, grid);
  json conds = json::array();
  for (Condition c : r.conditions_met) conds.push_back(std::string(to_string(c)));
  json results = {{"params", params_json(r.params)},
                  {"kappa_closed", opt_num(r.kappa_closed)},
                  {"sigma_closed", opt_num(r.sigma_closed)},
                  {"kappa_numeric", r.kappa_numeric ? numeric_order_json(*r.kappa_numeric) : json(nullptr)},
                  {"sigma_numeric", r.sigma_numeric ? numeric_order_json(*r.sigma_numeric) : json(nullptr)},
                  {"ratio_at_minus1", opt_num(r.ratio_at_minus1)},
                  {"conditions_met", conds},
                  {"kappa_limit_case", r.kappa_limit_case},
                  {"notes", r.notes}};
  json inputs = params_json(p);
  inputs["numeric"] = o.numeric;
  inputs["radii"] = o.radii;
  inputs["angles"] = o.angles;
  out << record("order", inputs, results).dump(2) << '\n';
  return 0;
}

void write_curve(std::ostream& os, const BoundaryCurve& c, const std::string& format) {
  if (format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < c.theta.size(); ++i) {
      rows.push_back({{"theta", c.theta[i]}, {"u", c.u[i]}, {"v", c.v[i]}});
    }
    os << rows.dump() << '\n';
    return;
  }
  os << "theta,u,v\n";
  for (std::size_t i = 0; i < c.theta.size(); ++i) {
    os << num(c.theta[i]) << ',' << num(c.u[i]) << ',' << num(c.v[i]) << '\n';
  }
}

int cmd_trace(const Options& o, std::ostream& out) {
  const Params p = params_of(o, true);
  const int samples = o.samples > 0 ? o.samples : 1000;
  const BoundaryCurve curve = trace_boundary(p, samples, o.theta_min);
  if (o.out_path.empty()) {
    write_curve(out, curve, o.format);
    return 0;
  }
  std::ofstream f = open_out(o.out_path);
  write_curve(f, curve, o.format);
  finish_file(f, o.out_path);

  double max_abs_v = 0.0;
  for (double v : curve.v) max_abs_v = std::max(max_abs_v, std::abs(v));
  json results = {{"samples", samples}, {"max_abs_v", max_abs_v}, {"out", o.out_path}};
  if (p.zero_balanced() && p.a > 0 && p.b > 0) {
    results["strip_halfwidth"] = strip_halfwidth(p.a, p.b);
    results["v_limit_estimate"] = extrapolate_v_at_zero(curve);
  }
  json inputs = params_json(p);
  inputs["theta_min"] = o.theta_min;
  inputs["format"] = o.format;
  out << record("trace", inputs, results).dump(2) << '\n';
  return 0;
}

CheckReport run_check(const Options& o, json& inputs) {
  const std::string& name = o.check;
  if (name == "log-limits") {
    const auto thetas = o.list.empty() ? default_theta_list() : o.list;
    inputs["theta_list"] = thetas;
    return check_log_limits(thetas);
  }
  if (name == "ratio-bounds") {
    RatioGrid g;
    if (o.grid_n > 0) g.n = o.grid_n;
    inputs["grid_n"] = g.n;
    return check_ratio_bounds_grid(g);
  }
  const bool zb_default = name == "not-convex" || name == "strip" || name == "boundary-vmax";
  const Params p = params_of(o, zb_default);
  inputs.update(params_json(p));
  if (name == "herglotz") {
    HerglotzFunction fn;
    if (o.fn == "H_over_G") {
      fn = HerglotzFunction::H_over_G;
    } else if (o.fn == "M_normalized") {
      fn = HerglotzFunction::M_normalized;
    } else {
      throw Error(ErrorKind::parameter, "unknown --fn '" + o.fn + "'");
    }
    inputs["fn"] = o.fn;
    return check_herglotz(fn, p);
  }
  if (name == "qs") {
    const int n = o.grid_n > 0 ? o.grid_n : 101;
    inputs["grid_n"] = n;
    return check_QS_nonneg(p, n);
  }
  if (name == "limit-inf") {
    const auto xs = o.list.empty() ? default_x_list() : o.list;
    inputs["x_list"] = xs;
    return check_limit_infinity(p, xs);
  }
  if (name == "gf-asymptotics") {
    const auto ss = o.list.empty() ? default_s_list() : o.list;
    inputs["s_list"] = ss;
    return check_GF_asymptotics(p, ss);
  }
  if (name == "not-convex") {
    WitnessOptions w;
    if (o.angles_set) w.n_angles = o.angles;
    inputs["angles"] = w.n_angles;
    return check_not_convex(p, w);
  }
  const int samples = o.samples > 0 ? o.samples : 4000;
  inputs["samples"] = samples;
  inputs["theta_min"] = o.theta_min;
  const BoundaryCurve curve = trace_boundary(p, samples, o.theta_min);
  if (name == "strip") return check_strip(p, curve);
  return check_boundary_vmax(curve);
}

int cmd_verify(const Options& o, std::ostream& out) {
  json inputs = {{"check", o.check}};
  CheckReport r;
  try {
    r = run_check(o, inputs);
  } catch (const Error& e) {
    if (!numerical_failure(e.kind())) throw;
    r = make_report(o.check, std::numeric_limits<double>::infinity(), 0.0, "", e.what());
    r.passed = false;
  }
  json doc = record("verify", inputs, {{"passed", r.passed}});
  doc["checks"] = json::array({report_json(r)});
  out << doc.dump(2) << '\n';
  return r.passed ? 0 : 1;
}

int cmd_scan(const Options& o, std::ostream& out) {
  ScanMode mode;
  if (o.mode == "thm13") {
    mode = ScanMode::thm13;
  } else if (o.mode == "thm12") {
    mode = ScanMode::thm12;
  } else if (o.mode == "thmA") {
    mode = ScanMode::thmA;
  } else {
    throw Error(ErrorKind::parameter, "unknown scan mode '" + o.mode + "'");
  }
  const Range ar = parse_range(o.a_range, o.step), br = parse_range(o.b_range, o.step);
  ScanOptions opt;
  opt.grid = GridOptions{o.radii, o.angles};
  // Closed-vs-numeric agreement needs the grid close to the circle; the
  // minimum approaches its limit like 1 - r.
  if (mode == ScanMode::thm12 && !o.radii_set) opt.grid.radii = {0.99, 0.999, 0.9999};
  if (o.samples > 0) opt.trace_samples = o.samples;
  opt.theta_min = o.theta_min;
  opt.c = o.c;
  const auto records = scan_region(ar, br, mode, opt);

  int in_region = 0, failed = 0;
  for (const auto& r : records) {
    in_region += r.in_region;
    failed += scan_record_failed(r, mode);
  }
  auto write = [&](std::ostream& os) {
    if (o.format == "json") {
      json rows = json::array();
      for (const auto& r : records) {
        rows.push_back({{"a", r.a},
                        {"b", r.b},
                        {"in_region", r.in_region},
                        {"kappa", opt_num(r.kappa)},
                        {"verdict", r.verdict}});
      }
      os << rows.dump() << '\n';
      return;
    }
    os << "a,b,in_region,kappa,verdict\n";
    for (const auto& r : records) {
      os << num(r.a) << ',' << num(r.b) << ',' << (r.in_region ? "true" : "false") << ','
         << (r.kappa ? num(*r.kappa) : "") << ',' << r.verdict << '\n';
    }
  };
  if (o.out_path.empty()) {
    write(out);
  } else {
    std::ofstream f = open_out(o.out_path);
    write(f);
    finish_file(f, o.out_path);
    json inputs = {{"mode", o.mode}, {"a_range", o.a_range}, {"b_range", o.b_range}};
    if (o.c) inputs["c"] = *o.c;
    out << record("scan", inputs,
                  {{"points", records.size()},
                   {"in_region", in_region},
                   {"failed", failed},
                   {"out", o.out_path}})
               .dump(2)
        << '\n';
  }
  return failed > 0 ? 1 : 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauss hypergeometric evaluation and geometric checks", "hypgeo"};
  app.require_subcommand(1);
  Options o;

  auto add_params = [&](CLI::App* s, bool need_c) {
    s->add_option("--a", o.a, "parameter a")->required();
    s->add_option("--b", o.b, "parameter b")->required();
    auto* c = s->add_option("--c", o.c, "parameter c");
    if (need_c) c->required();
  };

  auto* eval = app.add_subcommand("eval", "evaluate F(a,b;c;z)");
  add_params(eval, true);
  eval->add_option("--z-re", o.z_re, "real part of z")->required();
  eval->add_option("--z-im", o.z_im, "imaginary part of z");
  eval->add_option("--tol", o.tol, "series tolerance")->check(CLI::PositiveNumber);

  auto* order = app.add_subcommand("order", "orders of convexity and starlikeness");
  add_params(order, true);
  order->add_flag("--numeric,!--no-numeric", o.numeric, "numerical infimum on circle grids");
  order->add_option("--radii", o.radii, "grid radii in (0,1), comma separated")->delimiter(',');
  order->add_option("--angles", o.angles, "angles per radius")->check(CLI::PositiveNumber);

  auto* trace = app.add_subcommand("trace", "image of the unit circle");
  add_params(trace, false);
  trace->add_option("--samples", o.samples, "number of samples (default 1000)");
  trace->add_option("--theta-min", o.theta_min, "smallest angle");
  trace->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  trace->add_option("--out", o.out_path, "data file");

  auto* verify = app.add_subcommand("verify", "run one checker");
  verify
      ->add_option("check", o.check, "check name")
      ->required()
      ->check(CLI::IsMember({"herglotz", "qs", "ratio-bounds", "limit-inf", "gf-asymptotics",
                             "log-limits", "not-convex", "strip", "boundary-vmax"}));
  verify->add_option("--a", o.a, "parameter a");
  verify->add_option("--b", o.b, "parameter b");
  verify->add_option("--c", o.c, "parameter c (default a+b where zero-balanced)");
  verify->add_option("--fn", o.fn, "H_over_G or M_normalized (herglotz)");
  verify->add_option("--grid-n", o.grid_n, "grid size (qs, ratio-bounds)");
  verify->add_option("--samples", o.samples, "boundary samples (strip, boundary-vmax)");
  verify->add_option("--theta-min", o.theta_min, "smallest boundary angle");
  verify->add_option("--angles", o.angles, "angles per radius (not-convex, default 8192)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--list", o.list, "x, s or theta samples");

  auto* scan = app.add_subcommand("scan", "sweep a parameter region");
  scan->add_option("--mode", o.mode, "thm13, thm12 or thmA")->required();
  scan->add_option("--a-range", o.a_range, "lo:hi:step")->required();
  scan->add_option("--b-range", o.b_range, "lo:hi:step")->required();
  scan->add_option("--step", o.step, "step for both ranges");
  scan->add_option("--c", o.c, "fixed c (thm12; default a+b)");
  scan->add_option("--samples", o.samples, "boundary samples per point (default 2000)");
  scan->add_option("--theta-min", o.theta_min, "smallest boundary angle");
  scan->add_option("--radii", o.radii, "grid radii, comma separated")->delimiter(',');
  scan->add_option("--angles", o.angles, "angles per radius");
  scan->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--out", o.out_path, "data file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (order->parsed()) return cmd_order(o, out);
    if (trace->parsed()) return cmd_trace(o, out);
    if (verify->parsed()) {
      // The remaining checks read a and b; log-limits and ratio-bounds take none.
      if (o.check != "log-limits" && o.check != "ratio-bounds" &&
          (verify->count("--a") == 0 || verify->count("--b") == 0)) {
        err << "error: check '" << o.check << "' needs --a and --b\n";
        return 2;
      }
      o.angles_set = verify->count("--angles") > 0;
      return cmd_verify(o, out);
    }
    if (scan->parsed()) {
      o.radii_set = scan->count("--radii") > 0;
      return cmd_scan(o, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace hypgeo
