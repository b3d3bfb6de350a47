#include "vdf/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <sstream>

#include "vdf/coarsen.hpp"
#include "vdf/config.hpp"
#include "vdf/errors.hpp"
#include "vdf/expr.hpp"
#include "vdf/hsolve.hpp"
#include "vdf/newton.hpp"

namespace vdf::cli {

namespace {

struct Options {
  std::string field_path;
  std::string builtin;
  std::string input;
  std::string add, mul, comp, at, geq, prec, beta, rhs, tau, c_list = "0,1";
  std::string op = "A";
  std::size_t depth = 6;
  std::size_t prefix = 1;
  std::size_t max_iter = 64;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
};

FieldPtr field_of(const Options& o) {
  if (!o.builtin.empty() && !o.field_path.empty()) throw ContractError("give either --field or --builtin");
  if (!o.builtin.empty()) return builtin_field(o.builtin);
  if (o.field_path.empty()) throw ContractError("missing --field or --builtin");
  return load_field(o.field_path);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

Rational rational_arg(const std::string& s, const char* flag) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument&) {
    throw ParseError(std::string("bad rational '") + s + "' for " + flag, 1, 1);
  }
}

GroupElement vector_arg(const std::string& s, const char* flag) {
  std::vector<Rational> coords;
  for (const auto& item : split(s)) coords.push_back(rational_arg(item, flag));
  return GroupElement(std::move(coords));
}

Json valuation_json(const Series& s) {
  if (s.is_zero()) return nullptr;
  if (s.empty()) return Json{{"at_least", to_json(s.truncation())}};
  return to_json(s.val());
}

Json trace_json(const SolveResult& r) {
  Json residuals = Json::array();
  for (const auto& v : r.trace.residual_values) residuals.push_back(to_json(v));
  Json out{{"iterations", r.trace.iterations()},
           {"termination", to_string(r.trace.termination)},
           {"residual_values", residuals},
           {"y", to_json(r.y)},
           {"residual", valuation_json(r.residual)}};
  if (!r.trace.gap_message.empty()) out["gap"] = r.trace.gap_message;
  return out;
}

Json cmd_val(const Options& o) {
  FieldPtr f = field_of(o);
  Series s = parse_series(o.input, f);
  auto v = s.valuation();
  return Json{{"v", v ? to_json(*v) : Json(nullptr)}};
}

Json cmd_ddeg(const Options& o) {
  DiffPoly p = parse_poly(o.input, field_of(o));
  DominantData d = dominant(p);
  return Json{{"ddeg", d.ddeg}, {"dwt", d.dwt}, {"value", to_json(d.value)}};
}

Json cmd_ndeg(const Options& o) {
  FieldPtr f = field_of(o);
  DiffPoly p = parse_poly(o.input, f);
  if (!o.geq.empty() && !o.prec.empty()) throw ContractError("give at most one of --geq and --prec");
  unsigned n = !o.geq.empty()    ? ndeg_geq(p, vector_arg(o.geq, "--geq"))
               : !o.prec.empty() ? ndeg_prec(p, parse_series(o.prec, f))
                                 : ndeg(p);
  return Json{{"ndeg", n}};
}

Json cmd_breakpoints(const Options& o) {
  DiffPoly p = parse_poly(o.input, field_of(o));
  TropicalProfile prof = tropical_profile(p);
  Json bps = Json::array();
  for (const auto& b : prof.breakpoints) bps.push_back(to_json(b));
  return Json{{"breakpoints", bps}, {"plateaus", prof.plateaus}};
}

Json cmd_conj(const Options& o) {
  FieldPtr f = field_of(o);
  DiffPoly p = parse_poly(o.input, f);
  int given = !o.add.empty() + !o.mul.empty() + !o.comp.empty();
  if (given != 1) throw ContractError("give exactly one of --add, --mul, --comp");
  DiffPoly q = !o.add.empty()   ? add_conj(p, parse_series(o.add, f))
               : !o.mul.empty() ? mul_conj(p, parse_series(o.mul, f))
                                : comp_conj(p, parse_series(o.comp, f));
  Json out{{"poly", q.to_string()}};
  if (q.derivation().scale) out["scale"] = to_json(*q.derivation().scale);
  return out;
}

Json cmd_eval(const Options& o) {
  FieldPtr f = field_of(o);
  if (o.at.empty()) throw ContractError("missing --at");
  Series v = eval(parse_poly(o.input, f), parse_series(o.at, f));
  return Json{{"value", to_json(v)}};
}

Json cmd_coarsen(const Options& o) {
  Coarsening c = coarsen(field_of(o), o.prefix);
  return field_to_json(*c.residue);
}

Json cmd_gamma_der(const Options& o) { return to_json(gamma_der(field_of(o))); }

Json cmd_s_der(const Options& o) { return Json{{"prefix_len", s_der(field_of(o)).prefix_len}}; }

Json cmd_solve(const Options& o) {
  std::size_t n = o.depth;
  if (o.op == "A") {
    FieldPtr f = transseries_fragment(n);
    Series g = o.rhs.empty() ? Series::generator(f, "e_x") : parse_series(o.rhs, f);
    GroupElement tau = o.tau.empty() ? default_bll_tau(n).inserted(0) + f->generator(0).value
                                     : vector_arg(o.tau, "--tau");
    return trace_json(solve_linear(operator_A(f, n), g, tau, o.max_iter));
  }
  if (o.op == "B") {
    FieldPtr f = log_fragment(n);
    Series g = o.rhs.empty() ? Series::constant(f, 1) : parse_series(o.rhs, f);
    GroupElement tau = o.tau.empty() ? default_bll_tau(n) : vector_arg(o.tau, "--tau");
    return trace_json(solve_linear(operator_B(f, n), g, tau, o.max_iter));
  }
  throw ContractError("--op must be A or B");
}

Json cmd_demo(const Options& o) {
  std::size_t n = o.depth;
  FieldPtr f = transseries_fragment(n);
  std::vector<Rational> cs;
  for (const auto& s : split(o.c_list)) cs.push_back(rational_arg(s, "--c"));
  GroupElement tau =
      o.tau.empty() ? default_bll_tau(n).inserted(0) + f->generator(0).value : vector_arg(o.tau, "--tau");
  DemoReport rep = demo_nonuniqueness(n, cs, tau, o.max_iter);
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json entry{{"c", to_string(e.c)},
               {"solve", trace_json(e.solve)},
               {"difference", to_json(e.difference)},
               {"difference_residual", valuation_json(e.difference_residual)}};
    if (e.constant_part) entry["constant_part"] = trace_json(*e.constant_part);
    entries.push_back(std::move(entry));
  }
  return Json{{"depth", rep.depth}, {"tau", to_json(rep.tau)}, {"entries", entries}};
}

Json cmd_check_bll(const Options& o) {
  GroupElement tau = o.tau.empty() ? default_bll_tau(o.depth) : vector_arg(o.tau, "--tau");
  BllReport r = check_bll(o.depth, tau, o.max_iter);
  return Json{{"depth", r.depth},
              {"tau", to_json(r.tau)},
              {"b_solve", trace_json(r.b_solve)},
              {"b_residual", to_json(r.b_residual)},
              {"a_residual", to_json(r.a_residual)},
              {"a_required", to_json(r.a_required)},
              {"pass", r.pass}};
}

Json cmd_probe(const Options& o) {
  DiffPoly p = parse_poly(o.input, field_of(o));
  if (o.beta.empty()) throw ContractError("missing --beta");
  FlexProbe fp = flex_probe(p, vector_arg(o.beta, "--beta"), o.samples, o.seed);
  Json values = Json::array();
  for (const auto& v : fp.values) values.push_back(to_json(v));
  return Json{{"distinct", fp.values.size()}, {"hit_zero", fp.hit_zero}, {"samples", fp.samples}, {"values", values}};
}

Json error_json(const std::string& kind, const std::string& msg) { return Json{{"error", kind}, {"message", msg}}; }

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"valued differential field toolkit", "vdf"};
  app.require_subcommand(1);

  auto field_opts = [&](CLI::App* s) {
    s->add_option("--field", o.field_path, "field config JSON");
    s->add_option("--builtin", o.builtin, "laurent_ddt, laurent_tddt, laurent_tddt_coarse, M<N>, L<N>");
  };
  auto with_input = [&](CLI::App* s, const char* what) {
    field_opts(s);
    s->add_option("input", o.input, what)->required();
  };
  auto depth_opts = [&](CLI::App* s) {
    s->add_option("--depth", o.depth, "fragment depth N");
    s->add_option("--tau", o.tau, "comma-separated rational vector");
    s->add_option("--max-iter", o.max_iter);
  };

  std::map<CLI::App*, Json (*)(const Options&)> handlers;
  auto sub = [&](const char* name, const char* desc, Json (*h)(const Options&)) {
    CLI::App* s = app.add_subcommand(name, desc);
    handlers[s] = h;
    return s;
  };

  with_input(sub("val", "valuation of a series", cmd_val), "series");
  with_input(sub("ddeg", "dominant degree and weight", cmd_ddeg), "polynomial");
  {
    CLI::App* s = sub("ndeg", "Newton degree", cmd_ndeg);
    with_input(s, "polynomial");
    s->add_option("--geq", o.geq, "ndeg over v(y) >= gamma");
    s->add_option("--prec", o.prec, "ndeg over y < g");
  }
  with_input(sub("breakpoints", "tropical breakpoints", cmd_breakpoints), "polynomial");
  {
    CLI::App* s = sub("conj", "additive, multiplicative or compositional conjugate", cmd_conj);
    with_input(s, "polynomial");
    s->add_option("--add", o.add);
    s->add_option("--mul", o.mul);
    s->add_option("--comp", o.comp);
  }
  {
    CLI::App* s = sub("eval", "evaluate a polynomial at a series", cmd_eval);
    with_input(s, "polynomial");
    s->add_option("--at", o.at);
  }
  {
    CLI::App* s = sub("coarsen", "residue field config for a prefix coarsening", cmd_coarsen);
    field_opts(s);
    s->add_option("--prefix", o.prefix, "length of the convex subgroup prefix");
  }
  field_opts(sub("gamma-der", "the cut of the derivation", cmd_gamma_der));
  field_opts(sub("s-der", "stabilizer of the cut", cmd_s_der));
  {
    CLI::App* s = sub("solve", "iterate a first-order linear equation", cmd_solve);
    depth_opts(s);
    s->add_option("--op", o.op, "A or B");
    s->add_option("--rhs", o.rhs, "right-hand side series");
  }
  {
    CLI::App* s = sub("demo", "solve A(y) = e^x + c for several c", cmd_demo);
    depth_opts(s);
    s->add_option("--c", o.c_list, "comma-separated constants");
  }
  depth_opts(sub("check-bll", "check B(y) = 1 lifts to A(y e^x) = e^x", cmd_check_bll));
  {
    CLI::App* s = sub("probe", "sample valuations of P(y)", cmd_probe);
    with_input(s, "polynomial");
    s->add_option("--beta", o.beta)->required();
    s->add_option("--samples", o.samples);
    s->add_option("--seed", o.seed);
  }

  Outcome res;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    res.out = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.code = 2;
    res.err = dump(error_json("usage", e.what()));
    return res;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    res.out = dump(handlers.at(chosen)(o));
  } catch (const ParseError& e) {
    res.code = 3;
    Json j = error_json("parse", e.what());
    j["line"] = e.line();
    j["column"] = e.column();
    res.err = dump(j);
  } catch (const std::exception& e) {
    res.code = 2;
    res.err = dump(error_json("contract", e.what()));
  }
  return res;
}

}  // namespace vdf::cli
