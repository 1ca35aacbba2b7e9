#include "pottssos/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"
#include "pottssos/analysis.hpp"
#include "pottssos/core.hpp"
#include "pottssos/exactpoly.hpp"
#include "pottssos/oracle.hpp"
#include "pottssos/recursion.hpp"
#include "pottssos/solvers.hpp"

namespace pottssos::cli {

using Json = nlohmann::ordered_json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void emit_json(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_number(x) : "null");
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(key).dump() << ": ";
        emit_json(value, os, indent + 1);
      }
      os << "\n" << pad << "}";
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        break;
      }
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          emit_json(j[i], os, indent + 1);
        }
        os << "]";
        break;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        emit_json(j[i], os, indent + 1);
      }
      os << "\n" << pad << "]";
      break;
    }
    default:
      os << j.dump();
  }
}

std::string scalar_text(const Json& j) {
  if (j.is_number_float()) return format_number(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void emit_text(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      os << pad << key << ":\n";
      emit_text(value, os, indent + 1);
    } else if (value.is_array() && std::any_of(value.begin(), value.end(), [](const Json& e) { return e.is_structured(); })) {
      os << pad << key << ": (" << value.size() << ")\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        os << pad << "  [" << i << "]\n";
        if (value[i].is_object()) {
          emit_text(value[i], os, indent + 2);
        } else {
          os << pad << "    " << scalar_text(value[i]) << "\n";
        }
      }
    } else if (value.is_array()) {
      os << pad << key << ": [";
      for (std::size_t i = 0; i < value.size(); ++i) os << (i ? ", " : "") << scalar_text(value[i]);
      os << "]\n";
    } else {
      os << pad << key << ": " << scalar_text(value) << "\n";
    }
  }
}

struct Flags {
  int k = 2;
  int m = 2;
  std::string theta;
  std::string r;
  std::string J;
  std::string Jp;
  std::string beta;
  std::uint64_t rng_seed = 0;
  double tol = 1e-10;
  std::string format = "json";
  std::string out_file;
  bool timing = false;

  // command specific
  int seeds = 0;
  int samples = 0;
  int n = 2;
  int draws = 1;
  std::string r_rule;
  int cross_check = 0;
};

double parse_real(const std::string& name, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(name + " expects a number, got '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument(name + " expects a number, got '" + text + "'");
  return v;
}

ModelParams resolve_params(const Flags& f) {
  const bool physical = !f.J.empty() || !f.Jp.empty() || !f.beta.empty();
  if (physical) {
    if (f.J.empty() || f.Jp.empty() || f.beta.empty())
      throw std::invalid_argument("--J, --Jp and --beta must be given together");
    if (!f.theta.empty() || !f.r.empty()) throw std::invalid_argument("give either --theta/--r or --J/--Jp/--beta");
    return make_params(f.k, f.m, parse_real("--J", f.J), parse_real("--Jp", f.Jp), parse_real("--beta", f.beta));
  }
  if (f.theta.empty() || f.r.empty()) throw std::invalid_argument("--theta and --r (or --J, --Jp, --beta) are required");
  return params_from_weights(f.k, f.m, parse_real("--theta", f.theta), parse_real("--r", f.r));
}

Json params_json(const ModelParams& p) {
  return Json{{"k", p.k}, {"m", p.m}, {"J", p.J}, {"J_p", p.J_p}, {"beta", p.beta}, {"theta", p.theta}, {"r", p.r}};
}

Json field_json(const ReducedField& h) { return Json(h); }

Json phase_json(const PhasePoint& p) {
  return Json{{"theta", p.theta}, {"r", p.r}, {"D", p.D}, {"b", p.b}, {"classification", to_string(p.classification)}};
}

NewtonOptions newton_options(const Flags& f) {
  if (!(f.tol > 0.0)) throw std::invalid_argument("--tol must be > 0");
  NewtonOptions o;
  o.residual_tol = f.tol;
  return o;
}

struct Outcome {
  Json parameters = Json::object();
  Json results = Json::object();
  std::string csv;  // set by commands with a tabular form
  bool failed = false;
};

using Command = std::function<Outcome(const Flags&)>;

Outcome cmd_ti_solve(const Flags& f) {
  const auto p = resolve_params(f);
  const auto res = ti_fixed_points(p.m, p.theta, p.r, p.k, f.seeds > 0 ? f.seeds : 9, newton_options(f));
  Outcome o;
  o.parameters = params_json(p);
  o.parameters["seeds_per_axis"] = f.seeds > 0 ? f.seeds : 9;
  Json sols = Json::array();
  for (const auto& s : res.solutions) sols.push_back({{"h", field_json(s.h)}, {"residual", s.residual}});
  o.results = {{"degenerate_theta", res.degenerate_theta},
               {"converged_starts", res.converged_starts},
               {"failed_starts", res.failed_starts},
               {"solutions", sols}};
  return o;
}

Outcome cmd_two_cycles(const Flags& f) {
  const auto p = resolve_params(f);
  const auto res = two_cycles(p.theta, p.r, p.k);
  Outcome o;
  o.parameters = params_json(p);
  Json cycles = Json::array();
  for (const auto& c : res.cycles) {
    const double residual = std::max(std::abs(f_eval(c.z, p.theta, p.r, p.k) - c.w),
                                     std::abs(f_eval(c.w, p.theta, p.r, p.k) - c.z));
    cycles.push_back({{"z", c.z}, {"w", c.w}, {"residual", residual}});
  }
  Json fixed = Json::array();
  for (double z : res.fixed_points) fixed.push_back({{"z", z}, {"residual", std::abs(f_eval(z, p.theta, p.r, p.k) - z)}});
  o.results = {{"degenerate_theta", res.degenerate_theta},
               {"f_decreasing", f_decreasing(p.theta, p.r)},
               {"bracket", {res.bracket_lo, res.bracket_hi}},
               {"cycles", cycles},
               {"fixed_points", fixed}};
  if (p.k == 2) {
    const auto pt = classify_point(p.theta, p.r);
    const auto roots = quadratic_roots(quadratic_coeffs(p.theta, p.r));
    Json q{{"D", pt.D}, {"b", pt.b}, {"classification", to_string(pt.classification)}, {"roots", roots}};
    if (pt.classification == PhaseClass::one_periodic)
      q["note"] = "D = 0 within tolerance: the double root of the quadratic is also a fixed point of f; "
                  "cycles found: " + std::to_string(res.cycles.size());
    o.results["quadratic"] = q;
  }
  return o;
}

Outcome cmd_bipartite(const Flags& f) {
  const auto p = resolve_params(f);
  if (p.m != 2) throw std::invalid_argument("bipartite-solve supports m = 2 only");
  const int seeds = f.seeds > 0 ? f.seeds : 5;
  const auto res = bipartite_solve(p.theta, p.r, p.k, seeds, newton_options(f));
  Outcome o;
  o.parameters = params_json(p);
  o.parameters["seeds_per_axis"] = seeds;
  Json sols = Json::array();
  for (const auto& s : res.solutions)
    sols.push_back({{"h", field_json(s.fields.h)},
                    {"l", field_json(s.fields.l)},
                    {"translation_invariant", s.translation_invariant},
                    {"residual", s.residual}});
  o.results = {{"degenerate_theta", res.degenerate_theta},
               {"converged_starts", res.converged_starts},
               {"failed_starts", res.failed_starts},
               {"solutions", sols}};
  return o;
}

Outcome cmd_injectivity(const Flags& f) {
  const auto p = resolve_params(f);
  const int samples = f.samples > 0 ? f.samples : 1000;
  const auto rep = injectivity_probe(p.theta, p.r, samples, f.rng_seed);
  Outcome o;
  o.parameters = params_json(p);
  o.parameters["samples"] = samples;
  o.parameters["rng_seed"] = f.rng_seed;
  o.results = {{"degenerate_theta", rep.degenerate_theta},
               {"injective_on_samples", rep.injective_on_samples},
               {"pairs_tested", rep.samples},
               {"min_separation_ratio", rep.min_separation_ratio}};
  if (rep.witness) {
    o.results["witness"] = {{"h", field_json(rep.witness->first)}, {"l", field_json(rep.witness->second)}};
  } else {
    o.results["witness"] = nullptr;
  }
  return o;
}

Outcome cmd_quadratic(const Flags& f) {
  const auto p = resolve_params(f);
  const auto q = quadratic_coeffs(p.theta, p.r);
  Outcome o;
  o.parameters = params_json(p);
  Json roots = Json::array();
  for (double z : quadratic_roots(q))
    roots.push_back({{"z", z}, {"residual", std::abs((q.a * z + q.b) * z + q.c)}});
  o.results = {{"a", q.a},
               {"b", q.b},
               {"c", q.c},
               {"D", q.b * q.b - 4.0 * q.a * q.c},
               {"b2_minus_ac", q.b * q.b - q.a * q.c},
               {"roots", roots}};
  return o;
}

Outcome cmd_theta_d(const Flags&) {
  const double t = theta_d();
  Outcome o;
  o.results = {{"theta_D", t},
               {"residual", std::abs(slice_quartic(t))},
               {"D", discriminant(t, t * t)},
               {"b", slice_b(t)}};
  return o;
}

Outcome cmd_classify(const Flags& f) {
  const auto p = resolve_params(f);
  Outcome o;
  o.parameters = params_json(p);
  o.results = phase_json(classify_point(p.theta, p.r, p.k));
  return o;
}

Outcome cmd_phase_scan(const Flags& f) {
  if (f.k != 2) throw std::invalid_argument("phase-scan is defined for k = 2 only");
  if (f.theta.empty()) throw std::invalid_argument("--theta min:max:steps is required");
  const Range tr = parse_range(f.theta);
  std::vector<PhasePoint> points;
  Outcome o;
  o.parameters = {{"k", 2}, {"theta", {tr.min, tr.max, tr.steps}}};
  if (!f.r_rule.empty()) {
    if (f.r_rule != "theta-squared") throw std::invalid_argument("unknown --r-rule '" + f.r_rule + "'");
    if (!f.r.empty()) throw std::invalid_argument("give either --r or --r-rule");
    points = phase_scan_theta_squared(tr);
    o.parameters["r_rule"] = f.r_rule;
  } else {
    if (f.r.empty()) throw std::invalid_argument("--r min:max:steps or --r-rule theta-squared is required");
    const Range rr = parse_range(f.r);
    points = phase_scan(tr, rr);
    o.parameters["r"] = {rr.min, rr.max, rr.steps};
  }
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "theta,r,D,b,classification\n";
  for (const auto& p : points) {
    rows.push_back(phase_json(p));
    csv << format_number(p.theta) << ',' << format_number(p.r) << ',' << format_number(p.D) << ','
        << format_number(p.b) << ',' << to_string(p.classification) << '\n';
  }
  o.results["points"] = rows;
  if (f.cross_check > 0) {
    const auto cc = cross_validate(points, static_cast<std::size_t>(f.cross_check));
    o.results["cross_check"] = {{"stride", f.cross_check}, {"checked", cc.checked}, {"mismatches", cc.mismatches}};
    o.failed = !cc.mismatches.empty();
  }
  o.csv = csv.str();
  return o;
}

Outcome cmd_verify_quadratic(const Flags& f) {
  using exact::Rational;
  std::vector<std::pair<Rational, Rational>> points;
  Outcome o;
  if (f.samples > 0) {
    std::mt19937_64 rng(f.rng_seed);
    std::uniform_int_distribution<int> den(1, 16);
    const auto draw = [&] {
      const int q = den(rng);
      std::uniform_int_distribution<int> num(1, 4 * q);
      return Rational(num(rng), q);
    };
    for (int i = 0; i < f.samples; ++i) {
      const Rational t = draw();
      points.emplace_back(t, draw());
    }
    o.parameters = {{"samples", f.samples}, {"rng_seed", f.rng_seed}, {"k", 2}};
  } else {
    if (f.theta.empty() || f.r.empty()) throw std::invalid_argument("--theta and --r (exact rationals) or --samples are required");
    points.emplace_back(exact::parse_rational(f.theta), exact::parse_rational(f.r));
    o.parameters = {{"theta", exact::to_string(points[0].first)}, {"r", exact::to_string(points[0].second)}, {"k", 2}};
  }
  if (f.k != 2) throw std::invalid_argument("verify-quadratic is defined for k = 2 only");

  Json rows = Json::array();
  bool all_ok = true;
  for (const auto& [t, r] : points) {
    if (t <= 0 || r <= 0) throw std::invalid_argument("theta and r must be positive");
    const auto cq = exact::cycle_quotient(t, r);
    const auto paper = quadratic_coeffs_t<Rational>(t, r);
    const std::vector<Rational> abc{paper.c, paper.b, paper.a};
    const bool prop = exact::proportional(cq.quotient, abc);
    all_ok = all_ok && prop && cq.quotient.degree() == 2;
    Json coeffs = Json::array();
    for (const auto& c : cq.quotient.coefficients()) coeffs.push_back(exact::to_string(c));
    rows.push_back({{"theta", exact::to_string(t)},
                    {"r", exact::to_string(r)},
                    {"degree_composed", cq.composed.degree()},
                    {"degree_fixed", cq.fixed.degree()},
                    {"quotient", coeffs},
                    {"remainder_zero", cq.remainder.is_zero()},
                    {"proportional_to_printed_quadratic", prop},
                    {"scale", prop ? exact::to_string(cq.quotient.leading() / paper.a) : std::string("n/a")}});
  }
  o.results = {{"all_verified", all_ok}, {"points", rows}};
  o.failed = !all_ok;
  return o;
}

Outcome cmd_oracle_check(const Flags& f) {
  const auto p = resolve_params(f);
  if (f.n < 2) throw std::invalid_argument("--n must be >= 2");
  if (f.draws < 1) throw std::invalid_argument("--draws must be >= 1");
  const auto tree = build_tree(p.k, f.n);
  const auto count = configuration_count(p.m, tree.size());
  if (count > kDefaultEnumerationCap)
    throw std::invalid_argument("configuration count " + std::to_string(count) + " exceeds the enumeration cap");

  std::mt19937_64 rng(f.rng_seed);
  std::uniform_real_distribution<double> field(-2.0, 2.0);
  Json draws = Json::array();
  double worst_enforced = 0.0;
  double least_perturbed = std::numeric_limits<double>::infinity();
  for (int d = 0; d < f.draws; ++d) {
    std::vector<ReducedField> last(tree.level_size(f.n), ReducedField(static_cast<std::size_t>(p.m)));
    for (auto& h : last)
      for (auto& x : h) x = field(rng);
    const auto assigned = propagate(tree, last, p.m, p.theta, p.r);
    std::vector<ReducedField> prev;
    for (auto v = tree.level_begin(f.n - 1); v < tree.level_end(f.n - 1); ++v) prev.push_back(assigned.at(v));
    const double enforced = compatibility_residual(p, prev, last, f.n);
    prev[0][0] += 0.5;
    const double perturbed = compatibility_residual(p, prev, last, f.n);
    worst_enforced = std::max(worst_enforced, enforced);
    least_perturbed = std::min(least_perturbed, perturbed);
    draws.push_back({{"residual_recursion", enforced}, {"residual_perturbed", perturbed}});
  }
  Outcome o;
  o.parameters = params_json(p);
  o.parameters["n"] = f.n;
  o.parameters["draws"] = f.draws;
  o.parameters["rng_seed"] = f.rng_seed;
  o.results = {{"configurations", count},
               {"max_residual_recursion", worst_enforced},
               {"min_residual_perturbed", least_perturbed},
               {"draws", draws}};
  return o;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--k", f.k, "branching order of the tree")->check(CLI::PositiveNumber);
  sub->add_option("--m", f.m, "maximal spin value")->check(CLI::PositiveNumber);
  sub->add_option("--theta", f.theta, "exp(J*beta)");
  sub->add_option("--r", f.r, "exp(J_p*beta); for phase-scan a min:max:steps range");
  sub->add_option("--J", f.J, "SOS coupling");
  sub->add_option("--Jp", f.Jp, "Potts coupling");
  sub->add_option("--beta", f.beta, "inverse temperature");
  sub->add_option("--rng-seed", f.rng_seed, "seed for random sampling");
  sub->add_option("--tol", f.tol, "Newton residual tolerance");
  sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--out", f.out_file, "write the report to FILE instead of stdout");
  sub->add_flag("--timing", f.timing, "include wall time in the report");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic Gibbs measures of the Potts-SOS model on Cayley trees", "pottssos"};
  app.require_subcommand(1);
  Flags f;

  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"ti-solve", "translation-invariant fixed points h = k F(h)", cmd_ti_solve},
      {"two-cycles", "period-2 orbits of f (two-coset measures on the z0 = t0 = 1 branch)", cmd_two_cycles},
      {"bipartite-solve", "solutions of the m = 2 two-coset system", cmd_bipartite},
      {"injectivity-probe", "random search for F(h) = F(l) with h != l", cmd_injectivity},
      {"quadratic", "k = 2 period-2 quadratic and its roots", cmd_quadratic},
      {"theta-d", "threshold theta_D on the r = theta^2 slice", cmd_theta_d},
      {"classify", "classify one (theta, r) point", cmd_classify},
      {"phase-scan", "classify a (theta, r) grid", cmd_phase_scan},
      {"verify-quadratic", "exact rational check of the k = 2 quadratic", cmd_verify_quadratic},
      {"oracle-check", "brute-force compatibility check of the recursion", cmd_oracle_check},
  };
  std::map<const CLI::App*, const Command*> handlers;
  std::map<const CLI::App*, std::string> names;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, f);
    if (name == "ti-solve" || name == "bipartite-solve")
      sub->add_option("--seeds", f.seeds, "seed grid points per coordinate")->check(CLI::PositiveNumber);
    if (name == "injectivity-probe" || name == "verify-quadratic")
      sub->add_option("--samples", f.samples, "number of random samples")->check(CLI::PositiveNumber);
    if (name == "oracle-check") {
      sub->add_option("--n", f.n, "tree depth");
      sub->add_option("--draws", f.draws, "number of random boundary draws");
    }
    if (name == "phase-scan") {
      sub->get_option("--theta")->description("theta range min:max:steps");
      sub->add_option("--r-rule", f.r_rule, "derive r from theta (theta-squared)");
      sub->add_option("--cross-check", f.cross_check, "compare every N-th point against two-cycles (0 = off)");
    }
    handlers[sub] = &fn;
    names[sub] = name;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = (*handlers[chosen])(f);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream body;
    if (f.format == "csv") {
      if (o.csv.empty()) throw std::invalid_argument("--format csv is only available for phase-scan");
      body << o.csv;
    } else {
      Json report{{"command", names[chosen]}, {"parameters", o.parameters}, {"results", o.results}};
      if (f.timing) report["wall_time_s"] = elapsed;
      if (f.format == "json") {
        emit_json(report, body, 0);
        body << "\n";
      } else {
        emit_text(report, body, 0);
      }
    }
    if (f.out_file.empty()) {
      out << body.str();
    } else {
      std::ofstream file(f.out_file, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open --out file '" + f.out_file + "'");
      file << body.str();
    }
    if (o.failed) {
      err << "error: consistency check failed (see report)\n";
      return 1;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n" << chosen->help();
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pottssos::cli
