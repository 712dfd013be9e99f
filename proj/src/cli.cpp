#include "floorsum/cli.hpp"

#include "floorsum/arith_sieve.hpp"
#include "floorsum/balance.hpp"
#include "floorsum/constants.hpp"
#include "floorsum/errors.hpp"
#include "floorsum/expsum.hpp"
#include "floorsum/exppair.hpp"
#include "floorsum/floor_sums.hpp"
#include "floorsum/vaaler.hpp"
#include "floorsum/vaughan.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace floorsum::cli {

namespace {

using json = nlohmann::ordered_json;
using u64 = std::uint64_t;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json rational_json(const Rational& r) { return {{"num", numerator_string(r)}, {"den", denominator_string(r)}}; }

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json pair_json(const exppair::ExponentPair& p) {
  return {{"kappa", rational_json(p.kappa())}, {"lambda", rational_json(p.lambda())}};
}

json bound_json(const exppair::BoundEvaluation& ev) {
  json inputs = json::object();
  for (const auto& [k, v] : ev.inputs) inputs[k] = v;
  json terms = json::array();
  for (const auto& t : ev.terms) terms.push_back({{"name", t.name}, {"value", t.value}});
  json j = {{"lemma", exppair::lemma_name(ev.lemma)}, {"inputs", inputs}};
  if (ev.pair) j["pair"] = pair_json(*ev.pair);
  j["value"] = ev.value;
  j["terms"] = terms;
  j["in_domain"] = ev.in_domain;
  if (!ev.note.empty()) j["note"] = ev.note;
  return j;
}

json bracket_json(const ConstantBracket& b) {
  return {{"kind", b.fn.kind == ArithKind::Lambda ? "lambda" : "tau"},
          {"k", b.fn.k},
          {"terms", b.terms_used},
          {"lo", b.lo},
          {"hi", b.hi}};
}

std::vector<u64> parse_u64_list(const std::string& s) {
  std::vector<u64> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const unsigned long long v = std::stoull(item, &used);
    if (used != item.size()) throw ParseError("malformed integer list '" + s + "'");
    out.push_back(v);
  }
  return out;
}

// Integers given as 1e8 or 100000000.
u64 parse_count(const std::string& s) {
  std::size_t used = 0;
  const double d = std::stod(s, &used);
  if (used != s.size() || d < 0 || d > 9.2e18 || d != std::floor(d)) {
    throw ParseError("expected a non-negative integer, got '" + s + "'");
  }
  return static_cast<u64>(d);
}

struct Common {
  unsigned threads = 1;
  std::string format;
  u64 seed = 0;
  std::string max_terms = "268435456";
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Floor-quotient sums, their main-term constants, and the exponent bookkeeping behind them"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (results do not depend on this)")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--seed", common.seed, "Seed for randomized inputs");
  app.add_option("--max-terms", common.max_terms, "Budget on table entries / loop terms (accepts 1e8 notation)");

  // sieve
  auto* sieve = app.add_subcommand("sieve", "Tabulate lambda (prime base), mu or tau_k on [lo, hi). CSV columns: n,value");
  std::string sieve_f = "lambda", sieve_lo = "1", sieve_hi;
  sieve->add_option("--f", sieve_f, "lambda | mu | tauK")->required();
  sieve->add_option("--lo", sieve_lo, "First n (inclusive)");
  sieve->add_option("--hi", sieve_hi, "Last n (exclusive)")->required();
  sieve->add_option("--format", common.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // floorsum
  auto* fsum = app.add_subcommand("floorsum", "S_f(x) = sum_{n<=x} f([x/n]). json fields: f,x,method,value[,s1,s2,...]");
  std::string fs_f, fs_x, fs_method = "blocked", fs_n;
  fsum->add_option("--f", fs_f, "lambda | tauK")->required();
  fsum->add_option("--x", fs_x, "x >= 1")->required();
  fsum->add_option("--method", fs_method, "direct | blocked | dual")->check(CLI::IsMember({"direct", "blocked", "dual"}));
  fsum->add_option("--N", fs_n, "Split threshold for --method dual (default floor(x^(7/15)))");
  fsum->add_option("--format", common.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  // constant
  auto* constant = app.add_subcommand("constant", "Certified bracket of sum f(n)/(n(n+1)). json: {kind,k,terms,lo,hi}");
  std::string c_f, c_terms = "1000000", c_order = "blockwise";
  constant->add_option("--f", c_f, "lambda | tauK")->required();
  constant->add_option("--terms", c_terms, "Partial-sum length N >= 10");
  constant->add_option("--order", c_order, "ascending | blockwise")->check(CLI::IsMember({"ascending", "blockwise"}));

  // errfit
  auto* errfit = app.add_subcommand("errfit", "Error series E(x) = S_f(x) - C_f x. CSV columns: x,S,E,C_lo,C_hi");
  std::string ef_f, ef_start = "1e4", ef_limit = "1e8", ef_terms = "2.5e8", ef_summary;
  double ef_ratio = 2.0, ef_resolution = 100.0;
  errfit->add_option("--f", ef_f, "lambda | tauK")->required();
  errfit->add_option("--start", ef_start, "First grid point");
  errfit->add_option("--limit", ef_limit, "Grid limit");
  errfit->add_option("--ratio", ef_ratio, "Grid ratio")->check(CLI::PositiveNumber);
  errfit->add_option("--terms", ef_terms, "Terms for the constant bracket");
  errfit->add_option("--resolution", ef_resolution, "Largest tolerated constant uncertainty times x");
  errfit->add_option("--summary", ef_summary, "Write the JSON fit summary to this file");
  errfit->add_option("--format", common.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // vaaler-check
  auto* vaaler_cmd = app.add_subcommand("vaaler-check", "Check |psi* - psi| <= delta. CSV columns: x,psi,psi_star,delta,slack");
  int v_h = 10;
  std::size_t v_points = 10000;
  int v_den = 20;
  vaaler_cmd->add_option("--H", v_h, "Order H >= 1")->required();
  vaaler_cmd->add_option("--points", v_points, "Uniform grid points on [-1, 2)");
  vaaler_cmd->add_option("--max-den", v_den, "Include rationals p/q with q <= this");
  vaaler_cmd->add_option("--format", common.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // vaughan-check
  auto* vaughan_cmd = app.add_subcommand("vaughan-check", "Verify t1 - t2 + t3 = sum Lambda(d) g(d). json: {D,U,T1,T2,T3,direct,abs_err,rel_err}");
  u64 vg_d = 1000;
  std::optional<u64> vg_d1;
  std::string vg_g = "one";
  u64 vg_x = 1000000;
  vaughan_cmd->add_option("--D", vg_d, "D > 100")->required();
  vaughan_cmd->add_option("--D1", vg_d1, "Upper limit in (D, 2D], default 2D");
  vaughan_cmd->add_option("--g", vg_g, "one | phase (e(x/d)) | random")->check(CLI::IsMember({"one", "phase", "random"}));
  vaughan_cmd->add_option("--x", vg_x, "x for --g phase");
  bool vg_bounds = false;
  vaughan_cmd->add_flag("--bounds", vg_bounds, "Also report coefficient bound ratios");

  // exppair
  auto* ep = app.add_subcommand("exppair", "Exponent-pair words and bound formulas. json with exact {num,den} fields");
  std::string ep_word, ep_base = "1/2,1/2", ep_bound;
  double ep_X = 1, ep_Y = 1, ep_H = 1, ep_M = 1, ep_N = 1, ep_x = 1, ep_D = 1;
  ep->add_option("--word", ep_word, "Word such as BA^5 (applied right to left)");
  ep->add_option("--base", ep_base, "Base pair kappa,lambda");
  ep->add_option("--bound", ep_bound, "lwy | rs | vdc | former")->check(CLI::IsMember({"lwy", "rs", "vdc", "former"}));
  ep->add_option("--X", ep_X);
  ep->add_option("--Y", ep_Y);
  ep->add_option("--H", ep_H);
  ep->add_option("--M", ep_M);
  ep->add_option("--N", ep_N);
  ep->add_option("--x", ep_x);
  ep->add_option("--D", ep_D);

  // balance
  auto* bal = app.add_subcommand("balance", "Exact min-max balancing of affine exponent forms. json with {num,den} fields");
  std::vector<std::string> b_params, b_forms, b_boxes, b_at;
  bal->add_option("--param", b_params, "Parameter name (repeatable, order fixes tie-breaking)")->required();
  bal->add_option("--form", b_forms, "Affine form, e.g. \"11/24+(7/12)w\" (repeatable)")->required();
  bal->add_option("--box", b_boxes, "name=lo:hi (default 0:1; empty side = unbounded)");
  bal->add_option("--at", b_at, "Evaluate at name=value instead of optimizing");

  // expsum
  auto* es = app.add_subcommand("expsum", "Measured exponential sums vs lemma bounds. CSV columns: id,shape,H,M,N,measured,bound,ratio,case");
  es->set_help_flag("--help", "Print this help message and exit");
  std::string es_shape = "monomial1d", es_coeff = "unit", es_lemma, es_pair = "1/2,1/2";
  u64 es_H = 1, es_M = 1, es_N = 1000, es_x = 1000000, es_h = 1, es_regime = 0;
  unsigned es_delta = 0;
  double es_X = 0, es_rho = 1.0 / 195.0;
  es->add_option("--shape", es_shape, "monomial1d | bilinear | triple");
  es->add_option("--coeff", es_coeff, "unit | mu | lambda | random");
  es->add_option("--H", es_H);
  es->add_option("--M", es_M);
  es->add_option("--N", es_N);
  es->add_option("--x", es_x);
  es->add_option("--h", es_h);
  es->add_option("--delta", es_delta)->check(CLI::Range(0u, 1u));
  es->add_option("--X", es_X, "Phase size for the triple shape");
  es->add_option("--lemma", es_lemma, "vdc | lwy | rs")->check(CLI::IsMember({"vdc", "lwy", "rs"}));
  es->add_option("--pair", es_pair, "Exponent pair for vdc/lwy");
  es->add_option("--regime", es_regime, "Build the large-D triple scenario at this x");
  es->add_option("--rho", es_rho, "rho for --regime");
  es->add_option("--format", common.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // classify
  auto* cls = app.add_subcommand("classify", "Case I/II/III split of a dyadic factorization");
  int cl_k = 2;
  u64 cl_d = 0;
  std::string cl_factors;
  cls->add_option("--k", cl_k)->required();
  cls->add_option("--D", cl_d)->required();
  cls->add_option("--factors", cl_factors, "Comma-separated D_1 <= ... <= D_k")->required();
  cls->add_option("--format", common.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    const u64 max_terms = parse_count(common.max_terms);
    const EvalOptions eval{common.threads, max_terms};

    if (sieve->parsed()) {
      const ArithFunction fn = parse_arith_function(sieve_f);
      const ArithmeticTable t = cached_sieve_table(fn, parse_count(sieve_lo), parse_count(sieve_hi), cache_directory(),
                                                   {.threads = common.threads, .max_entries = max_terms});
      if (common.format == "json") {
        json j = {{"f", fn.name()}, {"lo", t.lo}, {"hi", t.hi}, {"values", t.values}};
        out << j.dump() << "\n";
      } else {
        out << "n,value\n";
        for (u64 n = t.lo; n < t.hi; ++n) out << n << "," << t.at(n) << "\n";
      }
    } else if (fsum->parsed()) {
      const ArithFunction fn = parse_arith_function(fs_f);
      const u64 x = parse_count(fs_x);
      json j = {{"f", fn.name()}, {"x", x}, {"method", fs_method}};
      std::string value;
      if (fs_method == "dual") {
        const u64 N = fs_n.empty() ? std::max<u64>(1, static_cast<u64>(std::floor(std::pow(static_cast<double>(x), 7.0 / 15.0))))
                                   : parse_count(fs_n);
        const SplitSum s = sum_dual(fn, x, N, eval);
        value = s.total.to_string();
        j["N"] = N;
        j["value"] = value;
        j["s1"] = s.s1.to_string();
        j["s2"] = s.s2.to_string();
        j["d_max"] = s.d_max;
        j["straddles"] = s.straddles;
        j["main_part"] = s.main_part;
        j["psi_part"] = s.psi_part;
        j["boundary_correction"] = s.boundary_correction;
        j["identity_mismatches"] = s.identity_mismatches;
      } else {
        const FloorSumValue v = fs_method == "direct" ? sum_direct(fn, x, eval) : sum_blocked(fn, x, eval);
        value = v.to_string();
        j["value"] = value;
      }
      if (common.format == "json") out << j.dump() << "\n";
      else out << value << "\n";
    } else if (constant->parsed()) {
      const ArithFunction fn = parse_arith_function(c_f);
      const ConstantBracket b = main_constant(
          fn, parse_count(c_terms),
          {.order = c_order == "ascending" ? SummationOrder::Ascending : SummationOrder::Blockwise,
           .threads = common.threads});
      out << bracket_json(b).dump() << "\n";
    } else if (errfit->parsed()) {
      const ArithFunction fn = parse_arith_function(ef_f);
      const ConstantBracket b = main_constant(fn, parse_count(ef_terms), {.threads = common.threads});
      const auto grid = geometric_grid(parse_count(ef_start), parse_count(ef_limit), ef_ratio);
      const ErrorSeries series = error_series(fn, b, grid, ef_resolution, eval);
      json summary = {{"f", fn.name()}, {"constant", bracket_json(b)}, {"points", series.points.size()}};
      try {
        const ExponentFit fit = fit_exponent(series);
        summary["slope"] = fit.slope;
        summary["intercept"] = fit.intercept;
        summary["residual"] = fit.residual;
        summary["used"] = fit.used;
        summary["excluded"] = fit.excluded;
      } catch (const DomainError& e) {
        summary["fit_error"] = e.what();
      }
      if (!ef_summary.empty()) std::ofstream(ef_summary) << summary.dump(2) << "\n";
      if (common.format == "json") {
        json pts = json::array();
        for (const auto& p : series.points) pts.push_back({{"x", p.x}, {"S", p.s}, {"E", p.e}});
        summary["series"] = pts;
        out << summary.dump() << "\n";
      } else {
        out << "x,S,E,C_lo,C_hi\n";
        for (const auto& p : series.points) {
          out << p.x << "," << fmt(p.s) << "," << fmt(p.e) << "," << fmt(b.lo) << "," << fmt(b.hi) << "\n";
        }
      }
    } else if (vaaler_cmd->parsed()) {
      const auto grid = vaaler::vaaler_grid(v_points, v_den);
      const bool rows = common.format != "json";
      const auto r = vaaler::check_vaaler_inequality(v_h, grid, rows);
      if (rows) {
        out << "x,psi,psi_star,delta,slack\n";
        for (const auto& row : r.rows) {
          out << fmt(row.x) << "," << fmt(row.psi) << "," << fmt(row.psi_star) << "," << fmt(row.delta) << ","
              << fmt(row.slack) << "\n";
        }
      } else {
        out << json{{"H", r.H}, {"points", r.points}, {"max_violation", r.max_violation}, {"argmax", r.argmax},
                    {"min_delta", r.min_delta}, {"pass", r.max_violation <= 1e-12}}
                   .dump()
            << "\n";
      }
    } else if (vaughan_cmd->parsed()) {
      vaughan::TestFunction g;
      if (vg_g == "one") {
        g = [](u64) { return std::complex<double>(1.0, 0.0); };
      } else if (vg_g == "phase") {
        g = [x = vg_x](u64 d) {
          const double f = static_cast<double>(x % d) / static_cast<double>(d);
          return std::polar(1.0, 2.0 * std::numbers::pi * f);
        };
      } else {
        g = [seed = common.seed](u64 d) { return expsum::coefficient(expsum::Coefficients::RandomUnimodular, d, seed, 7); };
      }
      const auto v = vaughan::decompose(vg_d, g, vg_d1);
      json j = {{"D", v.D},
                {"U", v.U},
                {"T1", complex_json(v.t1)},
                {"T2", complex_json(v.t2)},
                {"T3", complex_json(v.t3)},
                {"direct", complex_json(v.direct)},
                {"abs_err", v.abs_err},
                {"rel_err", v.rel_err}};
      if (vg_bounds) {
        const auto r = vaughan::coefficient_bounds_report(vg_d);
        j["max_c_ratio"] = r.max_c_ratio;
        j["max_w_ratio"] = r.max_w_ratio;
      }
      out << j.dump() << "\n";
    } else if (ep->parsed()) {
      const exppair::ExponentPair base = exppair::parse_pair(ep_base);
      const exppair::ExponentPair result = exppair::eval_word(ep_word, base);
      json j = pair_json(result);
      j["word"] = ep_word;
      j["base"] = pair_json(base);
      if (!ep_bound.empty()) {
        exppair::BoundEvaluation ev;
        if (ep_bound == "lwy") ev = exppair::eval_lwy_bound(result, ep_X, ep_H, ep_M, ep_N);
        else if (ep_bound == "rs") ev = exppair::eval_rs_bound(ep_X, ep_H, ep_M, ep_N);
        else if (ep_bound == "vdc") ev = exppair::eval_vdc_bound(result, ep_Y, ep_X);
        else ev = exppair::eval_former_bound(ep_x, ep_D);
        j["bound"] = bound_json(ev);
      }
      out << j.dump() << "\n";
    } else if (bal->parsed()) {
      std::vector<balance::LinearExponentForm> forms;
      for (const auto& f : b_forms) forms.push_back(balance::parse_form(f, b_params));
      std::map<std::string, balance::ParameterBox> box;
      for (const auto& p : b_params) box[p] = {Rational(0), Rational(1)};
      for (const auto& spec : b_boxes) {
        const auto eq = spec.find('=');
        const auto colon = spec.find(':', eq == std::string::npos ? 0 : eq);
        if (eq == std::string::npos || colon == std::string::npos) throw ParseError("box must be name=lo:hi");
        const std::string name = spec.substr(0, eq);
        const std::string lo = spec.substr(eq + 1, colon - eq - 1);
        const std::string hi = spec.substr(colon + 1);
        balance::ParameterBox b;
        if (!lo.empty()) b.lo = parse_rational(lo);
        if (!hi.empty()) b.hi = parse_rational(hi);
        box[name] = b;
      }
      json forms_json = json::array();
      for (const auto& f : forms) forms_json.push_back(f.to_string());
      if (!b_at.empty()) {
        balance::Assignment at;
        for (const auto& spec : b_at) {
          const auto eq = spec.find('=');
          if (eq == std::string::npos) throw ParseError("--at must be name=value");
          at[spec.substr(0, eq)] = parse_rational(spec.substr(eq + 1));
        }
        const auto values = balance::evaluate_at(forms, at);
        json vals = json::array();
        for (const auto& [label, v] : values.values) vals.push_back({{"form", label}, {"value", rational_json(v)}});
        out << json{{"forms", forms_json}, {"values", vals}, {"max", rational_json(values.max)}}.dump() << "\n";
      } else {
        const auto sol = balance::minimize_max(forms, b_params, box);
        json assignment = json::object();
        for (const auto& p : b_params) assignment[p] = rational_json(sol.assignment.at(p));
        out << json{{"forms", forms_json},
                    {"assignment", assignment},
                    {"value", rational_json(sol.value)},
                    {"active", sol.active}}
                   .dump()
            << "\n";
      }
    } else if (es->parsed()) {
      expsum::Scenario s;
      if (es_regime > 0) {
        s = expsum::large_d_scenario(es_regime, es_rho, common.seed);
      } else {
        s.shape = expsum::parse_shape(es_shape);
        s.coefficients = expsum::parse_coefficients(es_coeff);
        s.H = es_H;
        s.M = es_M;
        s.N = es_N;
        s.x = es_x;
        s.h = es_h;
        s.delta = es_delta;
        s.X = es_X;
        s.seed = common.seed;
      }
      const expsum::SumOptions opts{.threads = common.threads, .max_terms = std::max<u64>(max_terms, 1'000'000'000)};
      double measured = 0, bound = 0, ratio = 0;
      if (!es_lemma.empty()) {
        const exppair::Lemma lemma = es_lemma == "vdc" ? exppair::Lemma::VDC
                                     : es_lemma == "lwy" ? exppair::Lemma::LWY
                                                         : exppair::Lemma::RS;
        const auto cmp = expsum::bound_comparison(s, lemma, exppair::parse_pair(es_pair), opts);
        measured = cmp.measured.modulus;
        bound = cmp.bound.value;
        ratio = cmp.ratio;
      } else {
        measured = expsum::compute_expsum(s, opts).modulus;
      }
      if (common.format == "json") {
        out << json{{"shape", expsum::shape_name(s.shape)}, {"H", s.H}, {"M", s.M}, {"N", s.N},
                    {"measured", measured}, {"bound", bound}, {"ratio", ratio}}
                   .dump()
            << "\n";
      } else {
        out << "id,shape,H,M,N,measured,bound,ratio,case\n";
        out << "0," << expsum::shape_name(s.shape) << "," << s.H << "," << s.M << "," << s.N << "," << fmt(measured)
            << "," << fmt(bound) << "," << fmt(ratio) << ",\n";
      }
    } else if (cls->parsed()) {
      const auto split = expsum::classify_factorization(cl_k, cl_d, parse_u64_list(cl_factors));
      if (common.format == "csv") {
        out << "k,D,factors,case,t,L1,L2\n";
        out << split.k << "," << split.D << ",\"" << cl_factors << "\"," << expsum::case_name(split.label) << ","
            << split.merge_index << "," << split.L1 << "," << split.L2 << "\n";
      } else {
        out << json{{"k", split.k}, {"D", split.D}, {"factors", split.factors},
                    {"case", expsum::case_name(split.label)}, {"t", split.merge_index}, {"L1", split.L1},
                    {"L2", split.L2}}
                   .dump()
            << "\n";
      }
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}

}  // namespace floorsum::cli
