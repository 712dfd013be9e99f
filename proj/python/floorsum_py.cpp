#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "floorsum/arith_sieve.hpp"
#include "floorsum/balance.hpp"
#include "floorsum/cli.hpp"
#include "floorsum/constants.hpp"
#include "floorsum/errors.hpp"
#include "floorsum/expsum.hpp"
#include "floorsum/exppair.hpp"
#include "floorsum/floor_sums.hpp"
#include "floorsum/vaaler.hpp"
#include "floorsum/vaughan.hpp"

#include <sstream>

namespace py = pybind11;
using namespace floorsum;
using u64 = std::uint64_t;

namespace {

py::object fraction(const Rational& r) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  py::object to_int = py::module_::import("builtins").attr("int");
  return Fraction(to_int(numerator_string(r)), to_int(denominator_string(r)));
}

Rational from_python(py::handle v) {
  return parse_rational(py::str(v).cast<std::string>());
}

// Exact sums come back as Python ints, Lambda sums as floats.
py::object value_object(const FloorSumValue& v) {
  if (v.fn.is_exact()) return py::module_::import("builtins").attr("int")(u128_to_string(v.exact));
  return py::float_(v.real);
}

py::object floor_sum(const std::string& f, u64 x, const std::string& method, std::optional<u64> N, unsigned threads) {
  const ArithFunction fn = parse_arith_function(f);
  const EvalOptions opts{threads};
  if (method != "direct" && method != "blocked" && method != "dual") throw ParseError("unknown method '" + method + "'");
  FloorSumValue v;
  {
    py::gil_scoped_release release;
    if (method == "direct") {
      v = sum_direct(fn, x, opts);
    } else if (method == "blocked") {
      v = sum_blocked(fn, x, opts);
    } else {
      const u64 n = N ? *N : std::max<u64>(1, static_cast<u64>(std::floor(std::pow(static_cast<double>(x), 7.0 / 15.0))));
      v = sum_dual(fn, x, n, opts).total;
    }
  }
  return value_object(v);
}

py::dict bracket_dict(const ConstantBracket& b) {
  py::dict d;
  d["f"] = b.fn.name();
  d["terms"] = b.terms_used;
  d["lo"] = b.lo;
  d["hi"] = b.hi;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Floor-quotient sums and their exponent bookkeeping";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def(
      "sieve",
      [](const std::string& f, u64 lo, u64 hi) { return sieve_table(parse_arith_function(f), lo, hi).values; },
      py::arg("f"), py::arg("lo"), py::arg("hi"),
      "Values on [lo, hi). Lambda entries are prime bases b with Lambda = log b (1 means 0).");

  m.def("floor_sum", &floor_sum, py::arg("f"), py::arg("x"), py::arg("method") = "blocked",
        py::arg("N") = py::none(), py::arg("threads") = 1);

  m.def(
      "dual_split",
      [](const std::string& f, u64 x, u64 N) {
        const SplitSum s = sum_dual(parse_arith_function(f), x, N);
        py::dict d;
        d["total"] = value_object(s.total);
        d["s1"] = value_object(s.s1);
        d["s2"] = value_object(s.s2);
        d["d_max"] = s.d_max;
        d["main_part"] = s.main_part;
        d["psi_part"] = s.psi_part;
        d["boundary_correction"] = s.boundary_correction;
        d["identity_mismatches"] = s.identity_mismatches;
        return d;
      },
      py::arg("f"), py::arg("x"), py::arg("N"));

  m.def(
      "distinct_quotients",
      [](u64 x) {
        std::vector<std::tuple<u64, u64, u64>> out;
        for (const auto& b : floorsum::distinct_quotients(x).blocks) out.emplace_back(b.q, b.n_lo, b.n_hi);
        return out;
      },
      py::arg("x"), "List of (q, n_lo, n_hi) with [x/n] = q on n_lo..n_hi.");

  m.def(
      "main_constant",
      [](const std::string& f, u64 terms, unsigned threads) {
        ConstantOptions opts;
        opts.threads = threads;
        ConstantBracket b;
        {
          py::gil_scoped_release release;
          b = floorsum::main_constant(parse_arith_function(f), terms, opts);
        }
        return bracket_dict(b);
      },
      py::arg("f"), py::arg("terms"), py::arg("threads") = 1);

  m.def(
      "error_series",
      [](const std::string& f, std::vector<u64> xs, u64 terms) {
        const ArithFunction fn = parse_arith_function(f);
        const ConstantBracket c = floorsum::main_constant(fn, terms);
        const ErrorSeries s = floorsum::error_series(fn, c, xs);
        py::list rows;
        for (const auto& p : s.points) rows.append(py::make_tuple(p.x, p.s, p.e, p.e_lo, p.e_hi));
        py::dict d;
        d["constant"] = bracket_dict(c);
        d["points"] = rows;
        try {
          const ExponentFit fit = fit_exponent(s);
          d["slope"] = fit.slope;
          d["residual"] = fit.residual;
        } catch (const DomainError&) {
          d["slope"] = py::none();
          d["residual"] = py::none();
        }
        return d;
      },
      py::arg("f"), py::arg("xs"), py::arg("terms") = 10'000'000);

  m.def("psi_star", py::overload_cast<double, int>(&vaaler::psi_star), py::arg("x"), py::arg("H"));
  m.def("delta", &vaaler::delta_majorant, py::arg("x"), py::arg("H"));
  m.def(
      "vaaler_check",
      [](int H, std::size_t points) {
        const auto r = vaaler::check_vaaler_inequality(H, vaaler::vaaler_grid(points));
        py::dict d;
        d["H"] = r.H;
        d["points"] = r.points;
        d["max_violation"] = r.max_violation;
        d["argmax"] = r.argmax;
        d["min_delta"] = r.min_delta;
        return d;
      },
      py::arg("H"), py::arg("points") = 10000);

  m.def(
      "vaughan_check",
      [](u64 D, u64 seed) {
        const auto v = vaughan::decompose(
            D, [seed](u64 d) { return expsum::coefficient(expsum::Coefficients::RandomUnimodular, d, seed, 7); });
        py::dict d;
        d["D"] = v.D;
        d["U"] = v.U;
        d["T1"] = v.t1;
        d["T2"] = v.t2;
        d["T3"] = v.t3;
        d["direct"] = v.direct;
        d["abs_err"] = v.abs_err;
        d["rel_err"] = v.rel_err;
        return d;
      },
      py::arg("D"), py::arg("seed") = 0, "Decompose sum Lambda(d) g(d) over (D, 2D] with random unimodular g.");

  m.def(
      "eval_word",
      [](const std::string& word, py::handle kappa, py::handle lambda) {
        const auto p = exppair::eval_word(word, exppair::ExponentPair(from_python(kappa), from_python(lambda)));
        return py::make_tuple(fraction(p.kappa()), fraction(p.lambda()));
      },
      py::arg("word"), py::arg("kappa"), py::arg("lambda_"),
      "Apply a word in A and B (rightmost letter first) to the pair (kappa, lambda).");

  m.def(
      "minimize_max",
      [](const std::vector<std::string>& forms, const std::vector<std::string>& params,
         std::optional<std::map<std::string, std::pair<py::object, py::object>>> box) {
        std::vector<balance::LinearExponentForm> parsed;
        for (const auto& f : forms) parsed.push_back(balance::parse_form(f, params));
        std::map<std::string, balance::ParameterBox> b;
        for (const auto& p : params) b[p] = {Rational(0), Rational(1)};
        if (box) {
          for (const auto& [name, range] : *box) {
            balance::ParameterBox pb;
            if (!range.first.is_none()) pb.lo = from_python(range.first);
            if (!range.second.is_none()) pb.hi = from_python(range.second);
            b[name] = pb;
          }
        }
        const auto sol = balance::minimize_max(parsed, params, b);
        py::dict assignment;
        for (const auto& [name, v] : sol.assignment) assignment[py::str(name)] = fraction(v);
        py::dict d;
        d["assignment"] = assignment;
        d["value"] = fraction(sol.value);
        d["active"] = sol.active;
        return d;
      },
      py::arg("forms"), py::arg("params"), py::arg("box") = py::none(),
      "Minimize the maximum of affine forms over a box (default [0, 1] per parameter).");

  m.def(
      "expsum",
      [](const std::string& shape, u64 H, u64 M, u64 N, u64 x, u64 h, double X, const std::string& coeff,
         u64 seed) {
        expsum::Scenario s;
        s.shape = expsum::parse_shape(shape);
        s.coefficients = expsum::parse_coefficients(coeff);
        s.H = H;
        s.M = M;
        s.N = N;
        s.x = x;
        s.h = h;
        s.X = X;
        s.seed = seed;
        expsum::ExpSumResult r;
        {
          py::gil_scoped_release release;
          r = expsum::compute_expsum(s);
        }
        return r.value;
      },
      py::arg("shape"), py::arg("H") = 1, py::arg("M") = 1, py::arg("N") = 1, py::arg("x") = 0, py::arg("h") = 1,
      py::arg("X") = 0.0, py::arg("coefficients") = "unit", py::arg("seed") = 0);

  m.def(
      "classify",
      [](int k, u64 D, const std::vector<u64>& factors) {
        const auto c = expsum::classify_factorization(k, D, factors);
        py::dict d;
        d["case"] = expsum::case_name(c.label);
        d["t"] = c.merge_index;
        d["L1"] = c.L1;
        d["L2"] = c.L2;
        return d;
      },
      py::arg("k"), py::arg("D"), py::arg("factors"));

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "floorsum");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
