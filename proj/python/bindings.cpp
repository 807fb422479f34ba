#include <bintail/bounds.hpp>
#include <bintail/exact_oracle.hpp>
#include <bintail/gaussian_tail.hpp>
#include <bintail/mckay.hpp>
#include <bintail/report.hpp>
#include <bintail/validator.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bintail;

namespace {

// p is "a/b", a decimal string, or a Python float.
Probability prob(const py::object& p) {
  if (py::isinstance<py::str>(p)) return Probability::parse(p.cast<std::string>());
  return Probability::binary64(p.cast<double>());
}

BinomialParams make(std::int64_t n, std::int64_t k, const py::object& p) { return BinomialParams(n, k, prob(p)); }

Tail tail_of(const std::string& s) {
  if (s == "lower") return Tail::lower;
  if (s == "upper") return Tail::upper;
  throw std::invalid_argument("tail must be 'lower' or 'upper'");
}

py::dict exact_dict(const ExactReal& e) {
  py::dict d;
  d["value"] = e.to_double();
  d["text"] = e.str(30);
  d["rational"] = e.is_rational();
  d["error"] = static_cast<double>(e.error().convert_to<double>());
  return d;
}

py::dict log_dict(const LogValue& v) {
  py::dict d;
  d["value"] = v.value;
  d["log_value"] = v.log_value;
  return d;
}

}  // namespace

PYBIND11_MODULE(_bintail, m) {
  m.doc() = "Binomial tail bounds with an exact oracle and certification suites";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  m.def(
      "evaluate",
      [](std::int64_t n, std::int64_t k, const py::object& p, const std::string& tail, bool exact) {
        return eval_json(evaluate_point(make(n, k, p), tail_of(tail), exact));
      },
      py::arg("n"), py::arg("k"), py::arg("p"), py::arg("tail") = "lower", py::arg("exact") = false);

  m.def(
      "ratio_bounds",
      [](std::int64_t n, std::int64_t k, const py::object& p, const std::string& tail) {
        BinomialParams bp = make(n, k, p);
        RatioBoundSet r = tail_of(tail) == Tail::upper ? upper_tail_ratio_bounds(bp) : ratio_bounds(bp);
        py::dict d;
        d["L"] = r.L;
        d["U"] = r.U;
        d["branch_a"] = r.branch_a;
        d["zero_branch"] = r.zero_branch;
        d["kappa1"] = r.kappa1;
        return d;
      },
      py::arg("n"), py::arg("k"), py::arg("p"), py::arg("tail") = "lower");

  m.def(
      "tail_bounds",
      [](std::int64_t n, std::int64_t k, const py::object& p, const std::string& tail) {
        BinomialParams bp = make(n, k, p);
        TailBoundSet t = tail_of(tail) == Tail::upper ? upper_tail_bounds(bp) : tail_bounds(bp);
        py::dict d;
        d["b_down"] = log_dict(t.b_down);
        d["b_up"] = log_dict(t.b_up);
        d["chernoff"] = log_dict(t.chernoff);
        d["reverse_type"] = log_dict(t.reverse_type);
        d["reverse_ash"] = log_dict(t.reverse_ash);
        d["ferrante"] = t.ferrante ? py::object(log_dict(*t.ferrante)) : py::object(py::none());
        return d;
      },
      py::arg("n"), py::arg("k"), py::arg("p"), py::arg("tail") = "lower");

  m.def(
      "mckay_tail_bounds",
      [](std::int64_t n, std::int64_t k, const py::object& p, const std::string& tail) {
        Interval i = mckay_tail_bounds(make(n, k, p), tail_of(tail));
        return py::make_tuple(i.lo, i.hi);
      },
      py::arg("n"), py::arg("k"), py::arg("p"), py::arg("tail") = "upper");

  m.def(
      "exact_tail",
      [](std::int64_t n, std::int64_t k, const py::object& p, const std::string& tail) {
        BinomialParams bp = make(n, k, p);
        return exact_dict(tail_of(tail) == Tail::upper ? upper_tail_exact(bp) : lower_tail_exact(bp));
      },
      py::arg("n"), py::arg("k"), py::arg("p"), py::arg("tail") = "lower");

  m.def("theta", [](std::int64_t k) { return exact_dict(ramanujan_theta(k)); }, py::arg("k"));
  m.def(
      "zeta", [](std::int64_t n, std::int64_t k) { return exact_dict(median_deficit_zeta(n, k)); }, py::arg("n"),
      py::arg("k"));

  m.def(
      "gaussian_tail_bounds",
      [](double x) {
        Interval i = gaussian_tail_bounds(x);
        return py::make_tuple(i.lo, i.hi);
      },
      py::arg("x"));
  m.def(
      "gaussian_tail_exact", [](double x, double tol) { return exact_dict(gaussian_upper_tail(x, tol)); },
      py::arg("x"), py::arg("tol") = 1e-15);

  m.def("crossover_f_star", [](double p) { return crossover_f_star(p).f_star; }, py::arg("p"));

  m.def("suite_ids", &suite_ids);

  m.def(
      "run_suite",
      [](const std::string& suite, std::int64_t n_max, const std::vector<py::object>& p_list, unsigned threads) {
        GridSpec g = GridSpec::standard(n_max);
        if (!p_list.empty()) {
          g.p_values.clear();
          for (const auto& s : p_list) g.p_values.push_back(prob(s).as_rational());
        }
        ValidatorOptions o;
        o.threads = threads;
        CheckSummary s;
        {
          py::gil_scoped_release release;
          s = run_suite(suite, g, o);
        }
        return summary_json(s);
      },
      py::arg("suite"), py::arg("n_max") = 60, py::arg("p_list") = std::vector<py::object>{},
      py::arg("threads") = 0);
}
