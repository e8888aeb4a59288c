#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pfa/analysis.hpp"
#include "pfa/core.hpp"
#include "pfa/io.hpp"
#include "pfa/one_coin.hpp"
#include "pfa/thirds.hpp"
#include "pfa/thread_tree.hpp"
#include "pfa/value.hpp"

namespace py = pybind11;
using namespace pfa;

namespace {

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(r.get_num().get_str())), py::int_(py::str(r.get_den().get_str())));
}

// Accepts Fraction, int or "N/D" text.
Rational from_python(const py::handle& value) {
  auto text = py::str(value).cast<std::string>();
  auto r = parse_rational(text);
  if (!r) throw py::value_error("not a rational: " + text);
  return *r;
}

py::dict one_coin_report(const Pfa& p, std::size_t max_len) {
  auto r = build_one_coin(p);
  auto rep = verify_one_coin(r, max_len);
  py::dict d;
  d["verified"] = rep.verified;
  d["words_checked"] = rep.words_checked;
  d["probabilistic_transitions"] = prob_transitions(r.target).size();
  if (rep.counterexample) {
    d["counterexample"] = p.format_word(*rep.counterexample);
    d["source_prob"] = to_fraction(rep.source_prob);
    d["target_prob"] = to_fraction(rep.target_prob);
  } else {
    d["counterexample"] = py::none();
  }
  return d;
}

py::dict thirds_report(const Pfa& p, const std::string& word, std::size_t p_max) {
  auto r = build_thirds(p);
  auto rep = verify_thirds(r, p.word(word), p_max);
  py::list f;
  for (const auto& x : rep.f) f.append(to_fraction(x));
  py::dict d;
  d["ok"] = rep.ok;
  d["source_prob"] = to_fraction(rep.source_prob);
  d["f"] = f;
  d["monotone"] = rep.monotone;
  d["bounded"] = rep.bounded;
  d["lower_bound"] = rep.lower_bound;
  return d;
}

py::dict value_report(const Pfa& p, const std::string& word, std::size_t p_max) {
  auto r = build_value_preserving(thirds_normal_form(p));
  auto rep = verify_value_preserving(r, r.source.word(word), p_max);
  py::list actual;
  for (const auto& x : rep.actual) actual.append(to_fraction(x));
  py::dict d;
  d["ok"] = rep.ok;
  d["source_prob"] = to_fraction(rep.source_prob);
  d["k"] = rep.k;
  d["actual"] = actual;
  d["closed_form"] = rep.closed_form;
  return d;
}

Pfa reduce(const Pfa& p, const std::string& mode, const py::object& lambda) {
  if (mode == "one-coin") return build_one_coin(p).target;
  if (mode == "thirds") return build_thirds(p).target;
  if (mode == "value") return build_value_preserving(thirds_normal_form(p), from_python(lambda)).target;
  throw py::value_error("mode must be one-coin, thirds or value");
}

std::string encode(const Pfa& p, const std::string& mode, const std::string& word, std::optional<std::size_t> reps) {
  if (mode == "one-coin") {
    auto r = build_one_coin(p);
    return r.target.format_word(r.encode(p.word(word)));
  }
  if (mode == "thirds") {
    auto r = build_thirds(p);
    return r.target.format_word(r.encode(p.word(word), reps.value_or(2)));
  }
  if (mode == "value") {
    auto r = build_value_preserving(thirds_normal_form(p));
    return r.target.format_word(r.encode_blocks(r.source.word(word), reps.value_or(1)));
  }
  throw py::value_error("mode must be one-coin, thirds or value");
}

}  // namespace

PYBIND11_MODULE(pfakit, m) {
  m.doc() = "Exact simple probabilistic finite automata and their one-coin reductions";

  static py::exception<Error> error(m, "Error");
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<ReductionError> reduction_error(m, "ReductionError", error.ptr());
  static py::exception<UnsupportedLambda> unsupported_lambda(m, "UnsupportedLambda", reduction_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      parse_error(e.what());
    } catch (const UnsupportedLambda& e) {
      unsupported_lambda(e.what());
    } catch (const ReductionError& e) {
      reduction_error(e.what());
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::class_<Pfa>(m, "Pfa")
      .def_property_readonly("states", &Pfa::state_names)
      .def_property_readonly("letters", &Pfa::letter_names)
      .def_property_readonly("initial", [](const Pfa& p) { return p.state_name(p.initial()); })
      .def_property_readonly("accepting",
                             [](const Pfa& p) {
                               std::vector<std::string> out;
                               for (auto s : p.accepting()) out.push_back(p.state_name(s));
                               return out;
                             })
      .def("is_simple", [](const Pfa& p) { return is_simple(p); })
      .def("is_thirds", [](const Pfa& p) { return is_thirds(p); })
      .def("probabilistic_transitions", [](const Pfa& p) { return prob_transitions(p).size(); })
      .def("__eq__", [](const Pfa& a, const Pfa& b) { return a == b; })
      .def("__str__", [](const Pfa& p) { return serialize(p); });

  m.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));
  m.def("serialize", &serialize, py::arg("pfa"));
  m.def(
      "validate",
      [](const Pfa& p) {
        std::vector<std::string> out;
        for (const auto& v : validate(p)) out.push_back(v.message);
        return out;
      },
      py::arg("pfa"));
  m.def(
      "accept_prob", [](const Pfa& p, const std::string& word) { return to_fraction(accept_prob(p, p.word(word))); },
      py::arg("pfa"), py::arg("word"), "Exact acceptance probability of a dot-separated word.");

  m.def("reduce", &reduce, py::arg("pfa"), py::arg("mode"), py::arg("lam") = py::int_(1));
  m.def("encode", &encode, py::arg("pfa"), py::arg("mode"), py::arg("word"), py::arg("p") = py::none());
  m.def("verify_one_coin", &one_coin_report, py::arg("pfa"), py::arg("max_len"));
  m.def("verify_thirds", &thirds_report, py::arg("pfa"), py::arg("word"), py::arg("p_max"));
  m.def("verify_value", &value_report, py::arg("pfa"), py::arg("word"), py::arg("p_max"));

  m.def(
      "estimate_value",
      [](const Pfa& p, std::size_t max_len) {
        auto est = estimate_value(p, max_len);
        return py::make_tuple(to_fraction(est.best_prob), p.format_word(est.best_word));
      },
      py::arg("pfa"), py::arg("max_len"));
  m.def(
      "isolation_probe",
      [](const Pfa& p, const py::object& lambda, std::size_t max_len) {
        auto rep = isolation_probe(p, from_python(lambda), max_len);
        return py::make_tuple(to_fraction(rep.min_gap), p.format_word(rep.witness));
      },
      py::arg("pfa"), py::arg("lam"), py::arg("max_len"));
  m.def("random_simple_pfa", &random_simple_pfa, py::arg("states"), py::arg("letters"), py::arg("seed"));
  m.def("random_thirds_pfa", &random_thirds_pfa, py::arg("states"), py::arg("letters"), py::arg("seed"));
  m.def(
      "render_thread_tree", [](const Pfa& p, const std::string& word) { return render_thread_tree(p, p.word(word)); },
      py::arg("pfa"), py::arg("word"));
}
