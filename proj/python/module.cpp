#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "arccount/experiments.hpp"
#include "arccount/intersect.hpp"

namespace py = pybind11;
using namespace arccount;

namespace {

RibbonSurface surf(const std::string& name) { return make_preset(name); }

MultiClass parse_any(const RibbonSurface& s, const std::string& lit) {
  return parse_multiclass(s, lit);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "arc and curve counting on one-vertex ribbon surfaces";

  m.def("info", [](const std::string& name) {
    RibbonSurface s = surf(name);
    SurfaceInvariants v = invariants(s);
    py::dict d;
    d["name"] = s.name;
    d["genus"] = s.genus;
    d["boundary_count"] = s.boundary_count;
    d["double_genus"] = v.double_genus;
    d["growth_exponent"] = v.growth_exponent;
    d["is_pair_of_pants"] = v.is_pair_of_pants;
    py::list b;
    for (const Word& w : s.boundary_words) b.append(format_word(w));
    d["boundary_words"] = b;
    return d;
  });

  m.def("canonical_curve", [](const std::string& name, const std::string& w) {
    RibbonSurface s = surf(name);
    return format_word(canonical_curve(s, parse_word(w, s.letter_count())).canonical);
  });

  m.def("canonical_arc", [](const std::string& name, const std::string& lit) {
    RibbonSurface s = surf(name);
    return format_arc(parse_arc(s, lit));
  });

  m.def("i_map", [](const std::string& name, const std::string& arc_lit) {
    RibbonSurface s = surf(name);
    return format_word(i_map(s, parse_arc(s, arc_lit)).canonical);
  });

  m.def("i_curves", [](const std::string& name, const std::string& u, const std::string& v) {
    RibbonSurface s = surf(name);
    return i_curves(s, canonical_curve(s, parse_word(u, s.letter_count())),
                    canonical_curve(s, parse_word(v, s.letter_count())));
  });

  m.def("i_arc_curve", [](const std::string& name, const std::string& arc_lit, const std::string& v) {
    RibbonSurface s = surf(name);
    return i_arc_curve(s, parse_arc(s, arc_lit),
                       canonical_curve(s, parse_word(v, s.letter_count())));
  });

  m.def("self_intersection", [](const std::string& name, const std::string& w) {
    RibbonSurface s = surf(name);
    return self_intersection(s, canonical_curve(s, parse_word(w, s.letter_count())));
  });

  m.def("i_multi", [](const std::string& name, const std::string& x, const std::string& y) {
    RibbonSurface s = surf(name);
    Rational r = i_multi(s, parse_any(s, x), parse_any(s, y));
    return py::make_tuple(r.num, r.den);
  });

  m.def("is_simple", [](const std::string& name, const std::string& x) {
    RibbonSurface s = surf(name);
    return is_simple(s, parse_any(s, x));
  });

  m.def("generators", [](const std::string& name, const std::string& convention) {
    RibbonSurface s = surf(name);
    py::list out;
    for (const auto& g : preset_generators(s, convention)) out.append(g.label);
    return out;
  }, py::arg("name"), py::arg("convention") = "setwise");

  // word: whitespace-separated generator labels, applied left to right
  m.def("apply_word", [](const std::string& name, const std::string& word, const std::string& lit,
                         const std::string& convention) {
    RibbonSurface s = surf(name);
    auto gens = preset_generators(s, convention);
    MultiClass x = parse_any(s, lit);
    std::istringstream iss(word);
    std::string label;
    while (iss >> label) {
      bool hit = false;
      for (const auto& g : gens)
        if (g.label == label) {
          x = apply(s, g, x);
          hit = true;
          break;
        }
      if (!hit) throw std::invalid_argument("unknown generator label: " + label);
    }
    return format_multiclass(x);
  }, py::arg("name"), py::arg("word"), py::arg("lit"), py::arg("convention") = "setwise");

  m.def("orbit_counts", [](const std::string& name, const std::string& kind,
                           const std::string& seed, const std::string& functional, long long L,
                           double slack, int gamma_mod, int workers) {
    ExperimentConfig cfg;
    cfg.surface = name;
    cfg.kind = kind;
    cfg.seed = seed;
    cfg.functional = functional;
    for (long long l = 1; l <= L; ++l) cfg.grid.push_back(l);
    cfg.slack = slack;
    cfg.gamma_mod = gamma_mod;
    cfg.workers = workers;
    ExperimentResult r = run_count(cfg);
    py::dict d;
    d["counts"] = r.counts;
    d["saturated"] = r.saturated;
    d["explored_states"] = r.explored_states;
    return d;
  }, py::arg("name"), py::arg("kind"), py::arg("seed"), py::arg("functional") = "i:a+b",
     py::arg("L") = 8, py::arg("slack") = 2.0, py::arg("gamma_mod") = 0, py::arg("workers") = 1);

  m.def("decode_slope", [](const std::string& name, long long c, long long p, long long q) {
    RibbonSurface s = surf(name);
    DTChart chart = make_chart(s);
    return format_multiclass(decode(chart, MLZCoords{c, p, q}));
  });

  m.def("mlz_count", [](const std::string& name, const std::string& functional, long long L) {
    RibbonSurface s = surf(name);
    DTChart chart = make_chart(s);
    Functional F = parse_functional(s, functional);
    long long n = enumerate_mlz(chart, [&F](const MultiClass& x) { return F.eval(x); }, L);
    return n;
  });

  m.def("functional_eval", [](const std::string& name, const std::string& spec, const std::string& lit) {
    RibbonSurface s = surf(name);
    Functional F = parse_functional(s, spec);
    py::dict d;
    d["value_scaled"] = F.eval(parse_any(s, lit));
    d["scale"] = F.scale;
    return d;
  });

  m.attr("__version__") = kVersion;
}
