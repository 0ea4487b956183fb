#include "arccount/functionals.hpp"

#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "arccount/data.hpp"
#include "arccount/intersect.hpp"

namespace arccount {
namespace {

const nlohmann::json& data_root() {
  static const nlohmann::json j = nlohmann::json::parse(preset_data_text());
  return j;
}

long long scaled_integer(const Rational& v, long long scale) {
  long long num = v.num * scale;
  if (num % v.den != 0) throw std::logic_error("functional value did not scale to an integer");
  return num / v.den;
}

MultiClass single(const CurveClass& x) { return make_multicurve({{x, Rational(1)}}); }
MultiClass single(const ArcClass& x) { return make_multiarc({{x, Rational(1)}}); }

}  // namespace

Functional parse_functional(const RibbonSurface& s, const std::string& spec) {
  Functional f;
  f.spec = spec;
  f.surface = s;
  if (spec == "triweight") {
    f.triweight = true;
    f.arc_system = preset_arc_system(s);
    return f;
  }
  if (spec.rfind("i:", 0) == 0) {
    f.mu = parse_multiclass(s, spec.substr(2));
    if (f.mu.kind != MultiClass::Kind::curve)
      throw std::invalid_argument("i: functional requires a multicurve literal");
    for (const auto& [c, wt] : f.mu.curves) f.scale = std::lcm(f.scale, wt.den);
    return f;
  }
  throw std::invalid_argument("unknown functional spec: " + spec);
}

long long Functional::eval(const CurveClass& x) const {
  if (triweight) {
    long long acc = 0;
    for (const ArcClass& a : arc_system) acc += i_arc_curve(surface, a, x);
    return acc * scale;
  }
  // Bilinear expansion inlined (hot path: the BFS evaluates F once per
  // state); scale is the lcm of the weight denominators, so each term is
  // integral.
  long long acc = 0;
  for (const auto& [c, wt] : mu.curves) acc += wt.num * (scale / wt.den) * i_curves(surface, c, x);
  return acc;
}

long long Functional::eval(const ArcClass& x) const {
  if (triweight) throw std::invalid_argument("triweight cannot score arc classes");
  long long acc = 0;
  for (const auto& [c, wt] : mu.curves)
    acc += wt.num * (scale / wt.den) * i_arc_curve(surface, x, c);
  return acc;
}

long long Functional::eval(const MultiClass& x) const {
  if (triweight) {
    if (x.kind != MultiClass::Kind::curve)
      throw std::invalid_argument("triweight cannot score arc classes");
    Rational acc(0);
    for (const auto& [c, wt] : x.curves) {
      long long per = 0;
      for (const ArcClass& a : arc_system) per += i_arc_curve(surface, a, c);
      acc = acc + wt * Rational(per);
    }
    return scaled_integer(acc, scale);
  }
  if (x.kind == MultiClass::Kind::curve) return scaled_integer(i_multi(surface, mu, x), scale);
  return scaled_integer(i_multi(surface, x, mu), scale);
}

long long Functional::eval(const DoubledClass& x) const { return 2 * eval(x.base); }

std::vector<std::string> filling_registry(const RibbonSurface& s) {
  const auto& root = data_root();
  std::vector<std::string> out;
  if (root.at("filling_multicurves").contains(s.name))
    for (const auto& entry : root.at("filling_multicurves").at(s.name))
      out.push_back(entry.at("literal").get<std::string>());
  return out;
}

bool is_registered_filling(const RibbonSurface& s, const MultiClass& mu) {
  for (const std::string& lit : filling_registry(s))
    if (parse_multiclass(s, lit).key() == mu.key()) return true;
  return false;
}

std::vector<ArcClass> preset_arc_system(const RibbonSurface& s) {
  const auto& root = data_root();
  if (!root.at("arc_systems").contains(s.name))
    throw std::invalid_argument("no arc system for preset " + s.name);
  std::vector<ArcClass> out;
  for (const auto& lit : root.at("arc_systems").at(s.name))
    out.push_back(parse_arc(s, lit.get<std::string>()));
  return out;
}

}  // namespace arccount
