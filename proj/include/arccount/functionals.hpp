#pragma once
#include <string>
#include <vector>

#include "arccount/classes.hpp"

namespace arccount {

// Positive counting functional, integer-scaled: eval returns scale times the
// true value so that all values on integral classes are integers (scale is
// the lcm of the multicurve weight denominators, 1 for triweight).
//
// Specs: "i:<multicurve literal>" for geometric intersection with a fixed
// multicurve, or "triweight" for total weight against the preset arc system.
// triweight pairs arcs with curves only, so it cannot score arc classes.
struct Functional {
  std::string spec;
  RibbonSurface surface;
  long long scale = 1;
  bool triweight = false;
  MultiClass mu;                   // i: payload
  std::vector<ArcClass> arc_system;  // triweight payload

  long long eval(const CurveClass& x) const;
  long long eval(const ArcClass& x) const;
  long long eval(const MultiClass& x) const;
  long long eval(const DoubledClass& x) const;  // exactly 2 * eval(base)
  std::string description() const { return spec; }
};

Functional parse_functional(const RibbonSurface& s, const std::string& spec);

// Hand-certified filling multicurves and the essential arc system shipped
// with each preset (from the embedded data file).
std::vector<std::string> filling_registry(const RibbonSurface& s);
bool is_registered_filling(const RibbonSurface& s, const MultiClass& mu);
std::vector<ArcClass> preset_arc_system(const RibbonSurface& s);

}  // namespace arccount
