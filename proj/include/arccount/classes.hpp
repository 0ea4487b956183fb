#pragma once
#include <utility>
#include <vector>

#include "arccount/surface.hpp"

namespace arccount {

// Free homotopy class of an essential closed curve: cyclically reduced cyclic
// word, canonical = lex-least rotation among the word and its inverse.
struct CurveClass {
  Word canonical;
  bool peripheral = false;
  int peripheral_boundary = -1;

  std::string key() const { return "C" + canonical; }
  friend bool operator==(const CurveClass& a, const CurveClass& b) { return a.canonical == b.canonical; }
  friend bool operator<(const CurveClass& a, const CurveClass& b) { return a.canonical < b.canonical; }
};

// Arc class: boundary double coset <b_s> w <b_e> plus the unoriented flip
// (s,e,w) ~ (e,s,w^-1), canonicalized to the minimal-length lex-least
// representative with s <= e preferred.
struct ArcClass {
  int s = 0;
  int e = 0;
  Word w;

  std::string key() const {
    std::string k = "A";
    k.push_back(static_cast<char>(s));
    k.push_back(static_cast<char>(e));
    return k + w;
  }
  friend bool operator==(const ArcClass& a, const ArcClass& b) {
    return a.s == b.s && a.e == b.e && a.w == b.w;
  }
  friend bool operator<(const ArcClass& a, const ArcClass& b) { return a.key() < b.key(); }
};

CurveClass canonical_curve(const RibbonSurface& s, const Word& raw);
ArcClass canonical_arc(const RibbonSurface& surf, int s, int e, const Word& w);

// Positively weighted formal sum, all curves or all arcs (mixed forbidden).
struct MultiClass {
  enum class Kind { curve, arc };
  Kind kind = Kind::curve;
  std::vector<std::pair<CurveClass, Rational>> curves;  // sorted by canonical
  std::vector<std::pair<ArcClass, Rational>> arcs;      // sorted by key

  size_t size() const { return kind == Kind::curve ? curves.size() : arcs.size(); }
  std::string key() const;
};

// Both constructors validate: positive weights, distinct keys; multicurves
// additionally reject peripheral components.
MultiClass make_multicurve(std::vector<std::pair<CurveClass, Rational>> items);
MultiClass make_multiarc(std::vector<std::pair<ArcClass, Rational>> items);

// The arc-to-curve map: conjugacy class of b_s . w . b_e . w^-1, well defined
// on double cosets and invariant under the unoriented flip.
CurveClass i_map(const RibbonSurface& surf, const ArcClass& a);
MultiClass i_map(const RibbonSurface& surf, const MultiClass& multiarc);

// Formal double: functionals and pairings evaluate to exactly twice the
// base-surface value; the exchanging involution fixes it by construction.
struct DoubledClass {
  MultiClass base;
  bool symmetric = true;
};
DoubledClass double_class(const MultiClass& x);

// Text literals. Words use letters with ' for inverses; arcs are "s:e:word"
// (word may be empty); multiclasses are "weight*item" joined by '+', weight
// optional and rational ("3/2*ab+b'").
ArcClass parse_arc(const RibbonSurface& surf, const std::string& text);
MultiClass parse_multiclass(const RibbonSurface& surf, const std::string& text);
std::string format_arc(const ArcClass& a);
std::string format_multiclass(const MultiClass& m);

}  // namespace arccount
