#pragma once
#include "arccount/classes.hpp"
#include "arccount/rays.hpp"

namespace arccount {

// Geometric intersection number of two curve classes. Crossings correspond to
// double cosets <u> g <v> whose translate axes link in the boundary circle;
// they are enumerated as axes touching one period window of the u-axis, with
// first-contact dedup. Powers factor out: i(x^k, y^m) = k*m*i(x,y), and for
// equal primitive roots i = 2*k*m*si(root).
long long i_curves(const RibbonSurface& s, const CurveClass& u, const CurveClass& v);

// Minimal self-intersection number; 0 iff simple.
long long self_intersection(const RibbonSurface& s, const CurveClass& u);

// Minimal crossing number of an essential arc with a curve: counts v-axis
// translates separating the start-boundary lift from the end-boundary lift.
// Rejects peripheral v.
long long i_arc_curve(const RibbonSurface& s, const ArcClass& a, const CurveClass& v);

// Bilinear extension; self_intersection on diagonal curve terms; arc-arc
// pairings are rejected.
Rational i_multi(const RibbonSurface& s, const MultiClass& x, const MultiClass& y);

// Every component non-peripheral and all (self-)intersections zero.
bool is_simple(const RibbonSurface& s, const MultiClass& x);

// Slow ray-based implementations used as internal cross-checks in tests.
long long i_curves_reference(const RibbonSurface& s, const CurveClass& u, const CurveClass& v);
long long self_intersection_reference(const RibbonSurface& s, const CurveClass& u);
long long i_arc_curve_reference(const RibbonSurface& s, const ArcClass& a, const CurveClass& v);

}  // namespace arccount
