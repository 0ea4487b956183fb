#pragma once
#include "arccount/surface.hpp"

namespace arccount {

// Eventually periodic infinite reduced word preperiod . period^inf, one ideal
// point of the free-group boundary. Normalized so there is no cancellation at
// the junction and the period is primitive and cyclically reduced.
struct Ray {
  Word pre;
  Word per;

  Ray() = default;
  Ray(Word preperiod, Word period);  // normalizes

  Letter at(size_t k) const {
    if (k < pre.size()) return static_cast<Letter>(pre[k]);
    return static_cast<Letter>(per[(k - pre.size()) % per.size()]);
  }
  size_t complexity() const { return pre.size() + per.size(); }

  friend bool operator==(const Ray& a, const Ray& b) { return a.pre == b.pre && a.per == b.per; }
};

struct EndpointPair {
  Ray attracting;
  Ray repelling;
};

// Axis of conj * g * conj^-1 for cyclically reduced nontrivial g.
EndpointPair axis_of(const Word& g, const Word& conj = Word());

// First index where the rays differ, or npos if they are equal (decided
// within 2*(max complexity) letters; eventually periodic rays agreeing that
// far agree forever).
size_t divergence_depth(const Ray& x, const Ray& y);

constexpr int kDegenerate = 0;

// Cyclic orientation of three ideal points in the planar order induced by the
// ribbon structure: +1 / -1, or 0 when two rays coincide.
int cyclic_orient(const RibbonSurface& s, const Ray& x, const Ray& y, const Ray& z);

// Whether the axes link: each pair of endpoints separates the other on the
// boundary circle. Axes sharing an endpoint do not link.
bool axes_link(const RibbonSurface& s, const EndpointPair& a, const EndpointPair& b);

}  // namespace arccount
