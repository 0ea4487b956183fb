#include "arccount/rays.hpp"

#include <algorithm>
#include <stdexcept>

namespace arccount {

Ray::Ray(Word preperiod, Word period) : pre(std::move(preperiod)), per(std::move(period)) {
  per = free_reduce(per);
  pre = free_reduce(pre);
  // per = u r u' with r cyclically reduced spells the stream pre u . r^inf:
  // the conjugating prefix moves into the preperiod instead of vanishing.
  while (per.size() >= 2 && static_cast<Letter>(per.front()) == inverse_letter(per.back())) {
    pre = concat_reduce(pre, Word(1, per.front()));
    per = per.substr(1, per.size() - 2);
  }
  if (per.empty()) throw std::invalid_argument("ray with trivial period");
  per = per.substr(0, primitive_period(per));
  // Absorb period copies (whole or partial) spelled out at the end of the
  // preperiod and clear junction cancellation, so equal rays get equal normal
  // forms: minimal preperiod, then the period at that phase.
  auto ends_with = [](const Word& w, const Word& suf) {
    return w.size() >= suf.size() && std::equal(suf.rbegin(), suf.rend(), w.rbegin());
  };
  for (;;) {
    if (ends_with(pre, per)) {
      pre.erase(pre.size() - per.size());
      continue;
    }
    if (!pre.empty() && pre.back() == per.back()) {
      // partial copy: pull the shared last letter across the junction
      per = rotate(per, per.size() - 1);
      pre.pop_back();
      continue;
    }
    if (!pre.empty() && static_cast<Letter>(pre.back()) == inverse_letter(per[0])) {
      // cancellation eats per[0]; the tail restarts one letter into the period
      pre.pop_back();
      per = rotate(per, 1);
      continue;
    }
    break;
  }
}

EndpointPair axis_of(const Word& g, const Word& conj) {
  Word w = cyclic_reduce(g);
  if (w.empty()) throw std::invalid_argument("axis of trivial element");
  return {Ray(conj, w), Ray(conj, inverse_word(w))};
}

size_t divergence_depth(const Ray& x, const Ray& y) {
  size_t cap = 2 * std::max(x.complexity(), y.complexity());
  for (size_t k = 0; k < cap; ++k)
    if (x.at(k) != y.at(k)) return k;
  return std::string::npos;
}

namespace {

// Orientation of (x, y, z) when the pair (x, y) diverges strictly deepest, at
// depth d >= 1: the branch vertex is x[0..d), z hangs behind it through the
// germ inverse(x[d-1]).
int deep_pair_orient(const RibbonSurface& s, const Ray& x, const Ray& y, size_t d) {
  return s.germ_orient(x.at(d), y.at(d), inverse_letter(x.at(d - 1)));
}

}  // namespace

int cyclic_orient(const RibbonSurface& s, const Ray& x, const Ray& y, const Ray& z) {
  size_t dxy = divergence_depth(x, y);
  size_t dxz = divergence_depth(x, z);
  size_t dyz = divergence_depth(y, z);
  if (dxy == std::string::npos || dxz == std::string::npos || dyz == std::string::npos)
    return kDegenerate;
  // Ultrametric: the two smallest depths are equal; the branch vertex of the
  // strictly deepest pair (if any) sees the third ray behind it.
  if (dxy > dxz && dxy > dyz) return deep_pair_orient(s, x, y, dxy);
  if (dyz > dxy && dyz > dxz) return deep_pair_orient(s, y, z, dyz);
  if (dxz > dxy && dxz > dyz) return deep_pair_orient(s, z, x, dxz);
  // All equal: three distinct germs at one branch vertex.
  return s.germ_orient(x.at(dxy), y.at(dxy), z.at(dxy));
}

bool axes_link(const RibbonSurface& s, const EndpointPair& a, const EndpointPair& b) {
  int s1 = cyclic_orient(s, a.attracting, b.attracting, a.repelling);
  int s2 = cyclic_orient(s, a.attracting, b.repelling, a.repelling);
  return s1 != kDegenerate && s2 != kDegenerate && s1 != s2;
}

}  // namespace arccount
