#include "arccount/classes.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace arccount {

CurveClass canonical_curve(const RibbonSurface& s, const Word& raw) {
  Word w = cyclic_reduce(raw);
  if (w.empty()) throw std::invalid_argument("null-homotopic curve word");
  Word fwd = least_rotation(w);
  Word bwd = least_rotation(inverse_word(w));
  CurveClass out;
  out.canonical = std::min(fwd, bwd);

  for (int i = 0; i < s.boundary_count; ++i) {
    const Word& b = s.boundary_words[i];
    if (out.canonical.size() % b.size() != 0) continue;
    int k = static_cast<int>(out.canonical.size() / b.size());
    Word pw = word_power(b, k);
    if (out.canonical == std::min(least_rotation(pw), least_rotation(inverse_word(pw)))) {
      out.peripheral = true;
      out.peripheral_boundary = i;
      break;
    }
  }
  return out;
}

namespace {

// One greedy absorption pass: repeatedly apply whichever single boundary-power
// multiplication strictly shortens the word.
Word absorb_to_local_min(Word w, const Word& bs, const Word& be) {
  const Word bsi = inverse_word(bs), bei = inverse_word(be);
  for (;;) {
    bool improved = false;
    for (const Word* left : {&bs, &bsi}) {
      Word cand = concat_reduce(*left, w);
      if (cand.size() < w.size()) {
        w = std::move(cand);
        improved = true;
      }
    }
    for (const Word* right : {&be, &bei}) {
      Word cand = concat_reduce(w, *right);
      if (cand.size() < w.size()) {
        w = std::move(cand);
        improved = true;
      }
    }
    if (!improved) return w;
  }
}

// All b_s^k . w . b_e^m over a box, returning the minimal-length lex-least.
Word best_in_box(const Word& w, const Word& bs, const Word& be, int radius) {
  Word best;
  bool have = false;
  for (int k = -radius; k <= radius; ++k) {
    Word left = concat_reduce(word_power(bs, k), w);
    for (int m = -radius; m <= radius; ++m) {
      Word cand = concat_reduce(left, word_power(be, m));
      if (!have || cand.size() < best.size() ||
          (cand.size() == best.size() && cand < best)) {
        best = std::move(cand);
        have = true;
      }
    }
  }
  return best;
}

bool is_boundary_power(const Word& w, const Word& b) {
  if (w.empty()) return true;
  if (w.size() % b.size() != 0) return false;
  return common_prefix_periodic(w, b) == w.size() ||
         common_prefix_periodic(w, inverse_word(b)) == w.size();
}

}  // namespace

ArcClass canonical_arc(const RibbonSurface& surf, int s, int e, const Word& w) {
  if (!surf.valid_boundary_index(s) || !surf.valid_boundary_index(e))
    throw std::invalid_argument("bad boundary index");
  Word r = free_reduce(w);
  if (s == e && is_boundary_power(r, surf.boundary_words[s]))
    throw std::invalid_argument("inessential arc (boundary-parallel)");

  auto canonize_oriented = [&](int ss, int ee, Word ww) {
    const Word& bs = surf.boundary_words[ss];
    const Word& be = surf.boundary_words[ee];
    ww = absorb_to_local_min(std::move(ww), bs, be);
    int radius = ww.size() <= 2 * (bs.size() + be.size()) + 4 ? 4 : 2;
    return best_in_box(ww, bs, be, radius);
  };

  Word fwd = canonize_oriented(s, e, r);
  Word bwd = canonize_oriented(e, s, inverse_word(r));

  auto tuple_less = [](int s1, int e1, const Word& w1, int s2, int e2, const Word& w2) {
    if (s1 != s2) return s1 < s2;
    if (e1 != e2) return e1 < e2;
    if (w1.size() != w2.size()) return w1.size() < w2.size();
    return w1 < w2;
  };

  ArcClass out;
  if (tuple_less(s, e, fwd, e, s, bwd)) {
    out.s = s;
    out.e = e;
    out.w = fwd;
  } else {
    out.s = e;
    out.e = s;
    out.w = bwd;
  }
  return out;
}

std::string MultiClass::key() const {
  std::string k;
  if (kind == Kind::curve) {
    for (const auto& [c, wt] : curves) k += wt.to_string() + "*" + c.key() + ";";
  } else {
    for (const auto& [a, wt] : arcs) k += wt.to_string() + "*" + a.key() + ";";
  }
  return k;
}

MultiClass make_multicurve(std::vector<std::pair<CurveClass, Rational>> items) {
  if (items.empty()) throw std::invalid_argument("empty multiclass");
  MultiClass m;
  m.kind = MultiClass::Kind::curve;
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < items.size(); ++i) {
    const auto& [c, wt] = items[i];
    if (!(wt > Rational(0))) throw std::invalid_argument("non-positive weight in multiclass");
    if (c.peripheral)
      throw std::invalid_argument("peripheral class not allowed in a multicurve");
    if (i > 0 && c == items[i - 1].first)
      throw std::invalid_argument("repeated component in multiclass");
  }
  m.curves = std::move(items);
  return m;
}

MultiClass make_multiarc(std::vector<std::pair<ArcClass, Rational>> items) {
  if (items.empty()) throw std::invalid_argument("empty multiclass");
  MultiClass m;
  m.kind = MultiClass::Kind::arc;
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < items.size(); ++i) {
    const auto& [a, wt] = items[i];
    if (!(wt > Rational(0))) throw std::invalid_argument("non-positive weight in multiclass");
    if (i > 0 && a == items[i - 1].first)
      throw std::invalid_argument("repeated component in multiclass");
  }
  m.arcs = std::move(items);
  return m;
}

CurveClass i_map(const RibbonSurface& surf, const ArcClass& a) {
  const Word& bs = surf.boundary_words[a.s];
  const Word& be = surf.boundary_words[a.e];
  Word g = concat_reduce(concat_reduce(bs, a.w), concat_reduce(be, inverse_word(a.w)));
  return canonical_curve(surf, g);
}

MultiClass i_map(const RibbonSurface& surf, const MultiClass& multiarc) {
  if (multiarc.kind != MultiClass::Kind::arc)
    throw std::invalid_argument("i_map input must be a multiarc");
  std::map<Word, std::pair<CurveClass, Rational>> acc;
  for (const auto& [a, wt] : multiarc.arcs) {
    CurveClass c = i_map(surf, a);
    auto it = acc.find(c.canonical);
    if (it == acc.end())
      acc.emplace(c.canonical, std::make_pair(c, wt));
    else
      it->second.second = it->second.second + wt;
  }
  std::vector<std::pair<CurveClass, Rational>> items;
  items.reserve(acc.size());
  for (auto& [k, v] : acc) items.push_back(std::move(v));
  return make_multicurve(std::move(items));
}

DoubledClass double_class(const MultiClass& x) {
  if (x.size() == 0) throw std::invalid_argument("empty multiclass cannot be doubled");
  return DoubledClass{x, true};
}

ArcClass parse_arc(const RibbonSurface& surf, const std::string& text) {
  auto c1 = text.find(':');
  auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw std::invalid_argument("arc literal must be s:e:word, got \"" + text + "\"");
  int s, e;
  try {
    s = std::stoi(text.substr(0, c1));
    e = std::stoi(text.substr(c1 + 1, c2 - c1 - 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad boundary index in arc literal \"" + text + "\"");
  }
  Word w = parse_word(text.substr(c2 + 1), surf.edge_count);
  return canonical_arc(surf, s, e, w);
}

MultiClass parse_multiclass(const RibbonSurface& surf, const std::string& text) {
  std::vector<std::string> parts;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  std::vector<std::pair<CurveClass, Rational>> curves;
  std::vector<std::pair<ArcClass, Rational>> arcs;
  for (const auto& part : parts) {
    if (part.empty()) throw std::invalid_argument("empty term in multiclass literal");
    Rational wt(1);
    std::string item = part;
    auto star = part.find('*');
    if (star != std::string::npos) {
      wt = parse_rational(part.substr(0, star));
      item = part.substr(star + 1);
    }
    if (item.find(':') != std::string::npos)
      arcs.emplace_back(parse_arc(surf, item), wt);
    else
      curves.emplace_back(canonical_curve(surf, parse_word(item, surf.edge_count)), wt);
  }
  if (!curves.empty() && !arcs.empty())
    throw std::invalid_argument("mixed multiclass (curves and arcs) is forbidden");
  if (!arcs.empty()) return make_multiarc(std::move(arcs));
  return make_multicurve(std::move(curves));
}

std::string format_arc(const ArcClass& a) {
  return std::to_string(a.s) + ":" + std::to_string(a.e) + ":" + format_word(a.w);
}

std::string format_multiclass(const MultiClass& m) {
  std::string out;
  auto append = [&](const std::string& item, const Rational& wt) {
    if (!out.empty()) out += "+";
    if (!(wt == Rational(1))) out += wt.to_string() + "*";
    out += item;
  };
  if (m.kind == MultiClass::Kind::curve)
    for (const auto& [c, wt] : m.curves) append(format_word(c.canonical), wt);
  else
    for (const auto& [a, wt] : m.arcs) append(format_arc(a), wt);
  return out;
}

}  // namespace arccount
