#include "arccount/intersect.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace arccount {
namespace {

int mod(int a, int m) { return (a % m + m) % m; }

Letter cyc(const Word& w, long long i) {
  long long n = static_cast<long long>(w.size());
  return static_cast<Letter>(w[static_cast<size_t>((i % n + n) % n)]);
}

// E[t*m+f] = match length of U cyclic from t against Z cyclic from f, capped.
// Computed per diagonal cycle: one backward sweep from any mismatch anchor; a
// cycle without mismatches means the two infinite lines coincide (all cap).
std::vector<int> cyclic_lce(const Word& U, const Word& Z, int cap) {
  int n = static_cast<int>(U.size()), m = static_cast<int>(Z.size());
  std::vector<int> E(static_cast<size_t>(n) * m, 0);
  int g = std::gcd(n, m);
  long long L = static_cast<long long>(n) / g * m;
  for (int c = 0; c < g; ++c) {
    auto slot = [&](long long k) {
      return static_cast<size_t>((c + k) % n) * m + static_cast<size_t>(k % m);
    };
    long long anchor = -1;
    for (long long k = 0; k < L; ++k)
      if (U[(c + k) % n] != Z[k % m]) { anchor = k; break; }
    if (anchor < 0) {
      for (long long k = 0; k < L; ++k) E[slot(k)] = cap;
      continue;
    }
    E[slot(anchor)] = 0;
    int prev = 0;
    for (long long step = 1; step < L; ++step) {
      long long k = ((anchor - step) % L + L) % L;
      int t = static_cast<int>((c + k) % n), f = static_cast<int>(k % m);
      prev = (U[t] == Z[f]) ? std::min(prev + 1, cap) : 0;
      E[slot(k)] = prev;
    }
  }
  return E;
}

// Raw crossing count between the u-line and all translates of the v-line,
// enumerated as translate axes making first contact inside one period window
// of u. Each touching axis is seen exactly once across the two passes: runs
// spelled along u are counted where the forward germs agree, runs spelled
// against u belong to the inverse pass, and single-vertex contacts are
// counted in pass 0 only. An axis links iff it exits the u-line on opposite
// sides at the two ends of its contact run.
long long window_count(const RibbonSurface& s, const Word& U, const Word& V, bool self_mode) {
  int n = static_cast<int>(U.size());
  long long cnt = 0;
  for (int pass = 0; pass < 2; ++pass) {
    Word z = pass ? inverse_word(V) : V;
    int m = static_cast<int>(z.size());
    int cap = n + m + 4;
    std::vector<int> E = cyclic_lce(U, z, cap);
    for (int t = 0; t < n; ++t) {
      Letter uf = static_cast<Letter>(U[t]);
      Letter up = inverse_letter(static_cast<Letter>(U[mod(t - 1, n)]));
      for (int f = 0; f < m; ++f) {
        Letter af = static_cast<Letter>(z[f]);
        Letter ab = inverse_letter(static_cast<Letter>(z[mod(f - 1, m)]));
        if (up == af || up == ab) continue;  // contact started earlier
        if (uf == ab) continue;              // run against u: inverse pass owns it
        int r = 0;
        if (uf == af) {
          r = E[static_cast<size_t>(t) * m + f];
          if (r >= cap) {
            if (self_mode) continue;  // the window's own line
            throw std::logic_error("coincident axes for distinct classes");
          }
        }
        if (pass == 1 && r == 0) continue;
        int sb = s.germ_orient(af, up, ab);
        long long e = t + r;
        int psi = (f + r) % m;
        Letter ee = cyc(U, e);
        Letter eb = r > 0 ? inverse_letter(cyc(U, e - 1)) : ab;
        int sf = s.germ_orient(static_cast<Letter>(z[psi]), ee, eb);
        if (sb != sf) ++cnt;
      }
    }
  }
  return cnt;
}

struct RootPower {
  CurveClass root;
  long long k = 1;
};

RootPower split_power(const RibbonSurface& s, const CurveClass& u) {
  size_t p = primitive_period(u.canonical);
  return {canonical_curve(s, u.canonical.substr(0, p)),
          static_cast<long long>(u.canonical.size() / p)};
}

// Bridge between the start-boundary line X and the end-boundary line Y of an
// arc lift: the connecting segment when they are disjoint, or their overlap
// segment (which every separating axis must contain) when they meet. pat_x /
// pat_y spell rays continuing along X / Y beyond the segment ends, long
// enough to resolve any candidate spiraling.
struct BridgeData {
  std::vector<Letter> letters;  // germ v_i -> v_{i+1}
  Word pat_x;                   // X-side ray letters from v_0
  Word pat_y;                   // Y-side ray letters from v_l
};

BridgeData make_bridge(const RibbonSurface& s, const Word& b, const Word& c, const Word& w,
                       size_t ylen) {
  (void)s;
  const Word binv = inverse_word(b), cinv = inverse_word(c);
  size_t i1 = common_prefix_periodic(w, b), i2 = common_prefix_periodic(w, binv);
  size_t istar = std::max(i1, i2);
  const Word& per_x = (i1 >= i2) ? b : binv;
  Word winv = inverse_word(w);
  size_t s1 = common_prefix_periodic(winv, c), s2 = common_prefix_periodic(winv, cinv);
  size_t suf = std::max(s1, s2);
  const Word& per_y = (s1 >= s2) ? c : cinv;
  long long jstar = static_cast<long long>(w.size()) - static_cast<long long>(suf);
  size_t plen = ylen + b.size() + c.size() + 8;
  BridgeData out;
  if (static_cast<long long>(istar) < jstar) {
    out.letters.assign(w.begin() + istar, w.begin() + jstar);
    for (size_t k = 0; k < plen; ++k) out.pat_x.push_back(static_cast<char>(cyc(per_x, istar + k)));
    for (size_t k = 0; k < plen; ++k) out.pat_y.push_back(static_cast<char>(cyc(per_y, suf + k)));
    return out;
  }
  // Overlap: walk the Y-line from w in both directions to find the segment
  // shared with X. vertex(k) = reduced w * per_y[0..k), negative k walks the
  // other way.
  auto vertex = [&](long long k) {
    Word u = w;
    auto push = [&](Letter L) {
      if (!u.empty() && inverse_letter(static_cast<Letter>(u.back())) == L)
        u.pop_back();
      else
        u.push_back(static_cast<char>(L));
    };
    if (k >= 0)
      for (long long j = 0; j < k; ++j) push(cyc(per_y, j));
    else
      for (long long j = -1; j >= k; --j) push(inverse_letter(cyc(per_y, j)));
    return u;
  };
  auto on_line = [&](const Word& u, const Word& per) {
    for (size_t i = 0; i < u.size(); ++i)
      if (static_cast<Letter>(u[i]) != cyc(per, static_cast<long long>(i))) return false;
    return true;
  };
  auto on_x = [&](const Word& u) { return on_line(u, b) || on_line(u, binv); };
  long long bound = static_cast<long long>(b.size() + c.size()) + 8;
  long long k1 = static_cast<long long>(suf), k2 = k1;
  while (k1 - 1 >= static_cast<long long>(suf) - bound && on_x(vertex(k1 - 1))) --k1;
  while (k2 + 1 <= static_cast<long long>(suf) + bound && on_x(vertex(k2 + 1))) ++k2;
  if (k1 <= static_cast<long long>(suf) - bound || k2 >= static_cast<long long>(suf) + bound)
    throw std::logic_error("unbounded boundary-line overlap");
  for (long long k = k1; k < k2; ++k) out.letters.push_back(cyc(per_y, k));
  Word v0 = vertex(k1);
  const Word& px = on_line(v0, b) ? b : binv;
  long long t0 = static_cast<long long>(v0.size());
  Letter upg = cyc(px, t0);
  if (!out.letters.empty() && upg == out.letters.front()) {
    for (size_t k = 0; k < plen; ++k)
      out.pat_x.push_back(static_cast<char>(inverse_letter(cyc(px, t0 - 1 - static_cast<long long>(k)))));
  } else {
    for (size_t k = 0; k < plen; ++k)
      out.pat_x.push_back(static_cast<char>(cyc(px, t0 + static_cast<long long>(k))));
  }
  for (size_t k = 0; k < plen; ++k)
    out.pat_y.push_back(static_cast<char>(cyc(per_y, k2 + static_cast<long long>(k))));
  return out;
}

// Count translates of the y-axis separating the X side from the Y side of the
// bridge. Same two-pass first-contact enumeration as window_count; at the
// segment ends the exit side is resolved against the pat_x / pat_y rays,
// following any spiraling along them.
long long bridge_count(const RibbonSurface& s, const BridgeData& B, const Word& y) {
  const int m = static_cast<int>(y.size());
  const Word ybar = inverse_word(y);
  const int L = static_cast<int>(B.letters.size());
  auto plcp = [&](const Word& z, const Word& P) {
    std::vector<int> out(m, 0);
    for (int f = 0; f < m; ++f) {
      int k = 0;
      while (k < static_cast<int>(P.size()) && z[(f + k) % m] == P[k]) ++k;
      if (k >= static_cast<int>(P.size()))
        throw std::logic_error("pattern exhausted: curve axis along a boundary line");
      out[f] = k;
    }
    return out;
  };
  const auto LfX = plcp(y, B.pat_x), LbX = plcp(ybar, B.pat_x);
  const auto LfY = plcp(y, B.pat_y), LbY = plcp(ybar, B.pat_y);
  long long cnt = 0;
  for (int pass = 0; pass < 2; ++pass) {
    const Word& z = pass ? ybar : y;
    const Word& zb = pass ? y : ybar;
    const std::vector<int>& fx = pass ? LbX : LfX;  // lcp(z cyclic, pat_x)
    const std::vector<int>& bx = pass ? LfX : LbX;  // lcp(z^-1 cyclic, pat_x)
    const std::vector<int>& fy = pass ? LbY : LfY;
    const std::vector<int>& by = pass ? LfY : LbY;
    std::vector<int> M(static_cast<size_t>(L + 1) * m, 0);
    for (int i = L - 1; i >= 0; --i)
      for (int f = 0; f < m; ++f)
        M[static_cast<size_t>(i) * m + f] =
            (B.letters[i] == static_cast<Letter>(z[f])) ? M[static_cast<size_t>(i + 1) * m + (f + 1) % m] + 1 : 0;
    // Side of the pattern ray P relative to the candidate axis, comparing at
    // the divergence depth when the axis spirals along P in either direction.
    auto pattern_side = [&](int phase, const std::vector<int>& lf, const std::vector<int>& lb,
                            const Word& P) {
      int dp = lf[phase], dm = lb[mod(m - phase, m)];
      if (dp > 0 && dm > 0) throw std::logic_error("two-sided pattern spiral");
      if (dp > 0)
        return s.germ_orient(static_cast<Letter>(z[(phase + dp) % m]), static_cast<Letter>(P[dp]),
                             inverse_letter(static_cast<Letter>(z[(phase + dp - 1) % m])));
      if (dm > 0)
        return s.germ_orient(static_cast<Letter>(P[dm]),
                             static_cast<Letter>(zb[(mod(m - phase, m) + dm) % m]),
                             inverse_letter(static_cast<Letter>(P[dm - 1])));
      return s.germ_orient(static_cast<Letter>(z[phase]), static_cast<Letter>(P[0]),
                           inverse_letter(static_cast<Letter>(z[mod(phase - 1, m)])));
    };
    for (int i = 0; i <= L; ++i) {
      for (int f = 0; f < m; ++f) {
        Letter af = static_cast<Letter>(z[f]);
        Letter ab = inverse_letter(static_cast<Letter>(z[mod(f - 1, m)]));
        if (i > 0) {
          Letter gp = inverse_letter(B.letters[i - 1]);
          if (gp == af || gp == ab) continue;
        }
        int r = 0;
        if (i < L) {
          if (B.letters[i] == ab) continue;
          if (B.letters[i] == af) r = M[static_cast<size_t>(i) * m + f];
        }
        if (pass == 1 && r == 0) continue;
        int sx = i > 0 ? s.germ_orient(af, inverse_letter(B.letters[i - 1]), ab)
                       : pattern_side(f, fx, bx, B.pat_x);
        int e = i + r, psi = (f + r) % m;
        int sy;
        if (e < L) {
          Letter abe = r > 0 ? inverse_letter(B.letters[e - 1]) : ab;
          sy = s.germ_orient(static_cast<Letter>(z[psi]), B.letters[e], abe);
        } else {
          sy = pattern_side(psi, fy, by, B.pat_y);
        }
        if (sx != sy) ++cnt;
      }
    }
  }
  return cnt;
}

std::string ray_sig(const Ray& r) { return format_word(r.pre) + ":" + format_word(r.per); }

std::string axis_sig(const Ray& plus, const Ray& minus) {
  std::string a = ray_sig(plus), b = ray_sig(minus);
  return a < b ? a + "|" + b : b + "|" + a;
}

// Slow independent count: enumerate translate axes through every window
// vertex, dedup by a canonical signature modulo the <u> action, and test
// linking with generic ray orientations.
long long window_count_reference(const RibbonSurface& s, const Word& U, const Word& V,
                                 bool self_mode) {
  int n = static_cast<int>(U.size());
  Word uinv = inverse_word(U);
  Ray up(Word(), U), um(Word(), uinv);
  std::string sig_u = axis_sig(up, um);
  Word vinv = inverse_word(V);
  std::set<std::string> seen;
  long long cnt = 0;
  for (int t = 0; t < n; ++t) {
    Word base = U.substr(0, static_cast<size_t>(t));
    for (const Word* z0 : {&V, static_cast<const Word*>(&vinv)}) {
      for (size_t f = 0; f < z0->size(); ++f) {
        Word zz = rotate(*z0, f);
        Word zzinv = inverse_word(zz);
        Ray ap(base, zz), am(base, zzinv);
        if (axis_sig(ap, am) == sig_u) {
          if (self_mode) continue;
          throw std::logic_error("coincident axes for distinct classes");
        }
        int J = 8 + static_cast<int>((base.size() + 2 * (U.size() + zz.size())) / U.size());
        std::string key;
        for (int j = -J; j <= J; ++j) {
          Word g;
          const Word& rep = j >= 0 ? U : uinv;
          for (int k = 0; k < std::abs(j); ++k) g += rep;
          Word nb = concat_reduce(g, base);
          std::string sig = axis_sig(Ray(nb, zz), Ray(nb, zzinv));
          if (key.empty() || sig < key) key = sig;
        }
        if (!seen.insert(key).second) continue;
        int s1 = cyclic_orient(s, ap, up, am);
        int s2 = cyclic_orient(s, ap, um, am);
        if (s1 == 0 || s2 == 0) throw std::logic_error("degenerate orientation in reference count");
        if (s1 != s2) ++cnt;
      }
    }
  }
  return cnt;
}

}  // namespace

long long i_curves(const RibbonSurface& s, const CurveClass& u, const CurveClass& v) {
  RootPower ru = split_power(s, u), rv = split_power(s, v);
  if (ru.root.peripheral || rv.root.peripheral) return 0;
  if (ru.root == rv.root)
    return 2 * ru.k * rv.k * (window_count(s, ru.root.canonical, ru.root.canonical, true) / 2);
  return ru.k * rv.k * window_count(s, ru.root.canonical, rv.root.canonical, false);
}

long long self_intersection(const RibbonSurface& s, const CurveClass& u) {
  RootPower r = split_power(s, u);
  long long base =
      r.root.peripheral ? 0 : window_count(s, r.root.canonical, r.root.canonical, true);
  if (base & 1) throw std::logic_error("odd raw self-crossing count");
  return r.k * r.k * (base / 2) + (r.k - 1);
}

long long i_arc_curve(const RibbonSurface& s, const ArcClass& a, const CurveClass& v) {
  RootPower r = split_power(s, v);
  if (v.peripheral || r.root.peripheral)
    throw std::invalid_argument("peripheral classes are not valid multicurve entries");
  const Word& b = s.boundary_words[static_cast<size_t>(a.s)];
  const Word& c = s.boundary_words[static_cast<size_t>(a.e)];
  BridgeData B = make_bridge(s, b, c, a.w, r.root.canonical.size());
  return bridge_count(s, B, r.root.canonical) * r.k;
}

Rational i_multi(const RibbonSurface& s, const MultiClass& x, const MultiClass& y) {
  using K = MultiClass::Kind;
  if (x.kind == K::arc && y.kind == K::arc)
    throw std::invalid_argument("arc-arc pairing not supported");
  Rational total(0);
  if (x.kind == K::curve && y.kind == K::curve) {
    for (const auto& [cu, wu] : x.curves)
      for (const auto& [cv, wv] : y.curves) {
        long long val = cu == cv ? self_intersection(s, cu) : i_curves(s, cu, cv);
        total = total + wu * wv * Rational(val);
      }
    return total;
  }
  const MultiClass& am = x.kind == K::arc ? x : y;
  const MultiClass& cm = x.kind == K::arc ? y : x;
  for (const auto& [aa, wa] : am.arcs)
    for (const auto& [cv, wv] : cm.curves)
      total = total + wa * wv * Rational(i_arc_curve(s, aa, cv));
  return total;
}

bool is_simple(const RibbonSurface& s, const MultiClass& x) {
  if (x.kind != MultiClass::Kind::curve)
    throw std::invalid_argument("is_simple requires a multicurve");
  for (const auto& [c, w] : x.curves) {
    if (c.peripheral) return false;
    if (self_intersection(s, c) != 0) return false;
  }
  for (size_t i = 0; i < x.curves.size(); ++i)
    for (size_t j = i + 1; j < x.curves.size(); ++j)
      if (i_curves(s, x.curves[i].first, x.curves[j].first) != 0) return false;
  return true;
}

long long i_curves_reference(const RibbonSurface& s, const CurveClass& u, const CurveClass& v) {
  RootPower ru = split_power(s, u), rv = split_power(s, v);
  if (ru.root == rv.root)
    return 2 * ru.k * rv.k *
           (window_count_reference(s, ru.root.canonical, ru.root.canonical, true) / 2);
  return ru.k * rv.k * window_count_reference(s, ru.root.canonical, rv.root.canonical, false);
}

long long self_intersection_reference(const RibbonSurface& s, const CurveClass& u) {
  RootPower r = split_power(s, u);
  long long base = window_count_reference(s, r.root.canonical, r.root.canonical, true);
  if (base & 1) throw std::logic_error("odd raw self-crossing count");
  return r.k * r.k * (base / 2) + (r.k - 1);
}

long long i_arc_curve_reference(const RibbonSurface& s, const ArcClass& a, const CurveClass& v) {
  RootPower rp = split_power(s, v);
  if (v.peripheral || rp.root.peripheral)
    throw std::invalid_argument("peripheral classes are not valid multicurve entries");
  const Word& y = rp.root.canonical;
  const Word& b = s.boundary_words[static_cast<size_t>(a.s)];
  const Word& c = s.boundary_words[static_cast<size_t>(a.e)];
  const Word binv = inverse_word(b), cinv = inverse_word(c);
  size_t R = a.w.size() + b.size() + c.size() + y.size() + 8;
  std::set<Word> verts;
  {
    Word u;
    verts.insert(u);
    for (char ch : a.w) {
      u.push_back(ch);
      verts.insert(u);
    }
  }
  for (const Word* per : {&b, &binv}) {
    Word u;
    for (size_t k = 0; k < R; ++k) {
      u.push_back(static_cast<char>(cyc(*per, static_cast<long long>(k))));
      verts.insert(u);
    }
  }
  for (const Word* per : {&c, &cinv}) {
    Word u = a.w;
    for (size_t k = 0; k < R; ++k) {
      Letter l = cyc(*per, static_cast<long long>(k));
      if (!u.empty() && inverse_letter(static_cast<Letter>(u.back())) == l)
        u.pop_back();
      else
        u.push_back(static_cast<char>(l));
      verts.insert(u);
    }
  }
  Ray chip(Word(), b), chim(Word(), binv), etap(a.w, c), etam(a.w, cinv);
  Word yinv = inverse_word(y);
  std::set<std::string> seen;
  long long cnt = 0;
  for (const Word& base : verts) {
    for (const Word* z0 : {&y, static_cast<const Word*>(&yinv)}) {
      for (size_t f = 0; f < y.size(); ++f) {
        Word zz = rotate(*z0, f);
        Ray ap(base, zz), am(base, inverse_word(zz));
        if (!seen.insert(axis_sig(ap, am)).second) continue;
        int s1 = cyclic_orient(s, ap, chip, am);
        int s2 = cyclic_orient(s, ap, chim, am);
        int s3 = cyclic_orient(s, ap, etap, am);
        int s4 = cyclic_orient(s, ap, etam, am);
        if (s1 == 0 || s2 == 0 || s3 == 0 || s4 == 0)
          throw std::logic_error("degenerate orientation in reference count");
        if (s1 != s2 || s3 != s4) throw std::logic_error("boundary line linked in reference count");
        if (s1 != s3) ++cnt;
      }
    }
  }
  return cnt * rp.k;
}

}  // namespace arccount
