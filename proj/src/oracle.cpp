#include "arccount/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "arccount/data.hpp"

namespace arccount {
namespace {

// ----- exact circle arithmetic for the ping-pong certificate -----

struct CPoint {
  bool inf = false;
  Rational v;
};

bool cpoint_eq(const CPoint& a, const CPoint& b) {
  if (a.inf || b.inf) return a.inf && b.inf;
  return a.v == b.v;
}

// +1 when walking counterclockwise (increasing reals, wrapping through
// infinity) from x meets y before z; points assumed pairwise distinct.
int cyc3(const CPoint& x, const CPoint& y, const CPoint& z) {
  if (!x.inf && !y.inf && !z.inf) {
    bool pos = (x.v < y.v && y.v < z.v) || (y.v < z.v && z.v < x.v) || (z.v < x.v && x.v < y.v);
    return pos ? 1 : -1;
  }
  if (x.inf) return y.v < z.v ? 1 : -1;
  if (y.inf) return z.v < x.v ? 1 : -1;
  return x.v < y.v ? 1 : -1;
}

CPoint mobius(const RationalMatrix& m, const CPoint& p) {
  if (p.inf) {
    if (m[2] == Rational(0)) return {true, Rational(0)};
    return {false, m[0] / m[2]};
  }
  Rational den = m[2] * p.v + m[3];
  if (den == Rational(0)) return {true, Rational(0)};
  return {false, (m[0] * p.v + m[1]) / den};
}

struct Arc {
  CPoint s, e;  // counterclockwise from s to e
};

bool arc_contains(const Arc& a, const CPoint& p) {
  if (cpoint_eq(p, a.s) || cpoint_eq(p, a.e)) return true;
  return cyc3(a.s, p, a.e) == 1;
}

// Attracting interval per letter: arcs[x] is where every reduced word starting
// with letter x sends the rest of the circle.
std::vector<Arc> pingpong_arcs(const OracleRep& rep) {
  int n = static_cast<int>(rep.gens.size());
  std::vector<Arc> arcs(static_cast<size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    const RationalMatrix& m = rep.gens[static_cast<size_t>(i)];
    auto [lo, hi] = rep.repelling[static_cast<size_t>(i)];
    // Repelling interval guards the inverse letter; the positive letter gets
    // the image of its complement (an orientation-preserving map sends the
    // arc hi -> lo through infinity to the arc g(hi) -> g(lo)).
    arcs[static_cast<size_t>(2 * i + 1)] = {CPoint{false, lo}, CPoint{false, hi}};
    arcs[static_cast<size_t>(2 * i)] = {mobius(m, CPoint{false, hi}), mobius(m, CPoint{false, lo})};
  }
  return arcs;
}

// ----- numeric side: long double matrices and projective circle points -----

struct Mat {
  long double a = 1, b = 0, c = 0, d = 1;
};

Mat mul(const Mat& x, const Mat& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

Mat inv(const Mat& m) { return {m.d, -m.b, -m.c, m.a}; }  // det +1

struct PPoint {
  long double x = 0, y = 0;
};

PPoint normalize(PPoint p) {
  long double n = std::sqrt(p.x * p.x + p.y * p.y);
  if (!(n > 0) || !std::isfinite(n)) throw std::runtime_error("oracle numeric degeneration");
  p.x /= n;
  p.y /= n;
  if (p.y < -1e-12L || (std::abs(p.y) <= 1e-12L && p.x < 0)) {
    p.x = -p.x;
    p.y = -p.y;
  }
  return p;
}

PPoint apply(const Mat& m, const PPoint& p) {
  return normalize({m.a * p.x + m.b * p.y, m.c * p.x + m.d * p.y});
}

long double det2(const PPoint& p, const PPoint& q) { return p.x * q.y - q.x * p.y; }

constexpr long double kSharedTol = 1e-9L;
constexpr long double kMatchTol = 1e-6L;

bool same_point(const PPoint& p, const PPoint& q) { return std::abs(det2(p, q)) < kSharedTol; }

// Circle coordinate of a projective point, mirroring the exact CPoint chart.
struct NPoint {
  bool inf = false;
  long double t = 0;
  PPoint p;
};

NPoint npoint(const PPoint& q) {
  NPoint n;
  n.p = q;
  if (std::abs(q.y) < 1e-12L)
    n.inf = true;
  else
    n.t = q.x / q.y;
  return n;
}

// Ternary circle orientation with an unsure band: 0 when any pair sits within
// tolerance of coinciding, otherwise the cyc3 convention.
int ncyc3(const NPoint& x, const NPoint& y, const NPoint& z) {
  if (same_point(x.p, y.p) || same_point(y.p, z.p) || same_point(x.p, z.p)) return 0;
  if (!x.inf && !y.inf && !z.inf) {
    bool pos = (x.t < y.t && y.t < z.t) || (y.t < z.t && z.t < x.t) || (z.t < x.t && x.t < y.t);
    return pos ? 1 : -1;
  }
  if (x.inf) return y.t < z.t ? 1 : -1;
  if (y.inf) return z.t < x.t ? 1 : -1;
  return x.t < y.t ? 1 : -1;
}

// Attracting and repelling fixed points as projective eigenvectors.
std::pair<PPoint, PPoint> axis_points(const Mat& m) {
  long double tr = m.a + m.d;
  long double disc = tr * tr - 4;
  if (disc <= 0) throw std::runtime_error("non-hyperbolic element in oracle");
  long double sq = std::sqrt(disc);
  long double l1 = (tr >= 0 ? tr + sq : tr - sq) / 2;  // dominant eigenvalue
  long double l2 = 1 / l1;  // det 1; avoids catastrophic cancellation
  auto evec = [&](long double lam) {
    PPoint v1{m.b, lam - m.a}, v2{lam - m.d, m.c};
    PPoint v = (v1.x * v1.x + v1.y * v1.y >= v2.x * v2.x + v2.y * v2.y) ? v1 : v2;
    return normalize(v);
  };
  return {evec(l1), evec(l2)};
}

Mat letter_mat(const OracleRep& rep, Letter l) {
  if (generator_of(l) >= static_cast<int>(rep.gens.size()))
    throw std::invalid_argument("letter outside the oracle representation");
  const RationalMatrix& g = rep.gens[static_cast<size_t>(generator_of(l))];
  Mat m{static_cast<long double>(g[0].num) / g[0].den, static_cast<long double>(g[1].num) / g[1].den,
        static_cast<long double>(g[2].num) / g[2].den, static_cast<long double>(g[3].num) / g[3].den};
  return is_positive(l) ? m : inv(m);
}

Mat word_mat(const OracleRep& rep, const Word& w) {
  Mat m;
  for (char ch : w) m = mul(m, letter_mat(rep, static_cast<Letter>(ch)));
  return m;
}

void guard_word(const Word& w) {
  if (w.size() > 12) throw std::invalid_argument("oracle words are limited to 12 letters");
  if (w.empty()) throw std::invalid_argument("oracle requires a nontrivial word");
}

Mat mat_power(const Mat& m, long long k) {
  Mat base = k >= 0 ? m : inv(m);
  long long n = std::llabs(k);
  Mat out;
  for (long long i = 0; i < n; ++i) out = mul(out, base);
  return out;
}

PPoint cpoint_numeric(const CPoint& c) {
  if (c.inf) return normalize({1, 0});
  return normalize({static_cast<long double>(c.v.num) / static_cast<long double>(c.v.den), 1});
}

// Numeric endpoints of the attracting interval of every letter.
std::vector<std::pair<PPoint, PPoint>> interval_table(const OracleRep& rep) {
  std::vector<Arc> arcs = pingpong_arcs(rep);
  std::vector<std::pair<PPoint, PPoint>> out;
  out.reserve(arcs.size());
  for (const Arc& a : arcs) out.emplace_back(cpoint_numeric(a.s), cpoint_numeric(a.e));
  return out;
}

// Breadth-first walk over tree vertices (reduced words as matrices).  At every
// vertex the visitor sees the vertex matrix; subtrees whose boundary shadow
// provably misses all target points are pruned: an axis confined to an
// interval containing no target cannot separate targets.  Every axis that
// links the targets shares a vertex with their tracked branches, so the walk
// is complete once depth_cap covers the sharing vertex.
template <typename Visit>
void vertex_walk(const OracleRep& rep, const std::vector<PPoint>& targets, int depth_cap,
                 size_t budget, Visit&& visit) {
  struct Node {
    Mat m;
    int last;
  };
  std::vector<std::pair<PPoint, PPoint>> iv = interval_table(rep);
  int letters = 2 * static_cast<int>(rep.gens.size());
  std::vector<Node> layer{{Mat{}, -1}};
  size_t visited = 0;
  for (int depth = 0;; ++depth) {
    for (const Node& node : layer) {
      ++visited;
      visit(node.m);
    }
    if (visited > budget) throw std::runtime_error("oracle vertex budget exhausted");
    if (depth == depth_cap || layer.empty()) break;
    std::vector<Node> next;
    for (const Node& node : layer)
      for (int l = 0; l < letters; ++l) {
        if (node.last >= 0 && inverse_letter(static_cast<Letter>(node.last)) == static_cast<Letter>(l))
          continue;
        Mat cm = mul(node.m, letter_mat(rep, static_cast<Letter>(l)));
        // Shadow of the child subtree: image of the complement of the
        // backtracking interval, an arc from I(l^-1).e to I(l^-1).s.
        const auto& back = iv[static_cast<size_t>(inverse_letter(static_cast<Letter>(l)))];
        NPoint ka = npoint(apply(cm, back.second)), kb = npoint(apply(cm, back.first));
        bool keep = false;
        for (const PPoint& t : targets)
          if (ncyc3(ka, npoint(t), kb) != -1) {
            keep = true;
            break;
          }
        if (keep) next.push_back({cm, l});
      }
    layer = std::move(next);
  }
}

// Crossing of a translate axis with the u-axis: the signed position of the
// crossing point along the u-axis folded by the translation length, plus the
// folded representative's endpoints so coincident crossing points of distinct
// axes stay distinct.
struct Crossing {
  long double param = 0;
  PPoint p, q;
};

// Axes of every conjugate of v passing through the origin vertex: the
// cyclically reduced conjugates are exactly the rotations of v and v^-1.
std::vector<std::pair<PPoint, PPoint>> rotation_axes(const OracleRep& rep, const Word& v) {
  std::vector<std::pair<PPoint, PPoint>> out;
  Word vinv = inverse_word(v);
  const Word* words[2] = {&v, &vinv};
  for (const Word* z : words)
    for (size_t f = 0; f < z->size(); ++f) out.push_back(axis_points(word_mat(rep, rotate(*z, f))));
  return out;
}

// Crossings of translate axes of v with the axis of u, counted in one
// fundamental window of the <u> action.  u and v must be cyclically reduced
// primitive roots; multiplicity conventions live in the public wrappers.
long long count_axis_crossings(const OracleRep& rep, const Word& u, const Word& v, bool self_mode,
                               int max_depth) {
  guard_word(u);
  guard_word(v);
  Mat mu = word_mat(rep, u);
  auto [up, um] = axis_points(mu);
  long double tr = std::abs(mu.a + mu.d);
  long double lambda = (tr + std::sqrt(tr * tr - 4)) / 2;
  long double ell = 2 * std::log(lambda);
  // T sends the repelling end to 0 and the attracting end to infinity.
  Mat T{um.y, -um.x, -up.y, up.x};
  NPoint nup = npoint(up), num = npoint(um);

  std::vector<Crossing> found;
  auto matches = [&](const Crossing& a, const Crossing& b) {
    for (int shift = -1; shift <= 1; ++shift) {
      if (std::abs(a.param + shift * ell - b.param) > kMatchTol) continue;
      Mat s = mat_power(mu, shift);
      PPoint sp = apply(s, a.p), sq = apply(s, a.q);
      if ((same_point(sp, b.p) && same_point(sq, b.q)) ||
          (same_point(sp, b.q) && same_point(sq, b.p)))
        return true;
    }
    return false;
  };
  auto consider = [&](const PPoint& ap, const PPoint& am) {
    // shared endpoints (same axis included) never link
    if (same_point(ap, up) || same_point(ap, um) || same_point(am, up) || same_point(am, um))
      return;
    // sub-tolerance axis: u's endpoints are both farther than tolerance from it,
    // so neither can sit inside the tiny arc it bounds -- no crossing
    if (same_point(ap, am)) return;
    int c1 = ncyc3(npoint(ap), nup, npoint(am));
    int c2 = ncyc3(npoint(ap), num, npoint(am));
    if (c1 == 0 || c2 == 0) throw std::runtime_error("oracle: endpoint order not resolved");
    if (c1 == c2) return;  // endpoints of u on one side: no crossing
    PPoint tp = apply(T, ap), tq = apply(T, am);
    if (std::abs(tp.x) < kSharedTol || std::abs(tp.y) < kSharedTol ||
        std::abs(tq.x) < kSharedTol || std::abs(tq.y) < kSharedTol)
      throw std::runtime_error("oracle: crossing position not resolved");
    long double param = (std::log(std::abs(tp.x)) - std::log(std::abs(tp.y)) +
                         std::log(std::abs(tq.x)) - std::log(std::abs(tq.y))) /
                        2;
    long long k = static_cast<long long>(std::floor(param / ell));
    Crossing c;
    c.param = param - static_cast<long double>(k) * ell;
    Mat fold = mat_power(mu, -k);
    c.p = apply(fold, ap);
    c.q = apply(fold, am);
    for (const Crossing& old : found)
      if (matches(c, old)) return;
    found.push_back(c);
  };

  std::vector<std::pair<PPoint, PPoint>> rot = rotation_axes(rep, v);
  // Every crossing axis shares a vertex with the u-axis path; modulo folding
  // that vertex sits within one period of u.
  int depth_cap = static_cast<int>(u.size()) + 4;
  size_t budget = 4000 * static_cast<size_t>(max_depth + 1);
  vertex_walk(rep, {up, um}, depth_cap, budget, [&](const Mat& m) {
    for (const auto& [zp, zm] : rot) consider(apply(m, zp), apply(m, zm));
  });

  long long count = static_cast<long long>(found.size());
  if (self_mode) {
    if (count & 1) throw std::runtime_error("oracle: odd raw self-crossing count");
    return count / 2;
  }
  return count;
}

struct RootK {
  Word root;
  long long k = 1;
};

RootK word_root(const Word& w) {
  Word c = cyclic_reduce(w);
  if (c.empty()) throw std::invalid_argument("oracle requires a nontrivial word");
  size_t p = primitive_period(c);
  return {c.substr(0, p), static_cast<long long>(c.size() / p)};
}

bool same_unoriented_axis(const Word& r1, const Word& r2) {
  if (r1.size() != r2.size()) return false;
  return least_rotation(r1) == least_rotation(r2) ||
         least_rotation(r1) == least_rotation(inverse_word(r2));
}

}  // namespace

OracleRep load_oracle_rep(const std::string& preset_name) {
  nlohmann::json data = nlohmann::json::parse(preset_data_text());
  const auto& reps = data.at("oracle_reps");
  if (!reps.contains(preset_name))
    throw std::runtime_error("no oracle representation stored for preset " + preset_name);
  const auto& entry = reps.at(preset_name);
  OracleRep rep;
  rep.surface = make_preset(preset_name);
  static const char* kNames[] = {"a", "b", "c"};
  for (int i = 0; i < rep.surface.edge_count; ++i) {
    const auto& m = entry.at("matrices").at(kNames[i]);
    rep.gens.push_back({parse_rational(m[0][0].get<std::string>()),
                        parse_rational(m[0][1].get<std::string>()),
                        parse_rational(m[1][0].get<std::string>()),
                        parse_rational(m[1][1].get<std::string>())});
    const auto& iv = entry.at("repelling_intervals").at(kNames[i]);
    rep.repelling.emplace_back(parse_rational(iv[0].get<std::string>()),
                               parse_rational(iv[1].get<std::string>()));
  }
  certify_oracle_rep(rep);
  return rep;
}

void certify_oracle_rep(const OracleRep& rep) {
  int n = rep.surface.edge_count;
  if (static_cast<int>(rep.gens.size()) != n || static_cast<int>(rep.repelling.size()) != n)
    throw std::runtime_error("oracle data does not match the preset rank");
  for (int i = 0; i < n; ++i) {
    const RationalMatrix& m = rep.gens[static_cast<size_t>(i)];
    if (m[0] * m[3] - m[1] * m[2] != Rational(1))
      throw std::runtime_error("oracle matrix determinant is not 1");
    Rational tr = m[0] + m[3];
    if (!(tr > Rational(2)) && !(tr < Rational(-2)))
      throw std::runtime_error("oracle generator is not hyperbolic");
    auto [lo, hi] = rep.repelling[static_cast<size_t>(i)];
    if (!(lo < hi)) throw std::runtime_error("bad repelling interval");
  }
  std::vector<Arc> arcs = pingpong_arcs(rep);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i + 1; j < 2 * n; ++j) {
      const Arc &x = arcs[static_cast<size_t>(i)], &y = arcs[static_cast<size_t>(j)];
      if (arc_contains(x, y.s) || arc_contains(x, y.e) || arc_contains(y, x.s) ||
          arc_contains(y, x.e))
        throw std::runtime_error("ping-pong intervals overlap");
    }
  for (int x = 0; x < 2 * n; ++x)
    for (int y = 0; y < 2 * n; ++y)
      for (int z = 0; z < 2 * n; ++z) {
        if (x == y || y == z || x == z) continue;
        int want = rep.surface.germ_orient(static_cast<Letter>(x), static_cast<Letter>(y),
                                           static_cast<Letter>(z));
        if (cyc3(arcs[static_cast<size_t>(x)].s, arcs[static_cast<size_t>(y)].s,
                 arcs[static_cast<size_t>(z)].s) != want)
          throw std::runtime_error("ping-pong intervals do not realize the ribbon order");
      }
}

long long hyperbolic_oracle_i(const OracleRep& rep, const Word& u, const Word& v, int max_depth) {
  guard_word(u);
  guard_word(v);
  RootK ru = word_root(u), rv = word_root(v);
  // Multiplicity is definitional: classes scale crossings of their roots, and
  // equal roots pair as twice the self-crossing count.
  if (same_unoriented_axis(ru.root, rv.root))
    return 2 * ru.k * rv.k * count_axis_crossings(rep, ru.root, ru.root, true, max_depth);
  return ru.k * rv.k * count_axis_crossings(rep, ru.root, rv.root, false, max_depth);
}

long long hyperbolic_oracle_si(const OracleRep& rep, const Word& u, int max_depth) {
  guard_word(u);
  RootK r = word_root(u);
  long long base = count_axis_crossings(rep, r.root, r.root, true, max_depth);
  return r.k * r.k * base + (r.k - 1);
}

long long hyperbolic_oracle_i_arc(const OracleRep& rep, const ArcClass& a, const Word& v,
                                  int max_depth) {
  guard_word(v);
  if (a.w.size() > 12) throw std::invalid_argument("oracle words are limited to 12 letters");
  RootK rv = word_root(v);
  const Word& bs = rep.surface.boundary_words[static_cast<size_t>(a.s)];
  const Word& be = rep.surface.boundary_words[static_cast<size_t>(a.e)];
  auto [xp, xm] = axis_points(word_mat(rep, bs));
  Mat mw = word_mat(rep, a.w);
  auto [ype, yme] = axis_points(word_mat(rep, be));
  PPoint yp = apply(mw, ype), ym = apply(mw, yme);
  NPoint nxp = npoint(xp), nxm = npoint(xm), nyp = npoint(yp), nym = npoint(ym);

  std::vector<std::pair<PPoint, PPoint>> found;
  auto consider = [&](const PPoint& ap, const PPoint& am) {
    for (const PPoint& e : {xp, xm, yp, ym})
      if (same_point(ap, e) || same_point(am, e)) return;
    if (same_point(ap, am)) return;  // sub-tolerance axis cannot separate the lines
    NPoint e1 = npoint(ap), e2 = npoint(am);
    int s1 = ncyc3(e1, nxp, e2), s2 = ncyc3(e1, nxm, e2);
    int s3 = ncyc3(e1, nyp, e2), s4 = ncyc3(e1, nym, e2);
    if (s1 == 0 || s2 == 0 || s3 == 0 || s4 == 0)
      throw std::runtime_error("oracle: endpoint order not resolved");
    if (s1 != s2 || s3 != s4) throw std::runtime_error("oracle: boundary line linked by an axis");
    if (s1 == s3) return;  // same side of both boundary lines
    for (const auto& [p, q] : found)
      if ((same_point(ap, p) && same_point(am, q)) || (same_point(ap, q) && same_point(am, p)))
        return;
    found.emplace_back(ap, am);
  };

  std::vector<std::pair<PPoint, PPoint>> rot = rotation_axes(rep, rv.root);
  // The connecting segment between the two boundary lines runs through
  // prefixes of the arc word; crossing axes share one of those vertices.
  int depth_cap = static_cast<int>(a.w.size() + bs.size() + be.size()) + 6;
  size_t budget = 4000 * static_cast<size_t>(max_depth + 1);
  vertex_walk(rep, {xp, xm, yp, ym}, depth_cap, budget, [&](const Mat& m) {
    for (const auto& [zp, zm] : rot) consider(apply(m, zp), apply(m, zm));
  });
  return rv.k * static_cast<long long>(found.size());
}

}  // namespace arccount
