#include "arccount/mlz.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>

#include "arccount/intersect.hpp"

namespace arccount {
namespace {

MultiClass weighted(const CurveClass& c, long long w) {
  return make_multicurve({{c, Rational(w)}});
}

// Cutting-sequence word of the torus (p,q) curve: a-blocks sized by the
// Beatty differences of p/q, one b per block. Abelianization (p, q).
Word torus_slope_word(long long p, long long q) {
  Word w;
  if (q == 0) {
    w.push_back(0);  // a
    return w;
  }
  if (p == 0) {
    w.push_back(2);  // b
    return w;
  }
  Letter ea = p > 0 ? 0 : 1;
  long long ap = p > 0 ? p : -p;
  for (long long i = 1; i <= q; ++i) {
    long long na = (i * ap) / q - ((i - 1) * ap) / q;
    for (long long j = 0; j < na; ++j) w.push_back(ea);
    w.push_back(2);
  }
  return w;
}

struct SlopeKey {
  long long p, q;
  bool operator<(const SlopeKey& o) const { return p != o.p ? p < o.p : q < o.q; }
};

// S_0_4 decode: reduce (p,q) to a basis slope by Euclid steps matching the
// calibrated twist step size, then rebuild by applying the twists. Relies on
// make_chart having oriented twists as +p, -p, +q, -q; each decode is still
// verified against its intersection signature by the caller.
CurveClass decode_sphere(const DTChart& chart, long long p, long long q) {
  std::map<SlopeKey, CurveClass> bases;
  bases[{1, 0}] = chart.base10;
  bases[{0, 1}] = chart.base01;
  if (chart.step == 2) bases[{1, 1}] = chart.base11;
  const long long step = chart.step;

  struct Op {
    int axis;  // 0: changes p by step*q, 1: changes q by step*p
    long long k;
  };
  std::vector<Op> ops;
  long long cp = p, cq = q;
  for (int iter = 0;; ++iter) {
    if (iter > 200) throw std::logic_error("slope reduction did not terminate");
    if (cq < 0 || (cq == 0 && cp < 0)) {  // coordinates are projective
      cp = -cp;
      cq = -cq;
    }
    if (bases.count({cp, cq})) break;
    long long acp = std::llabs(cp), acq = std::llabs(cq);
    if (acp >= acq && cq != 0) {
      long long k = std::llround(static_cast<double>(cp) / static_cast<double>(step * cq));
      if (k == 0) k = cp * cq > 0 ? 1 : -1;
      ops.push_back({0, k});
      cp -= step * k * cq;
    } else if (cp != 0) {
      long long k = std::llround(static_cast<double>(cq) / static_cast<double>(step * cp));
      if (k == 0) k = cp * cq > 0 ? 1 : -1;
      ops.push_back({1, k});
      cq -= step * k * cp;
    } else {
      throw std::logic_error("slope reduction reached a non-basis axis point");
    }
  }
  CurveClass cur = bases.at({cp, cq});
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const MCGAutomorphism& t = chart.twists[static_cast<size_t>(it->axis * 2 + (it->k > 0 ? 0 : 1))];
    for (long long j = 0; j < std::llabs(it->k); ++j) cur = apply(chart.surface, t, cur);
  }
  return cur;
}

long long slope_step(const DTChart& chart) {
  CurveClass t = apply(chart.surface, chart.twists[0], chart.base01);
  long long twoq = i_curves(chart.surface, t, chart.base10);
  long long twop = i_curves(chart.surface, t, chart.base01);
  if (twoq != 2 || (twop != 2 && twop != 4))
    throw std::logic_error("twist recursion probe failed");
  return twop / 2;
}

}  // namespace

DTChart make_chart(const RibbonSurface& s) {
  if (invariants(s).is_pair_of_pants) throw std::invalid_argument("pair of pants excluded");
  DTChart chart;
  chart.surface = s;
  if (s.name == "S_1_1") {
    chart.base10 = canonical_curve(s, parse_word("a", s.edge_count));
    chart.base01 = canonical_curve(s, parse_word("b", s.edge_count));
    return chart;
  }
  if (s.name == "S_0_4") {
    chart.base10 = canonical_curve(s, parse_word("ab", s.edge_count));
    chart.base01 = canonical_curve(s, parse_word("bc", s.edge_count));
    if (i_curves(s, chart.base10, chart.base01) != 2)
      throw std::logic_error("basis curves do not meet twice");
    chart.twists = preset_generators(s, "preserve");  // Tab, Tbc, Tab', Tbc'
    // reorder to Tab, Tab', Tbc, Tbc' for the recursion indexing
    std::swap(chart.twists[1], chart.twists[2]);
    chart.step = slope_step(chart);

    // Orientation: twists[0] acts as p -> p + step*q by definition. Probe the
    // q-twist's relative sign: i(Tq(Tp(base01)), base10) is 2(step^2 + 1) when
    // Tq acts as q -> q + step*p in the same orientation, 2(step^2 - 1) when
    // it acts with the opposite sign (then swap the q pair).
    CurveClass t = apply(s, chart.twists[2], apply(s, chart.twists[0], chart.base01));
    long long got = i_curves(s, t, chart.base10);
    if (got == 2 * (chart.step * chart.step - 1))
      std::swap(chart.twists[2], chart.twists[3]);
    else if (got != 2 * (chart.step * chart.step + 1))
      throw std::logic_error("twist orientation probe failed");

    if (chart.step == 2) {
      // Full twists preserve slope parity mod 2, so (odd,odd) needs its own
      // basis. The ac curve is (1,1) or (-1,1): the +p twist sends (1,1) to
      // (3,1) (signature 2|p| = 6) and (-1,1) to (1,1) (signature 2).
      CurveClass w = canonical_curve(s, parse_word("ac", s.edge_count));
      if (i_curves(s, w, chart.base10) != 2 || i_curves(s, w, chart.base01) != 2)
        throw std::logic_error("third basis curve has the wrong signature");
      CurveClass z = apply(s, chart.twists[0], w);
      long long zp = i_curves(s, z, chart.base01);
      if (zp == 6)
        chart.base11 = w;
      else if (zp == 2)
        chart.base11 = z;
      else
        throw std::logic_error("third basis orientation probe failed");
    }
    return chart;
  }
  if (s.name == "S_1_2")
    throw std::invalid_argument("mlz chart for S_1_2 is feature-gated out of this build");
  throw std::invalid_argument("no chart for preset " + s.name);
}

bool valid_coords(const DTChart& chart, const MLZCoords& x) {
  (void)chart;
  if (x.c < 1) return false;
  if (x.p == 0 && x.q == 0) return false;
  if (x.q < 0 || (x.q == 0 && x.p < 0)) return false;
  long long g = std::gcd(std::llabs(x.p), std::llabs(x.q));
  return g == 1;
}

MultiClass decode(const DTChart& chart, const MLZCoords& x) {
  if (x.c < 1) throw std::invalid_argument("zero weight");
  if (x.p == 0 && x.q == 0) throw std::invalid_argument("zero slope");
  if (x.q < 0 || (x.q == 0 && x.p < 0)) throw std::invalid_argument("slope not sign-normalized");
  if (std::gcd(std::llabs(x.p), std::llabs(x.q)) != 1)
    throw std::invalid_argument("non-primitive slope");

  const RibbonSurface& s = chart.surface;
  CurveClass cls;
  long long sig10, sig01;  // expected i with base10, base01
  if (s.name == "S_1_1") {
    cls = canonical_curve(s, torus_slope_word(x.p, x.q));
    sig10 = std::llabs(x.q);
    sig01 = std::llabs(x.p);
  } else {
    cls = decode_sphere(chart, x.p, x.q);
    sig10 = 2 * std::llabs(x.q);
    sig01 = 2 * std::llabs(x.p);
  }
  if (i_curves(s, cls, chart.base10) != sig10 || i_curves(s, cls, chart.base01) != sig01)
    throw std::logic_error("slope decode signature mismatch");
  return weighted(cls, x.c);
}

std::vector<std::pair<long long, long long>> primitive_slopes(long long maxsum) {
  std::vector<std::pair<long long, long long>> out;
  for (long long ssum = 1; ssum <= maxsum; ++ssum)
    for (long long q = 0; q <= ssum; ++q) {
      long long ap = ssum - q;
      if (q == 0) {
        if (ap == 1) out.emplace_back(1, 0);
      } else if (ap == 0) {
        if (q == 1) out.emplace_back(0, 1);
      } else if (std::gcd(ap, q) == 1) {
        out.emplace_back(ap, q);
        out.emplace_back(-ap, q);
      }
    }
  return out;
}

long long enumerate_mlz(const DTChart& chart, const MultiFunctional& F, long long L) {
  if (L <= 0) return 0;
  constexpr long long kValidationSum = 8;
  long double c0 = 0;
  bool first = true;
  for (auto [p, q] : primitive_slopes(kValidationSum)) {
    long long f1 = F(decode(chart, {1, p, q}));
    if (f1 <= 0) throw std::runtime_error("coercivity bound unavailable: functional not positive");
    long double ratio = static_cast<long double>(f1) / static_cast<long double>(std::llabs(p) + std::llabs(q));
    if (first || ratio < c0) c0 = ratio;
    first = false;
  }
  long long maxsum = static_cast<long long>(std::floor(static_cast<long double>(L) / c0)) + 1;

  long long total = 0;
  for (auto [p, q] : primitive_slopes(maxsum)) {
    long long sum = std::llabs(p) + std::llabs(q);
    long long f1 = F(decode(chart, {1, p, q}));
    if (f1 <= 0) throw std::runtime_error("non-positive functional on a decoded class");
    if (static_cast<long double>(f1) < c0 * static_cast<long double>(sum) - 1e-9L)
      throw std::runtime_error("coercivity bound violated during scan");
    total += L / f1;  // weights c with c*f1 <= L
  }
  return total;
}

BallCount thurston_ball_estimate(const DTChart& chart, const MultiFunctional& F,
                                 const std::vector<long long>& grid) {
  if (grid.size() < 4) throw std::invalid_argument("grid must have at least 4 points");
  for (size_t i = 0; i < grid.size(); ++i)
    if (grid[i] <= 0 || (i > 0 && grid[i] <= grid[i - 1]))
      throw std::invalid_argument("grid must be positive and strictly increasing");

  int expo = invariants(chart.surface).growth_exponent;
  BallCount bc;
  bc.grid = grid;
  for (long long L : grid) {
    long long n = enumerate_mlz(chart, F, L);
    bc.counts.push_back(n);
    bc.normalized.push_back(static_cast<double>(n) / std::pow(static_cast<double>(L), expo));
  }
  bc.gaps.assign(grid.size(), 0.0);
  for (size_t i = 1; i < grid.size(); ++i) {
    double a = bc.normalized[i - 1], b = bc.normalized[i];
    double denom = std::max(std::abs(a), std::abs(b));
    bc.gaps[i] = denom == 0 ? 0.0 : std::abs(b - a) / denom;
    bc.cauchy_gap = std::max(bc.cauchy_gap, bc.gaps[i]);
  }
  return bc;
}

}  // namespace arccount
