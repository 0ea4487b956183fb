#pragma once
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "arccount/mcg.hpp"

namespace arccount {

// Integral simple multicurve coordinates: weight c >= 1 on a primitive slope
// (p,q), sign-normalized to q > 0 or (q == 0 and p > 0). On both implemented
// presets distinct slopes always intersect, so every integral simple
// multicurve is a single weighted slope curve.
struct MLZCoords {
  long long c = 1;
  long long p = 1;
  long long q = 0;
};

// Slope chart with an exact decoder to canonical multicurves. S_1_1 decodes
// through cutting-sequence words; S_0_4 through a twist recursion on the
// basis curves, with an intersection-signature self-check per decode.
//
// make_chart calibrates the S_0_4 twist directions against the coordinates:
// twists[0] is +p by definition, and the relative sign of the q-twist and
// the (1,1) basis are probed with intersection numbers (the two candidate
// conventions give different unsigned signatures one twist later).
struct DTChart {
  RibbonSurface surface;
  CurveClass base10;
  CurveClass base01;
  std::vector<MCGAutomorphism> twists;  // calibrated: +p, -p, +q, -q
  long long step = 1;                   // slope increment per twist application
  CurveClass base11;                    // third parity basis, set when step == 2
};

// Charts exist for S_1_1 and S_0_4; S_1_2 is feature-gated out and the pair
// of pants is excluded.
DTChart make_chart(const RibbonSurface& s);

bool valid_coords(const DTChart& chart, const MLZCoords& x);
MultiClass decode(const DTChart& chart, const MLZCoords& x);

// Sign-normalized primitive slopes with |p|+|q| <= maxsum, deterministic order.
std::vector<std::pair<long long, long long>> primitive_slopes(long long maxsum);

using MultiFunctional = std::function<long long(const MultiClass&)>;

// Exact count of integral simple multicurves with F <= L. The scan box comes
// from an empirical coercivity bound F >= c0*(|p|+|q|) established on a small
// validation range and re-asserted on every scanned slope (violation aborts).
long long enumerate_mlz(const DTChart& chart, const MultiFunctional& F, long long L);

struct BallCount {
  std::string functional_desc;
  std::vector<long long> grid;
  std::vector<long long> counts;
  std::vector<double> normalized;  // counts / L^(6g-6+2r)
  std::vector<double> gaps;        // per-point relative change, gaps[0] = 0
  double cauchy_gap = 0;           // max over gaps[1..]
};

// Normalized lattice counts over an increasing grid of >= 4 points; the
// quotable estimate is the last normalized value together with cauchy_gap.
BallCount thurston_ball_estimate(const DTChart& chart, const MultiFunctional& F,
                                 const std::vector<long long>& grid);

}  // namespace arccount
