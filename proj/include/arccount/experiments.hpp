#pragma once
#include <stdexcept>
#include <string>
#include <vector>

#include "arccount/functionals.hpp"
#include "arccount/mcg.hpp"
#include "arccount/mlz.hpp"

namespace arccount {

inline constexpr const char* kVersion = "0.1.0";

// Result is not quotable: unsaturated BFS, no interior fibers, and similar.
// Distinct from validation errors so callers can exit differently.
struct InconclusiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string surface = "S_1_1";
  std::string kind = "arcs";  // "arcs" | "curves" (set by the CLI verb)
  std::string seed;
  int gamma_mod = 0;  // 0 = full group
  std::string functional = "i:a+b";
  std::vector<long long> grid;
  double slack = 2.0;
  int workers = 1;
  std::string outdir;
  std::string boundary_convention = "setwise";
  bool store_members = false;  // programmatic, for fiber/subset analysis
};

struct ExponentFit {
  double slope = 0;
  double stderr_ = 0;
  bool zero_counts = false;  // some grid points were dropped
};

struct ExperimentResult {
  ExperimentConfig config;
  std::string version = kVersion;
  std::vector<long long> grid;
  std::vector<long long> counts;
  std::vector<double> normalized;  // counts / L^(6g-6+2r)
  bool has_fit = false;
  ExponentFit fit;
  double constant_estimate = 0;
  double constant_trend = 0;  // last normalized over midpoint normalized
  bool saturated = false;
  long long explored_states = 0;
  double wall_time = 0;  // seconds; never serialized into result files
  OrbitBall ball;
};

// Shared orbit-ball BFS at the largest grid point, per-level thresholds for
// the smaller points. The functional's multicurve must be in the preset
// filling registry.
ExperimentResult run_count(const ExperimentConfig& cfg);

// Log-log least squares over grid points with positive counts; throws
// invalid_argument when fewer than 4 remain.
ExponentFit fit_exponent(const std::vector<long long>& grid, const std::vector<long long>& counts);

struct FiberStats {
  double k_estimate = 0;
  long long interior_images = 0;
  long long violations = 0;  // interior images whose fiber size differs
  long long margin = 0;      // max |F(image) - 2 F(arc)| over the ball
};

// Groups a stored arc ball by arc-to-curve image; k_estimate is the common
// size over images whose whole fiber provably lies inside the ball.
FiberStats fiber_statistics(const RibbonSurface& s, const OrbitBall& ball, const Functional& F);

struct RelationCheck {
  long long arc_L = 0;
  long long arc_count = 0;
  long long curve_count = 0;  // at 2 * arc_L
  double ratio = 0;
  double residual = 0;       // |ratio - k| / k
  double constant_form = 0;  // fitted-constant residual with the 2^exponent factor
};

RelationCheck constant_relation_check(const ExperimentResult& arcs, const ExperimentResult& curves,
                                      double k_estimate);

struct MuIndependence {
  double ratio1 = 0;
  double ratio2 = 0;
  double gap = 0;
};

// Compares N(L) / (L^e * mThu({F<=1})) across two filling functionals.
MuIndependence mu_independence_check(const ExperimentResult& r1, const BallCount& m1,
                                     const ExperimentResult& r2, const BallCount& m2);

// result.csv (header L,count,normalized,saturated) and result.json in outdir.
// Bit-stable: no wall time, no worker count, no output paths inside the files.
void write_result(const ExperimentResult& r, const std::string& outdir);
// Same file names for lattice counts; CSV header L,count,normalized,cauchy_gap.
void write_ballcount(const BallCount& bc, const std::string& outdir);

// "64,128,256" or geometric "64:512:x2".
std::vector<long long> parse_grid(const std::string& text);
// Flat key=value config file.
ExperimentConfig load_config(const std::string& path);

}  // namespace arccount
