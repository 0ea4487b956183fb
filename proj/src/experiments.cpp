#include "arccount/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace arccount {
namespace {

using ordered_json = nlohmann::ordered_json;

void validate_grid(const std::vector<long long>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty grid");
  for (size_t i = 0; i < grid.size(); ++i)
    if (grid[i] <= 0 || (i > 0 && grid[i] <= grid[i - 1]))
      throw std::invalid_argument("grid must be positive and strictly increasing");
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

ordered_json config_echo(const ExperimentConfig& c) {
  // Execution details (workers, outdir) stay out so identical experiments
  // serialize identically.
  ordered_json j;
  j["surface"] = c.surface;
  j["kind"] = c.kind;
  j["seed"] = c.seed;
  j["gamma_mod"] = c.gamma_mod;
  j["functional"] = c.functional;
  j["grid"] = c.grid;
  j["slack"] = c.slack;
  j["boundary_convention"] = c.boundary_convention;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

ExperimentResult run_count(const ExperimentConfig& cfg) {
  validate_grid(cfg.grid);
  RibbonSurface s = make_preset(cfg.surface);
  if (invariants(s).is_pair_of_pants) throw std::invalid_argument("pair of pants excluded");
  Functional F = parse_functional(s, cfg.functional);
  if (!F.triweight && !is_registered_filling(s, F.mu))
    throw std::invalid_argument("functional multicurve is not in the filling registry");

  std::vector<MCGAutomorphism> gens = preset_generators(s, cfg.boundary_convention);
  SubgroupSpec gamma = cfg.gamma_mod == 0 ? full_group() : homology_kernel(s, gens, cfg.gamma_mod);

  OrbitBallConfig bc;
  bc.slack = cfg.slack;
  bc.workers = cfg.workers;
  bc.store_members = cfg.store_members;
  const long long Lmax = cfg.grid.back() * F.scale;

  ExperimentResult r;
  r.config = cfg;
  r.grid = cfg.grid;
  if (cfg.kind == "arcs") {
    ArcClass seed = parse_arc(s, cfg.seed);
    r.ball = orbit_ball(s, gens, seed, gamma, [&F](const ArcClass& a) { return F.eval(a); },
                        Lmax, bc);
  } else if (cfg.kind == "curves") {
    CurveClass seed = canonical_curve(s, parse_word(cfg.seed, s.edge_count));
    r.ball = orbit_ball(s, gens, seed, gamma, [&F](const CurveClass& c) { return F.eval(c); },
                        Lmax, bc);
  } else {
    throw std::invalid_argument("kind must be arcs or curves");
  }
  r.ball.functional_desc = F.description();

  int expo = invariants(s).growth_exponent;
  for (long long L : cfg.grid) {
    long long n = r.ball.counts_by_level[static_cast<size_t>(L * F.scale) - 1];
    r.counts.push_back(n);
    r.normalized.push_back(static_cast<double>(n) / std::pow(static_cast<double>(L), expo));
  }
  r.saturated = r.ball.saturated;
  r.explored_states = r.ball.explored_states;
  r.wall_time = r.ball.wall_time;

  size_t positive = 0;
  for (long long n : r.counts) positive += n > 0;
  if (positive >= 4) {
    r.fit = fit_exponent(cfg.grid, r.counts);
    r.has_fit = true;
  }
  r.constant_estimate = r.normalized.back();
  double mid = r.normalized[(r.normalized.size() - 1) / 2];
  r.constant_trend = mid == 0 ? 0 : r.normalized.back() / mid;
  return r;
}

ExponentFit fit_exponent(const std::vector<long long>& grid, const std::vector<long long>& counts) {
  if (grid.size() != counts.size()) throw std::invalid_argument("grid/count size mismatch");
  std::vector<double> xs, ys;
  ExponentFit fit;
  for (size_t i = 0; i < grid.size(); ++i) {
    if (counts[i] <= 0) {
      fit.zero_counts = true;
      continue;
    }
    xs.push_back(std::log(static_cast<double>(grid[i])));
    ys.push_back(std::log(static_cast<double>(counts[i])));
  }
  size_t n = xs.size();
  if (n < 4) throw std::invalid_argument("insufficient data for exponent fit");
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  double ss = 0;
  for (size_t i = 0; i < n; ++i) {
    double resid = ys[i] - my - fit.slope * (xs[i] - mx);
    ss += resid * resid;
  }
  fit.stderr_ = std::sqrt(std::max(0.0, ss / static_cast<double>(n - 2)) / sxx);
  return fit;
}

FiberStats fiber_statistics(const RibbonSurface& s, const OrbitBall& ball, const Functional& F) {
  if (!ball.saturated) throw InconclusiveError("fiber statistics require a saturated ball");
  bool nonempty = !ball.counts_by_level.empty() && ball.counts_by_level.back() > 0;
  if (ball.arc_members.empty())
    throw std::invalid_argument(nonempty ? "ball does not carry members" : "empty ball");

  FiberStats st;
  struct Image {
    long long size = 0;
    long long F = 0;
  };
  std::map<std::string, Image> fibers;
  for (size_t i = 0; i < ball.arc_members.size(); ++i) {
    CurveClass img = i_map(s, ball.arc_members[i]);
    long long imgF = F.eval(img);
    st.margin = std::max(st.margin, std::llabs(imgF - 2 * ball.member_F[i]));
    auto& slot = fibers[img.key()];
    slot.size += 1;
    slot.F = imgF;
  }
  std::map<long long, long long> size_freq;
  long long interior = 0;
  for (const auto& [key, img] : fibers)
    if (img.F + st.margin <= 2 * ball.L) {
      ++interior;
      size_freq[img.size] += 1;
    }
  st.interior_images = interior;
  if (interior == 0) throw InconclusiveError("no interior images at this bound");
  long long mode = 0, best = 0;
  for (const auto& [size, freq] : size_freq)
    if (freq > best) {
      best = freq;
      mode = size;
    }
  st.k_estimate = static_cast<double>(mode);
  st.violations = interior - best;
  return st;
}

RelationCheck constant_relation_check(const ExperimentResult& arcs, const ExperimentResult& curves,
                                      double k_estimate) {
  if (arcs.config.surface != curves.config.surface ||
      arcs.config.gamma_mod != curves.config.gamma_mod ||
      arcs.config.functional != curves.config.functional)
    throw std::invalid_argument("mismatched experiment configurations");
  if (!arcs.saturated || !curves.saturated)
    throw InconclusiveError("relation check requires saturated runs");
  if (k_estimate <= 0) throw std::invalid_argument("non-positive fiber constant");

  RelationCheck rc;
  for (size_t i = arcs.grid.size(); i-- > 0;) {
    long long L = arcs.grid[i];
    auto it = std::find(curves.grid.begin(), curves.grid.end(), 2 * L);
    if (it == curves.grid.end()) continue;
    rc.arc_L = L;
    rc.arc_count = arcs.counts[i];
    rc.curve_count = curves.counts[static_cast<size_t>(it - curves.grid.begin())];
    break;
  }
  if (rc.arc_L == 0) throw std::invalid_argument("grid mismatch: no arc L with 2L in the curve grid");
  if (rc.curve_count == 0) throw InconclusiveError("empty curve ball at 2L");

  rc.ratio = static_cast<double>(rc.arc_count) / static_cast<double>(rc.curve_count);
  rc.residual = std::abs(rc.ratio - k_estimate) / k_estimate;

  int expo = invariants(make_preset(arcs.config.surface)).growth_exponent;
  double denom = k_estimate * std::pow(2.0, expo) * curves.constant_estimate;
  rc.constant_form = denom == 0 ? -1 : std::abs(arcs.constant_estimate / denom - 1.0);
  return rc;
}

MuIndependence mu_independence_check(const ExperimentResult& r1, const BallCount& m1,
                                     const ExperimentResult& r2, const BallCount& m2) {
  if (r1.config.surface != r2.config.surface || r1.config.seed != r2.config.seed ||
      r1.config.gamma_mod != r2.config.gamma_mod)
    throw std::invalid_argument("mu-independence requires matching seed, surface and subgroup");
  if (r1.config.functional == r2.config.functional)
    throw std::invalid_argument("mu-independence requires two distinct functionals");
  if (!r1.saturated || !r2.saturated)
    throw InconclusiveError("mu-independence requires saturated runs");
  if (m1.counts.empty() || m2.counts.empty() || m1.counts.back() == 0 || m2.counts.back() == 0)
    throw std::invalid_argument("missing lattice ball estimate");

  int expo = invariants(make_preset(r1.config.surface)).growth_exponent;
  auto ratio = [&](const ExperimentResult& r, const BallCount& m) {
    double mthu = m.normalized.back();
    return static_cast<double>(r.counts.back()) /
           (std::pow(static_cast<double>(r.grid.back()), expo) * mthu);
  };
  MuIndependence mi;
  mi.ratio1 = ratio(r1, m1);
  mi.ratio2 = ratio(r2, m2);
  mi.gap = std::abs(mi.ratio1 - mi.ratio2) / std::max(std::abs(mi.ratio1), std::abs(mi.ratio2));
  return mi;
}

void write_result(const ExperimentResult& r, const std::string& outdir) {
  std::filesystem::create_directories(outdir);
  std::ostringstream csv;
  csv << "L,count,normalized,saturated\n";
  for (size_t i = 0; i < r.grid.size(); ++i)
    csv << r.grid[i] << "," << r.counts[i] << "," << fmt_double(r.normalized[i]) << ","
        << (r.saturated ? "true" : "false") << "\n";
  write_text(outdir + "/result.csv", csv.str());

  ordered_json j;
  j["version"] = r.version;
  j["config"] = config_echo(r.config);
  j["grid"] = r.grid;
  j["counts"] = r.counts;
  j["normalized"] = r.normalized;
  j["saturated"] = r.saturated;
  j["explored_states"] = r.explored_states;
  if (r.has_fit) {
    j["exponent"] = r.fit.slope;
    j["exponent_stderr"] = r.fit.stderr_;
    j["exponent_zero_counts"] = r.fit.zero_counts;
  }
  j["constant_estimate"] = r.constant_estimate;
  j["constant_trend"] = r.constant_trend;
  write_text(outdir + "/result.json", j.dump(2) + "\n");
}

void write_ballcount(const BallCount& bc, const std::string& outdir) {
  std::filesystem::create_directories(outdir);
  std::ostringstream csv;
  csv << "L,count,normalized,cauchy_gap\n";
  for (size_t i = 0; i < bc.grid.size(); ++i)
    csv << bc.grid[i] << "," << bc.counts[i] << "," << fmt_double(bc.normalized[i]) << ","
        << fmt_double(bc.gaps[i]) << "\n";
  write_text(outdir + "/result.csv", csv.str());

  ordered_json j;
  j["version"] = kVersion;
  j["functional"] = bc.functional_desc;
  j["grid"] = bc.grid;
  j["counts"] = bc.counts;
  j["normalized"] = bc.normalized;
  j["gaps"] = bc.gaps;
  j["cauchy_gap"] = bc.cauchy_gap;
  write_text(outdir + "/result.json", j.dump(2) + "\n");
}

std::vector<long long> parse_grid(const std::string& text) {
  std::vector<long long> grid;
  if (text.find(':') != std::string::npos) {
    size_t p1 = text.find(':'), p2 = text.find(':', p1 + 1);
    if (p2 == std::string::npos || text.size() <= p2 + 1 || text[p2 + 1] != 'x')
      throw std::invalid_argument("grid range syntax is start:stop:xfactor");
    long long start = std::stoll(text.substr(0, p1));
    long long stop = std::stoll(text.substr(p1 + 1, p2 - p1 - 1));
    long long factor = std::stoll(text.substr(p2 + 2));
    if (start <= 0 || factor < 2) throw std::invalid_argument("bad grid range");
    for (long long v = start; v <= stop; v *= factor) grid.push_back(v);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) grid.push_back(std::stoll(item));
  }
  validate_grid(grid);
  return grid;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    auto trim = [](std::string t) {
      size_t a = t.find_first_not_of(" \t\r");
      size_t b = t.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "surface")
      cfg.surface = val;
    else if (key == "seed")
      cfg.seed = val;
    else if (key == "gamma_mod")
      cfg.gamma_mod = std::stoi(val);
    else if (key == "functional")
      cfg.functional = val;
    else if (key == "grid")
      cfg.grid = parse_grid(val);
    else if (key == "slack")
      cfg.slack = std::stod(val);
    else if (key == "outdir")
      cfg.outdir = val;
    else if (key == "boundary_convention")
      cfg.boundary_convention = val;
    else
      throw std::invalid_argument("unknown config key: " + key);
  }
  return cfg;
}

}  // namespace arccount
