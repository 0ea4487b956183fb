#include <iostream>
#include <random>

#include "CLI11.hpp"

#include "arccount/experiments.hpp"
#include "arccount/intersect.hpp"

using namespace arccount;

namespace {

// Deterministic sampling: fixed RNG seed, no time or address entropy.
constexpr uint64_t kRngSeed = 0x9a3779b97f4a7c15ull;

Word random_reduced_word(std::mt19937_64& rng, int letters, size_t len) {
  Word w;
  while (w.size() < len) {
    Letter l = static_cast<Letter>(rng() % letters);
    if (!w.empty() && w.back() == inverse_letter(l)) continue;
    w.push_back(l);
  }
  return w;
}

CurveClass random_curve(const RibbonSurface& s, std::mt19937_64& rng, size_t maxlen) {
  for (;;) {
    CurveClass c = canonical_curve(s, random_reduced_word(rng, s.letter_count(), 1 + rng() % maxlen));
    if (!c.canonical.empty() && !c.peripheral) return c;
  }
}

MultiClass random_multicurve(const RibbonSurface& s, std::mt19937_64& rng, size_t maxlen) {
  for (;;) {
    std::vector<std::pair<CurveClass, Rational>> items;
    size_t n = 1 + rng() % 2;
    for (size_t i = 0; i < n; ++i)
      items.emplace_back(random_curve(s, rng, maxlen), Rational(1 + (long long)(rng() % 3)));
    try {
      return make_multicurve(std::move(items));
    } catch (const std::invalid_argument&) {
      // duplicate component; draw again
    }
  }
}

MultiClass random_simple_multicurve(const DTChart& chart, std::mt19937_64& rng) {
  for (;;) {
    MLZCoords x;
    x.c = 1 + (long long)(rng() % 3);
    x.p = (long long)(rng() % 13) - 6;
    x.q = (long long)(rng() % 7);
    if (!valid_coords(chart, x)) continue;
    return decode(chart, x);
  }
}

ArcClass random_arc(const RibbonSurface& s, const std::vector<MCGAutomorphism>& gens,
                    const std::vector<ArcClass>& seeds, std::mt19937_64& rng, size_t twists) {
  ArcClass a = seeds[rng() % seeds.size()];
  size_t n = rng() % (twists + 1);
  for (size_t i = 0; i < n; ++i) a = apply(s, gens[rng() % gens.size()], a);
  return a;
}

struct CommonOpts {
  std::string surface = "S_1_1";
  std::string seed;
  int gamma_mod = 0;
  std::string functional = "i:a+b";
  std::string functional2;
  std::string grid = "8,16,32,64";
  double slack = 2.0;
  int workers = 1;
  std::string outdir = ".";
  std::string convention = "setwise";
  std::string config_path;

  ExperimentConfig to_config(const std::string& kind) const {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    cfg.kind = kind;
    if (surface != "S_1_1" || cfg.surface.empty()) cfg.surface = surface;
    if (!seed.empty()) cfg.seed = seed;
    if (gamma_mod != 0) cfg.gamma_mod = gamma_mod;
    if (functional != "i:a+b" || cfg.functional.empty()) cfg.functional = functional;
    if (cfg.grid.empty() || grid != "8,16,32,64") cfg.grid = parse_grid(grid);
    if (slack != 2.0 || cfg.slack <= 0) cfg.slack = slack;
    cfg.workers = workers;
    if (!outdir.empty() && outdir != ".") cfg.outdir = outdir;
    if (cfg.outdir.empty()) cfg.outdir = outdir;
    if (convention != "setwise" || cfg.boundary_convention.empty())
      cfg.boundary_convention = convention;
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--surface", o.surface, "surface preset");
  cmd->add_option("--seed", o.seed, "seed class literal");
  cmd->add_option("--gamma-mod", o.gamma_mod, "homology kernel modulus (0 = full group)");
  cmd->add_option("--functional", o.functional, "functional spec (i:<multicurve> | triweight)");
  cmd->add_option("--grid", o.grid, "comma list or start:stop:xfactor");
  cmd->add_option("--slack", o.slack, "BFS expansion slack factor");
  cmd->add_option("--workers", o.workers, "worker threads");
  cmd->add_option("--outdir", o.outdir, "output directory");
  cmd->add_option("--boundary-convention", o.convention, "setwise | preserve");
  cmd->add_option("--config", o.config_path, "flat key=value config file");
}

int census(const CommonOpts& o, const std::string& kind) {
  ExperimentConfig cfg = o.to_config(kind);
  if (cfg.seed.empty()) cfg.seed = kind == "arcs" ? "0:0:a" : "a";
  ExperimentResult r = run_count(cfg);
  write_result(r, cfg.outdir);
  std::cout << "count=" << r.counts.back() << "\n";
  std::cout << "normalized=" << r.normalized.back() << "\n";
  if (r.has_fit) std::cout << "exponent=" << r.fit.slope << "\n";
  std::cout << "saturated=" << (r.saturated ? "true" : "false") << "\n";
  std::cerr << "wall_time=" << r.wall_time << "\n";
  if (!r.saturated) {
    std::cerr << "error=inconclusive message=\"BFS not saturated at slack " << cfg.slack << "\"\n";
    return 2;
  }
  return 0;
}

int mlz_ball(const CommonOpts& o) {
  ExperimentConfig cfg = o.to_config("mlz");
  RibbonSurface s = make_preset(cfg.surface);
  DTChart chart = make_chart(s);
  Functional F = parse_functional(s, cfg.functional);
  BallCount bc = thurston_ball_estimate(
      chart, [&F](const MultiClass& m) { return F.eval(m); }, cfg.grid);
  bc.functional_desc = F.description();
  write_ballcount(bc, cfg.outdir);
  std::cout << "mthu=" << bc.normalized.back() << "\n";
  std::cout << "cauchy_gap=" << bc.cauchy_gap << "\n";
  return 0;
}

int check_lemma31(const CommonOpts& o) {
  RibbonSurface s = make_preset(o.surface);
  auto gens = preset_generators(s, o.convention);
  auto seeds = preset_arc_system(s);
  DTChart chart = make_chart(s);
  std::mt19937_64 rng(kRngSeed);

  long long eq_fail = 0, ineq_fail = 0;
  const int kArcs = 60, kMus = 10;
  for (int i = 0; i < kArcs; ++i) {
    ArcClass a = random_arc(s, gens, seeds, rng, 6);
    MultiClass am = make_multiarc({{a, Rational(1)}});
    MultiClass im = make_multicurve({{i_map(s, a), Rational(1)}});
    for (int j = 0; j < kMus; ++j) {
      MultiClass mu = random_simple_multicurve(chart, rng);
      if (i_multi(s, im, mu) != Rational(2) * i_multi(s, am, mu)) ++eq_fail;
      MultiClass nu = random_multicurve(s, rng, 5);
      if (i_multi(s, im, nu) > Rational(2) * i_multi(s, am, nu)) ++ineq_fail;
    }
  }
  std::cout << "check=lemma31\n";
  std::cout << "pairs=" << kArcs * kMus << "\n";
  std::cout << "equality_failures=" << eq_fail << "\n";
  std::cout << "inequality_failures=" << ineq_fail << "\n";
  std::cout << "tolerance=0\n";
  bool ok = eq_fail == 0 && ineq_fail == 0;
  std::cout << "result=" << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int check_equivariance(const CommonOpts& o) {
  RibbonSurface s = make_preset(o.surface);
  auto gens = preset_generators(s, o.convention);
  auto seeds = preset_arc_system(s);
  std::mt19937_64 rng(kRngSeed);

  long long fail = 0;
  const int kTrials = 200;
  for (int i = 0; i < kTrials; ++i) {
    ArcClass a = seeds[rng() % seeds.size()];
    size_t len = 1 + rng() % 20;
    ArcClass fa = a;
    CurveClass fia = i_map(s, a);
    for (size_t j = 0; j < len; ++j) {
      const MCGAutomorphism& g = gens[rng() % gens.size()];
      fa = apply(s, g, fa);
      fia = apply(s, g, fia);
    }
    if (!(i_map(s, fa) == fia)) ++fail;
  }
  std::cout << "check=equivariance\n";
  std::cout << "words=" << kTrials << "\n";
  std::cout << "failures=" << fail << "\n";
  std::cout << "tolerance=0\n";
  std::cout << "result=" << (fail == 0 ? "PASS" : "FAIL") << "\n";
  return fail == 0 ? 0 : 1;
}

int check_fibers(const CommonOpts& o) {
  ExperimentConfig cfg = o.to_config("arcs");
  if (cfg.seed.empty()) cfg.seed = "0:0:a";
  if (cfg.grid.empty()) cfg.grid = {4, 8, 16};
  cfg.store_members = true;
  ExperimentResult r = run_count(cfg);
  RibbonSurface s = make_preset(cfg.surface);
  Functional F = parse_functional(s, cfg.functional);
  FiberStats st = fiber_statistics(s, r.ball, F);
  std::cout << "check=fibers\n";
  std::cout << "k=" << st.k_estimate << "\n";
  std::cout << "interior_images=" << st.interior_images << "\n";
  std::cout << "violations=" << st.violations << "\n";
  std::cout << "margin=" << st.margin << "\n";
  std::cout << "tolerance=0\n";
  bool ok = st.violations == 0;
  std::cout << "result=" << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int check_relation(const CommonOpts& o) {
  ExperimentConfig arc_cfg = o.to_config("arcs");
  if (arc_cfg.seed.empty()) arc_cfg.seed = "0:0:a";
  RibbonSurface s = make_preset(arc_cfg.surface);

  // fiber constant from a small stored run
  ExperimentConfig small = arc_cfg;
  small.grid = {4, 8, 16};
  small.store_members = true;
  ExperimentResult rs = run_count(small);
  Functional F = parse_functional(s, arc_cfg.functional);
  FiberStats st = fiber_statistics(s, rs.ball, F);

  ExperimentResult ra = run_count(arc_cfg);
  ExperimentConfig curve_cfg = arc_cfg;
  curve_cfg.kind = "curves";
  curve_cfg.seed = format_word(i_map(s, parse_arc(s, arc_cfg.seed)).canonical);
  curve_cfg.grid.clear();
  for (long long L : arc_cfg.grid) curve_cfg.grid.push_back(2 * L);
  ExperimentResult rc = run_count(curve_cfg);

  RelationCheck rel = constant_relation_check(ra, rc, st.k_estimate);
  std::cout << "check=relation\n";
  std::cout << "k=" << st.k_estimate << "\n";
  std::cout << "L=" << rel.arc_L << "\n";
  std::cout << "arc_count=" << rel.arc_count << "\n";
  std::cout << "curve_count=" << rel.curve_count << "\n";
  std::cout << "residual=" << rel.residual << "\n";
  std::cout << "tolerance=0.10\n";
  bool ok = rel.residual <= 0.10;
  std::cout << "result=" << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int check_mu_independence(const CommonOpts& o) {
  if (o.functional2.empty())
    throw std::invalid_argument("check-mu-independence requires --functional2");
  ExperimentConfig c1 = o.to_config("arcs");
  if (c1.seed.empty()) c1.seed = "0:0:a";
  ExperimentConfig c2 = c1;
  c2.functional = o.functional2;
  ExperimentResult r1 = run_count(c1);
  ExperimentResult r2 = run_count(c2);

  RibbonSurface s = make_preset(c1.surface);
  DTChart chart = make_chart(s);
  Functional F1 = parse_functional(s, c1.functional);
  Functional F2 = parse_functional(s, c2.functional);
  BallCount m1 = thurston_ball_estimate(
      chart, [&F1](const MultiClass& m) { return F1.eval(m); }, c1.grid);
  BallCount m2 = thurston_ball_estimate(
      chart, [&F2](const MultiClass& m) { return F2.eval(m); }, c2.grid);
  if (m1.cauchy_gap > 0.05 || m2.cauchy_gap > 0.05)
    throw InconclusiveError("lattice ball estimate cauchy gap exceeds 0.05");

  MuIndependence mi = mu_independence_check(r1, m1, r2, m2);
  std::cout << "check=mu-independence\n";
  std::cout << "ratio1=" << mi.ratio1 << "\n";
  std::cout << "ratio2=" << mi.ratio2 << "\n";
  std::cout << "gap=" << mi.gap << "\n";
  std::cout << "tolerance=0.10\n";
  bool ok = mi.gap <= 0.10;
  std::cout << "result=" << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int info(const CommonOpts& o) {
  RibbonSurface s = make_preset(o.surface);
  SurfaceInvariants inv = invariants(s);
  std::cout << "g=" << s.genus << " r=" << s.boundary_count << " double_genus=" << inv.double_genus
            << " exponent=" << inv.growth_exponent << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counting experiments for arcs and curves on one-vertex ribbon surfaces"};
  app.require_subcommand(1);
  CommonOpts o;

  auto* c_arcs = app.add_subcommand("census-arcs", "orbit-ball census of an arc class");
  auto* c_curves = app.add_subcommand("census-curves", "orbit-ball census of a curve class");
  auto* c_mlz = app.add_subcommand("mlz-ball", "integral simple multicurve lattice counts");
  auto* c_lemma = app.add_subcommand("check-lemma31", "doubling (in)equality spot checks");
  auto* c_equi = app.add_subcommand("check-equivariance", "arc-to-curve equivariance spot checks");
  auto* c_fib = app.add_subcommand("check-fibers", "fiber constancy of the arc-to-curve map");
  auto* c_rel = app.add_subcommand("check-relation", "arc/curve count relation residual");
  auto* c_mu = app.add_subcommand("check-mu-independence", "constant independence of the functional");
  auto* c_info = app.add_subcommand("info", "surface invariants");
  for (auto* cmd : {c_arcs, c_curves, c_mlz, c_lemma, c_equi, c_fib, c_rel, c_mu, c_info})
    add_common(cmd, o);
  c_mu->add_option("--functional2", o.functional2, "second functional spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  auto guard = [](auto fn) {
    try {
      return fn();
    } catch (const InconclusiveError& e) {
      std::cerr << "error=inconclusive message=\"" << e.what() << "\"\n";
      return 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error=invalid message=\"" << e.what() << "\"\n";
      return 1;
    } catch (const std::exception& e) {
      std::cerr << "error=internal message=\"" << e.what() << "\"\n";
      return 1;
    }
  };

  if (c_arcs->parsed()) return guard([&] { return census(o, "arcs"); });
  if (c_curves->parsed()) return guard([&] { return census(o, "curves"); });
  if (c_mlz->parsed()) return guard([&] { return mlz_ball(o); });
  if (c_lemma->parsed()) return guard([&] { return check_lemma31(o); });
  if (c_equi->parsed()) return guard([&] { return check_equivariance(o); });
  if (c_fib->parsed()) return guard([&] { return check_fibers(o); });
  if (c_rel->parsed()) return guard([&] { return check_relation(o); });
  if (c_mu->parsed()) return guard([&] { return check_mu_independence(o); });
  if (c_info->parsed()) return guard([&] { return info(o); });
  return 1;
}
