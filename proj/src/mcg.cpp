#include "arccount/mcg.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <thread>
#include <unordered_set>
#include <utility>

namespace arccount {
namespace {

// images[] substitution table covering inverse letters too.
std::array<Word, 2 * kMaxGenerators> subst_table(const std::vector<Word>& images) {
  std::array<Word, 2 * kMaxGenerators> t;
  for (size_t i = 0; i < images.size(); ++i) {
    t[2 * i] = images[i];
    t[2 * i + 1] = inverse_word(images[i]);
  }
  return t;
}

Word subst(const std::array<Word, 2 * kMaxGenerators>& table, const Word& w) {
  Word out;
  out.reserve(w.size() * 3 + 4);
  for (Letter l : w)
    for (Letter x : table[l]) {
      if (!out.empty() && out.back() == inverse_letter(x))
        out.pop_back();
      else
        out.push_back(x);
    }
  return out;
}

Word parse(const RibbonSurface& s, const std::string& text) { return parse_word(text, s.edge_count); }

MCGAutomorphism compose(const RibbonSurface& s, const std::string& label,
                        const MCGAutomorphism& f, const MCGAutomorphism& g) {
  std::vector<Word> images, inv_images;
  for (int i = 0; i < s.edge_count; ++i) {
    images.push_back(apply_word(f, g.images[i]));
    inv_images.push_back(apply_word(inverse(s, g), f.inverse_images[i]));
  }
  return make_automorphism(s, label, std::move(images), std::move(inv_images));
}

using Mat = std::array<uint8_t, 9>;

Mat identity_mat(int dim, int mod) {
  Mat m{};
  for (int i = 0; i < dim; ++i) m[i * dim + i] = static_cast<uint8_t>(1 % mod);
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b, int dim, int mod) {
  Mat out{};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      int acc = 0;
      for (int k = 0; k < dim; ++k) acc += int(a[i * dim + k]) * int(b[k * dim + j]);
      out[i * dim + j] = static_cast<uint8_t>(acc % mod);
    }
  return out;
}

int det_mod(const Mat& m, int dim, int mod) {
  long long d = 0;
  if (dim == 1) d = m[0];
  if (dim == 2) d = (long long)m[0] * m[3] - (long long)m[1] * m[2];
  if (dim == 3)
    d = (long long)m[0] * m[4] * m[8] + (long long)m[1] * m[5] * m[6] +
        (long long)m[2] * m[3] * m[7] - (long long)m[2] * m[4] * m[6] -
        (long long)m[1] * m[3] * m[8] - (long long)m[0] * m[5] * m[7];
  return static_cast<int>(((d % mod) + mod) % mod);
}

// 128-bit state fingerprint; collision odds are negligible at desk scale.
struct H128 {
  uint64_t a = 0, b = 0;
  bool operator==(const H128& o) const { return a == o.a && b == o.b; }
};
struct H128Hash {
  size_t operator()(const H128& h) const { return static_cast<size_t>(h.a); }
};

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Hasher {
  uint64_t a = 0x243f6a8885a308d3ull;
  uint64_t b = 0x13198a2e03707344ull;
  void add(uint64_t v) {
    a = mix64(a ^ v);
    b = mix64(b + v * 0x9e3779b97f4a7c15ull + 1);
  }
  void add_word(const Word& w) {
    add(w.size());
    uint64_t acc = 0;
    int k = 0;
    for (unsigned char c : w) {
      acc = (acc << 8) | c;
      if (++k == 8) {
        add(acc);
        acc = 0;
        k = 0;
      }
    }
    if (k) add(acc + (uint64_t(k) << 56));
  }
  H128 done() const { return {mix64(a), mix64(b + 0x9216d5d98979fb1bull)}; }
};

template <class C>
struct ClassTraits;

template <>
struct ClassTraits<CurveClass> {
  static void hash_into(Hasher& h, const CurveClass& x) {
    h.add(1);
    h.add_word(x.canonical);
  }
  static void store(OrbitBall& b, const CurveClass& x) { b.curve_members.push_back(x); }
  static void check_seed(const CurveClass& x) {
    if (x.canonical.empty() || x.peripheral) throw std::invalid_argument("inessential seed");
  }
};

template <>
struct ClassTraits<ArcClass> {
  static void hash_into(Hasher& h, const ArcClass& x) {
    h.add(2);
    h.add(static_cast<uint64_t>(x.s));
    h.add(static_cast<uint64_t>(x.e));
    h.add_word(x.w);
  }
  static void store(OrbitBall& b, const ArcClass& x) { b.arc_members.push_back(x); }
  static void check_seed(const ArcClass& x) {
    if (x.s == x.e && x.w.empty()) throw std::invalid_argument("inessential seed");
  }
};

template <class C>
H128 state_hash(const C& cls, const Mat& mat, int matbytes) {
  Hasher h;
  ClassTraits<C>::hash_into(h, cls);
  for (int i = 0; i < matbytes; ++i) h.add(mat[i]);
  return h.done();
}

template <class C>
OrbitBall single_run(const RibbonSurface& s, const std::vector<MCGAutomorphism>& gens,
                     const C& seed, const SubgroupSpec& gamma,
                     const std::function<long long(const C&)>& F, long long L, double slack,
                     int workers, bool store_members) {
  OrbitBall ball;
  ball.L = L;
  ball.slack = slack;
  const bool proper = !gamma.is_full();
  const int dim = proper ? gamma.dim : 0;
  const int mod = proper ? gamma.modulus : 2;
  const int matbytes = proper ? dim * dim : 0;
  const Mat id = identity_mat(proper ? dim : 1, mod);
  const double expand_bound = slack * static_cast<double>(L);

  std::unordered_set<H128, H128Hash> visited;
  std::vector<long long> hist(static_cast<size_t>(L) + 1, 0);

  struct Node {
    C cls;
    Mat mat;
  };
  auto register_member = [&](const C& cls, long long f) {
    hist[static_cast<size_t>(f)]++;
    if (store_members) {
      ClassTraits<C>::store(ball, cls);
      ball.member_F.push_back(f);
    }
  };

  std::vector<Node> layer;
  {
    long long f0 = F(seed);
    if (f0 <= 0) throw std::runtime_error("non-positive functional value on an essential class");
    visited.insert(state_hash(seed, id, matbytes));
    if (f0 <= L) register_member(seed, f0);
    if (static_cast<double>(f0) <= expand_bound) layer.push_back({seed, id});
  }

  struct Cand {
    C cls;
    Mat mat;
    long long f;
    H128 h;
  };

  // Layer phases: parallel expand (no F), sequential dedup in the canonical
  // candidate order, parallel F over fresh states only, sequential commit.
  // Workers fill contiguous slices, so the merged candidate order equals the
  // sequential (node, generator) order for every worker count, and F is a
  // pure function, so results are worker-count invariant.
  auto run_slices = [&](size_t total, auto&& body) {
    int nw = std::max(1, std::min<int>(workers, static_cast<int>(total)));
    size_t chunk = (total + nw - 1) / nw;
    if (nw == 1) {
      body(0, total, 0);
      return static_cast<size_t>(1);
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) {
      size_t lo = std::min(total, w * chunk);
      size_t hi = std::min(total, lo + chunk);
      pool.emplace_back([&body, lo, hi, w] { body(lo, hi, static_cast<size_t>(w)); });
    }
    for (auto& t : pool) t.join();
    return static_cast<size_t>(nw);
  };

  while (!layer.empty()) {
    std::vector<std::vector<Cand>> parts(
        static_cast<size_t>(std::max(1, std::min<int>(workers, static_cast<int>(layer.size())))));
    run_slices(layer.size(), [&](size_t lo, size_t hi, size_t w) {
      auto& out = parts[w];
      out.reserve((hi - lo) * gens.size());
      for (size_t i = lo; i < hi; ++i)
        for (size_t gi = 0; gi < gens.size(); ++gi) {
          Cand c{apply(s, gens[gi], layer[i].cls),
                 proper ? mat_mul(gamma.rep[gi], layer[i].mat, dim, mod) : id, 0, {}};
          c.h = state_hash(c.cls, c.mat, matbytes);
          out.push_back(std::move(c));
        }
    });

    std::vector<Cand> fresh;
    for (auto& part : parts)
      for (auto& c : part)
        if (visited.insert(c.h).second) fresh.push_back(std::move(c));

    run_slices(fresh.size(), [&](size_t lo, size_t hi, size_t) {
      for (size_t i = lo; i < hi; ++i) fresh[i].f = F(fresh[i].cls);
    });

    std::vector<Node> next;
    for (auto& c : fresh) {
      if (c.f <= 0) throw std::runtime_error("non-positive functional value on an essential class");
      if ((!proper || c.mat == id) && c.f <= L) register_member(c.cls, c.f);
      if (static_cast<double>(c.f) <= expand_bound) next.push_back({std::move(c.cls), c.mat});
    }
    layer = std::move(next);
  }

  ball.explored_states = static_cast<long long>(visited.size());
  ball.counts_by_level.resize(static_cast<size_t>(L), 0);
  long long acc = 0;
  for (long long l = 1; l <= L; ++l) {
    acc += hist[static_cast<size_t>(l)];
    ball.counts_by_level[static_cast<size_t>(l) - 1] = acc;
  }
  return ball;
}

template <class C>
OrbitBall orbit_ball_impl(const RibbonSurface& s, const std::vector<MCGAutomorphism>& gens,
                          const C& seed, const SubgroupSpec& gamma,
                          const std::function<long long(const C&)>& F, long long L,
                          const OrbitBallConfig& cfg) {
  if (gens.empty()) throw std::invalid_argument("empty generator list");
  if (L < 0) throw std::invalid_argument("negative bound");
  if (cfg.slack < 1.0) throw std::invalid_argument("slack must be >= 1");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (!gamma.is_full() && gamma.rep.size() != gens.size())
    throw std::invalid_argument("subgroup representation does not match generator list");
  if (!gamma.is_full() && gamma.dim != s.edge_count)
    throw std::invalid_argument("subgroup representation dimension mismatch");
  ClassTraits<C>::check_seed(seed);

  auto t0 = std::chrono::steady_clock::now();
  OrbitBall ball = single_run(s, gens, seed, gamma, F, L, cfg.slack, cfg.workers, cfg.store_members);
  ball.saturated = true;
  if (cfg.check_saturation) {
    OrbitBall wide = single_run(s, gens, seed, gamma, F, L, cfg.slack * 2, cfg.workers, false);
    ball.saturated = wide.counts_by_level == ball.counts_by_level;
  }
  ball.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ball.surface = s.name;
  ball.gamma_desc = gamma.description();
  return ball;
}

}  // namespace

Word apply_word(const MCGAutomorphism& f, const Word& w) { return subst(subst_table(f.images), w); }

MCGAutomorphism make_automorphism(const RibbonSurface& s, const std::string& label,
                                  std::vector<Word> images, std::vector<Word> inverse_images) {
  if (static_cast<int>(images.size()) != s.edge_count ||
      static_cast<int>(inverse_images.size()) != s.edge_count)
    throw std::invalid_argument("generator image count mismatch");
  MCGAutomorphism f;
  f.label = label;
  f.images = std::move(images);
  f.inverse_images = std::move(inverse_images);
  for (auto* v : {&f.images, &f.inverse_images})
    for (Word& w : *v) w = free_reduce(w);

  auto fwd = subst_table(f.images);
  auto bwd = subst_table(f.inverse_images);
  for (int i = 0; i < s.edge_count; ++i) {
    Word gen(1, positive_letter(i));
    if (subst(fwd, subst(bwd, gen)) != gen || subst(bwd, subst(fwd, gen)) != gen)
      throw std::invalid_argument("inverse_images do not invert images");
  }

  f.boundary_perm.assign(s.boundary_count, -1);
  f.boundary_conj.assign(s.boundary_count, Word());
  std::vector<bool> hit(s.boundary_count, false);
  for (int i = 0; i < s.boundary_count; ++i) {
    Word u = subst(fwd, s.boundary_words[i]);
    Word p;
    while (u.size() >= 2 && u.front() == inverse_letter(u.back())) {
      p.push_back(u.front());
      u = u.substr(1, u.size() - 2);
    }
    if (u.empty()) throw std::invalid_argument("boundary word image is trivial");
    bool found = false;
    for (int j = 0; j < s.boundary_count && !found; ++j) {
      const Word& bj = s.boundary_words[j];
      if (bj.size() != u.size()) continue;
      for (size_t k = 0; k < bj.size(); ++k)
        if (rotate(bj, k) == u) {
          f.boundary_perm[i] = j;
          f.boundary_conj[i] = concat_reduce(p, inverse_word(bj.substr(0, k)));
          hit[j] = true;
          found = true;
          break;
        }
    }
    if (!found)
      throw std::invalid_argument("boundary image is not an un-inverted conjugate of a boundary word");
  }
  for (bool h : hit)
    if (!h) throw std::invalid_argument("boundary action is not a permutation");
  return f;
}

MCGAutomorphism inverse(const RibbonSurface& s, const MCGAutomorphism& f) {
  std::string label = f.label;
  if (!label.empty() && label.back() == '\'')
    label.pop_back();
  else
    label += '\'';
  return make_automorphism(s, label, f.inverse_images, f.images);
}

std::vector<MCGAutomorphism> preset_generators(const RibbonSurface& s, const std::string& convention) {
  if (convention != "setwise" && convention != "preserve")
    throw std::invalid_argument("unknown boundary convention: " + convention);
  if (invariants(s).is_pair_of_pants) throw std::invalid_argument("pair of pants excluded");

  auto mk = [&](const std::string& label, std::initializer_list<const char*> img,
                std::initializer_list<const char*> inv) {
    std::vector<Word> a, b;
    for (const char* t : img) a.push_back(parse(s, t));
    for (const char* t : inv) b.push_back(parse(s, t));
    return make_automorphism(s, label, std::move(a), std::move(b));
  };

  std::vector<MCGAutomorphism> out;
  if (s.name == "S_1_1") {
    out.push_back(mk("Ta", {"a", "ba"}, {"a", "ba'"}));
    out.push_back(mk("Tb", {"ab'", "b"}, {"ab", "b"}));
  } else if (s.name == "S_0_4") {
    MCGAutomorphism hab = mk("Hab", {"aba'", "a", "c"}, {"b", "b'ab", "c"});
    MCGAutomorphism hbc = mk("Hbc", {"a", "bcb'", "b"}, {"a", "c", "c'bc"});
    if (convention == "setwise") {
      out.push_back(hab);
      out.push_back(hbc);
    } else {
      out.push_back(compose(s, "Tab", hab, hab));
      out.push_back(compose(s, "Tbc", hbc, hbc));
    }
  } else if (s.name == "S_1_2") {
    out.push_back(mk("Ta", {"a", "ab", "c"}, {"a", "a'b", "c"}));
    out.push_back(mk("Tb", {"ab'", "b", "c"}, {"ab", "b", "c"}));
    out.push_back(mk("Tbc", {"c'b'a", "b", "c"}, {"bca", "b", "c"}));
  } else {
    throw std::invalid_argument("no generating set for preset " + s.name);
  }
  size_t n = out.size();
  for (size_t i = 0; i < n; ++i) out.push_back(inverse(s, out[i]));
  return out;
}

CurveClass apply(const RibbonSurface& s, const MCGAutomorphism& f, const CurveClass& x) {
  return canonical_curve(s, apply_word(f, x.canonical));
}

ArcClass apply(const RibbonSurface& s, const MCGAutomorphism& f, const ArcClass& x) {
  Word mid = apply_word(f, x.w);
  Word w2 = concat_reduce(inverse_word(f.boundary_conj[x.s]), concat_reduce(mid, f.boundary_conj[x.e]));
  return canonical_arc(s, f.boundary_perm[x.s], f.boundary_perm[x.e], w2);
}

MultiClass apply(const RibbonSurface& s, const MCGAutomorphism& f, const MultiClass& x) {
  if (x.kind == MultiClass::Kind::curve) {
    std::vector<std::pair<CurveClass, Rational>> items;
    for (const auto& [c, wt] : x.curves) items.emplace_back(apply(s, f, c), wt);
    return make_multicurve(std::move(items));
  }
  std::vector<std::pair<ArcClass, Rational>> items;
  for (const auto& [a, wt] : x.arcs) items.emplace_back(apply(s, f, a), wt);
  return make_multiarc(std::move(items));
}

std::string SubgroupSpec::description() const {
  if (is_full()) return "full";
  return "mod-" + std::to_string(modulus) + " homology kernel";
}

SubgroupSpec full_group() { return SubgroupSpec{}; }

SubgroupSpec homology_kernel(const RibbonSurface& s, const std::vector<MCGAutomorphism>& gens,
                             int modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
  if (modulus > 255) throw std::invalid_argument("modulus too large");
  SubgroupSpec spec;
  spec.modulus = modulus;
  spec.dim = s.edge_count;
  for (const auto& g : gens) {
    Mat m{};
    for (int j = 0; j < s.edge_count; ++j) {
      std::array<int, kMaxGenerators> exp{};
      for (Letter l : g.images[j]) exp[generator_of(l)] += is_positive(l) ? 1 : -1;
      for (int i = 0; i < s.edge_count; ++i)
        m[i * spec.dim + j] = static_cast<uint8_t>(((exp[i] % modulus) + modulus) % modulus);
    }
    if (std::gcd(det_mod(m, spec.dim, modulus), modulus) != 1)
      throw std::invalid_argument("generator image is not invertible mod " + std::to_string(modulus));
    spec.rep.push_back(m);
  }
  return spec;
}

bool in_subgroup(const SubgroupSpec& gamma, const std::vector<int>& generator_indices) {
  if (gamma.is_full()) return true;
  Mat m = identity_mat(gamma.dim, gamma.modulus);
  for (int idx : generator_indices) {
    if (idx < 0 || static_cast<size_t>(idx) >= gamma.rep.size())
      throw std::invalid_argument("generator index out of range");
    m = mat_mul(gamma.rep[static_cast<size_t>(idx)], m, gamma.dim, gamma.modulus);
  }
  return m == identity_mat(gamma.dim, gamma.modulus);
}

OrbitBall orbit_ball(const RibbonSurface& s, const std::vector<MCGAutomorphism>& gens,
                     const CurveClass& seed, const SubgroupSpec& gamma, const CurveFunctional& F,
                     long long L, const OrbitBallConfig& cfg) {
  OrbitBall b = orbit_ball_impl<CurveClass>(s, gens, seed, gamma, F, L, cfg);
  b.seed_key = seed.key();
  return b;
}

OrbitBall orbit_ball(const RibbonSurface& s, const std::vector<MCGAutomorphism>& gens,
                     const ArcClass& seed, const SubgroupSpec& gamma, const ArcFunctional& F,
                     long long L, const OrbitBallConfig& cfg) {
  OrbitBall b = orbit_ball_impl<ArcClass>(s, gens, seed, gamma, F, L, cfg);
  b.seed_key = seed.key();
  return b;
}

}  // namespace arccount
