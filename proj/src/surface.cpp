#include "arccount/surface.hpp"

#include <algorithm>
#include <stdexcept>

namespace arccount {

std::vector<Word> boundary_cycles(const std::vector<Letter>& ribbon_order) {
  const int m = static_cast<int>(ribbon_order.size());
  std::vector<int> pos(2 * kMaxGenerators, -1);
  for (int i = 0; i < m; ++i) {
    if (pos[ribbon_order[i]] != -1)
      throw std::invalid_argument("ribbon order repeats a germ");
    pos[ribbon_order[i]] = i;
  }
  for (int i = 0; i < m; ++i)
    if (pos[inverse_letter(ribbon_order[i])] == -1)
      throw std::invalid_argument("ribbon order misses an inverse germ");

  auto next = [&](Letter g) {
    int p = pos[inverse_letter(g)];
    return ribbon_order[(p - 1 + m) % m];
  };

  std::vector<bool> seen(2 * kMaxGenerators, false);
  std::vector<Word> out;
  for (int i = 0; i < m; ++i) {
    Letter g = ribbon_order[i];
    if (seen[g]) continue;
    Word cycle;
    Letter cur = g;
    do {
      seen[cur] = true;
      cycle.push_back(static_cast<char>(cur));
      cur = next(cur);
    } while (cur != g);
    out.push_back(cycle);
  }
  return out;
}

namespace {

RibbonSurface build(const std::string& name, int genus, int r,
                    std::vector<Letter> ribbon) {
  RibbonSurface s;
  s.name = name;
  s.genus = genus;
  s.boundary_count = r;
  s.edge_count = static_cast<int>(ribbon.size()) / 2;
  s.ribbon_order = std::move(ribbon);
  s.boundary_words = boundary_cycles(s.ribbon_order);

  if (s.edge_count != 2 * genus + r - 1)
    throw std::invalid_argument("preset edge count mismatch");
  if (static_cast<int>(s.boundary_words.size()) != r)
    throw std::invalid_argument("preset " + name + " has wrong boundary cycle count");
  size_t total = 0;
  for (const auto& w : s.boundary_words) {
    if (w.empty() || !is_cyclically_reduced(w))
      throw std::invalid_argument("boundary word not cyclically reduced");
    total += w.size();
  }
  if (total != s.ribbon_order.size())
    throw std::invalid_argument("boundary words do not cover all germs");

  s.germ_pos.fill(-1);
  for (size_t i = 0; i < s.ribbon_order.size(); ++i)
    s.germ_pos[s.ribbon_order[i]] = static_cast<int>(i);
  return s;
}

constexpr Letter A = 0, Ai = 1, B = 2, Bi = 3, C = 4, Ci = 5;

}  // namespace

RibbonSurface make_preset(const std::string& name) {
  if (name == "S_1_1") return build(name, 1, 1, {A, B, Ai, Bi});
  if (name == "S_0_4") return build(name, 0, 4, {A, Ai, B, Bi, C, Ci});
  if (name == "S_1_2") return build(name, 1, 2, {A, B, Ai, Bi, C, Ci});
  if (name == "S_0_3") return build(name, 0, 3, {A, Ai, B, Bi});
  throw std::invalid_argument("unknown preset \"" + name + "\"");
}

SurfaceInvariants invariants(const RibbonSurface& s) {
  SurfaceInvariants inv;
  inv.double_genus = 2 * s.genus + s.boundary_count - 1;
  inv.growth_exponent = 6 * s.genus - 6 + 2 * s.boundary_count;
  inv.is_pair_of_pants = (s.genus == 0 && s.boundary_count == 3);
  return inv;
}

}  // namespace arccount
