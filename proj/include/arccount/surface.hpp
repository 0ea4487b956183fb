#pragma once
#include <array>
#include <vector>

#include "arccount/words.hpp"

namespace arccount {

struct SurfaceInvariants {
  int double_genus = 0;     // 2g + r - 1
  int growth_exponent = 0;  // 6g - 6 + 2r
  bool is_pair_of_pants = false;
};

// One-vertex ribbon graph model of the compact oriented surface S_{g,r}, r > 0.
// The fundamental group is free on the edges; ribbon_order lists the 2n
// oriented edge-germs counterclockwise around the unique vertex. Boundary
// cycles follow boundary_next(g) = prev_in_ribbon_order(inverse(g)).
struct RibbonSurface {
  std::string name;
  int genus = 0;
  int boundary_count = 0;
  int edge_count = 0;  // n = 2g + r - 1 free generators
  std::vector<Letter> ribbon_order;
  std::vector<Word> boundary_words;

  int letter_count() const { return 2 * edge_count; }

  // Position of each germ in ribbon_order.
  std::array<int, 2 * kMaxGenerators> germ_pos{};

  // Cyclic orientation of three pairwise distinct germs: +1 when walking
  // counterclockwise from x meets y before z.
  int germ_orient(Letter x, Letter y, Letter z) const {
    int px = germ_pos[x], py = germ_pos[y], pz = germ_pos[z];
    int m = letter_count();
    int dy = (py - px + m) % m;
    int dz = (pz - px + m) % m;
    return dy < dz ? 1 : -1;
  }

  bool valid_boundary_index(int i) const { return i >= 0 && i < boundary_count; }
};

// Presets: S_1_1, S_0_4, S_1_2, and S_0_3 (constructible, rejected by counting).
RibbonSurface make_preset(const std::string& name);

SurfaceInvariants invariants(const RibbonSurface& s);

// Boundary cycles of an arbitrary ribbon order (for validation and tests).
std::vector<Word> boundary_cycles(const std::vector<Letter>& ribbon_order);

}  // namespace arccount
