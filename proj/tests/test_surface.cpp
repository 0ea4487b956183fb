#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "arccount/surface.hpp"

using namespace arccount;

TEST_CASE("one-holed torus preset") {
  RibbonSurface s = make_preset("S_1_1");
  CHECK(s.genus == 1);
  CHECK(s.boundary_count == 1);
  CHECK(s.edge_count == 2);
  CHECK(s.letter_count() == 4);
  REQUIRE(s.boundary_words.size() == 1);
  CHECK(format_word(s.boundary_words[0]) == "aba'b'");
  SurfaceInvariants inv = invariants(s);
  CHECK(inv.double_genus == 2);
  CHECK(inv.growth_exponent == 2);
  CHECK_FALSE(inv.is_pair_of_pants);
}

TEST_CASE("four-holed sphere preset") {
  RibbonSurface s = make_preset("S_0_4");
  CHECK(s.genus == 0);
  CHECK(s.boundary_count == 4);
  CHECK(s.edge_count == 3);
  REQUIRE(s.boundary_words.size() == 4);
  CHECK(format_word(s.boundary_words[0]) == "a");
  CHECK(format_word(s.boundary_words[1]) == "a'c'b'");
  CHECK(format_word(s.boundary_words[2]) == "b");
  CHECK(format_word(s.boundary_words[3]) == "c");
  SurfaceInvariants inv = invariants(s);
  CHECK(inv.double_genus == 3);
  CHECK(inv.growth_exponent == 2);
  CHECK_FALSE(inv.is_pair_of_pants);
}

TEST_CASE("two-holed torus preset") {
  RibbonSurface s = make_preset("S_1_2");
  CHECK(s.genus == 1);
  CHECK(s.boundary_count == 2);
  CHECK(s.edge_count == 3);
  REQUIRE(s.boundary_words.size() == 2);
  CHECK(format_word(s.boundary_words[0]) == "aba'c'b'");
  CHECK(format_word(s.boundary_words[1]) == "c");
  SurfaceInvariants inv = invariants(s);
  CHECK(inv.double_genus == 3);   // 2g + r - 1
  CHECK(inv.growth_exponent == 4);  // 6g - 6 + 2r
}

TEST_CASE("pair of pants is constructible but flagged") {
  RibbonSurface s = make_preset("S_0_3");
  CHECK(s.genus == 0);
  CHECK(s.boundary_count == 3);
  CHECK(s.edge_count == 2);
  CHECK(invariants(s).is_pair_of_pants);
  CHECK(invariants(s).growth_exponent == 0);
}

TEST_CASE("unknown preset throws") {
  CHECK_THROWS_AS(make_preset("S_2_1"), std::invalid_argument);
  CHECK_THROWS_AS(make_preset(""), std::invalid_argument);
}

TEST_CASE("ribbon order is a permutation of the germs") {
  for (const char* name : {"S_1_1", "S_0_4", "S_1_2", "S_0_3"}) {
    RibbonSurface s = make_preset(name);
    REQUIRE(static_cast<int>(s.ribbon_order.size()) == s.letter_count());
    std::set<Letter> seen(s.ribbon_order.begin(), s.ribbon_order.end());
    CHECK(static_cast<int>(seen.size()) == s.letter_count());
    for (int i = 0; i < s.letter_count(); ++i)
      CHECK(s.ribbon_order[static_cast<size_t>(s.germ_pos[i])] == i);
  }
}

TEST_CASE("boundary cycles recompute the stored boundary words") {
  for (const char* name : {"S_1_1", "S_0_4", "S_1_2", "S_0_3"}) {
    RibbonSurface s = make_preset(name);
    std::vector<Word> cyc = boundary_cycles(s.ribbon_order);
    REQUIRE(cyc.size() == s.boundary_words.size());
    // Same multiset of cyclic words; presets store them in cycle order.
    std::vector<Word> a, b;
    for (const Word& w : cyc) a.push_back(least_rotation(w));
    for (const Word& w : s.boundary_words) b.push_back(least_rotation(w));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    // Euler count: one vertex, n edges, r faces on S_{g,r} gives 1 - n = 2 - 2g - r.
    CHECK(1 - s.edge_count == 2 - 2 * s.genus - s.boundary_count);
  }
}

TEST_CASE("germ orientation is alternating and cyclic") {
  RibbonSurface s = make_preset("S_0_4");
  int m = s.letter_count();
  for (Letter x = 0; x < m; ++x)
    for (Letter y = 0; y < m; ++y)
      for (Letter z = 0; z < m; ++z) {
        if (x == y || y == z || x == z) continue;
        int o = s.germ_orient(x, y, z);
        CHECK((o == 1 || o == -1));
        CHECK(s.germ_orient(y, z, x) == o);   // cyclic invariance
        CHECK(s.germ_orient(x, z, y) == -o);  // transposition flips
      }
}
