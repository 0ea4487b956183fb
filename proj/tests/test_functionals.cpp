#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "arccount/functionals.hpp"
#include "arccount/intersect.hpp"

using namespace arccount;

namespace {
Word W(const std::string& t) { return parse_word(t, 3); }

CurveClass C(const RibbonSurface& s, const std::string& t) {
  return canonical_curve(s, parse_word(t, s.edge_count));
}
}  // namespace

TEST_CASE("intersection functionals evaluate bilinearly") {
  RibbonSurface t = make_preset("S_1_1");
  Functional F = parse_functional(t, "i:a+b");
  CHECK(F.scale == 1);
  CHECK_FALSE(F.triweight);
  CHECK(F.description() == "i:a+b");
  CHECK(F.eval(C(t, "a")) == i_curves(t, C(t, "a"), C(t, "b")));
  CHECK(F.eval(C(t, "ab")) == 2);
  CHECK(F.eval(canonical_arc(t, 0, 0, W("a"))) == 1);

  // Rational weights integerize through the scale.
  Functional H = parse_functional(t, "i:a+b/2");
  CHECK(H.scale == 2);
  // scale * (i(x,a) + i(x,b)/2) for x = ab: 2*(1 + 1/2) = 3.
  CHECK(H.eval(C(t, "ab")) == 3);
  CHECK(H.eval(C(t, "b")) == 2 * i_curves(t, C(t, "b"), C(t, "a")));

  Functional G = parse_functional(t, "i:3/2*a");
  CHECK(G.scale == 2);
  CHECK(G.eval(C(t, "b")) == 3);
}

TEST_CASE("functional parsing errors") {
  RibbonSurface t = make_preset("S_1_1");
  CHECK_THROWS_AS(parse_functional(t, "unknown"), std::invalid_argument);
  CHECK_THROWS_AS(parse_functional(t, "i:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_functional(t, "i:aba'b'"), std::invalid_argument);  // peripheral
  CHECK_THROWS_AS(parse_functional(t, ""), std::invalid_argument);
  // Arc payloads are rejected: the reference multicurve must be curves.
  CHECK_THROWS_AS(parse_functional(t, "i:0:0:a"), std::invalid_argument);
}

TEST_CASE("triweight pairs curves with the preset arc system") {
  RibbonSurface t = make_preset("S_1_1");
  Functional T = parse_functional(t, "triweight");
  CHECK(T.triweight);
  CHECK(T.scale == 1);
  std::vector<ArcClass> sys = preset_arc_system(t);
  REQUIRE(sys.size() >= 2);
  long long want = 0;
  for (const ArcClass& a : sys) want += i_arc_curve(t, a, C(t, "ab"));
  CHECK(T.eval(C(t, "ab")) == want);
  CHECK(T.eval(C(t, "a")) > 0);  // arc systems fill: positive on everything
  CHECK(T.eval(C(t, "b")) > 0);
  CHECK_THROWS_AS(T.eval(canonical_arc(t, 0, 0, W("a"))), std::invalid_argument);

  RibbonSurface q = make_preset("S_0_4");
  Functional Tq = parse_functional(q, "triweight");
  for (const char* w : {"ab", "bc", "abc'"})
    CHECK(Tq.eval(C(q, w)) > 0);
}

TEST_CASE("doubles evaluate to exactly twice the base") {
  RibbonSurface q = make_preset("S_0_4");
  Functional F = parse_functional(q, "i:ab+bc");
  for (const char* lit : {"ab", "2*ac", "0:1:", "0:2:c+0:1:"}) {
    MultiClass m = parse_multiclass(q, lit);
    CHECK(F.eval(double_class(m)) == 2 * F.eval(m));
  }
}

TEST_CASE("filling registry") {
  RibbonSurface t = make_preset("S_1_1");
  std::vector<std::string> reg = filling_registry(t);
  CHECK(reg.size() >= 2);
  for (const std::string& lit : reg) {
    MultiClass m = parse_multiclass(t, lit);
    CHECK(is_registered_filling(t, m));
    // Filling on a one-vertex surface: positive against every slope tried.
    Functional F = parse_functional(t, "i:" + lit);
    for (const char* w : {"a", "b", "ab", "ab'", "aab"})
      CHECK(F.eval(C(t, w)) > 0);
  }
  CHECK(is_registered_filling(t, parse_multiclass(t, "a+b")));
  CHECK_FALSE(is_registered_filling(t, parse_multiclass(t, "a")));

  RibbonSurface q = make_preset("S_0_4");
  CHECK(is_registered_filling(q, parse_multiclass(q, "ab+bc")));
  CHECK_FALSE(is_registered_filling(q, parse_multiclass(q, "ab")));
}

TEST_CASE("preset arc systems are essential and span the boundaries") {
  for (const char* name : {"S_1_1", "S_0_4", "S_1_2"}) {
    RibbonSurface s = make_preset(name);
    std::vector<ArcClass> sys = preset_arc_system(s);
    CHECK(!sys.empty());
    std::set<std::string> keys;
    for (const ArcClass& a : sys) {
      CHECK(keys.insert(a.key()).second);
      CHECK_NOTHROW(canonical_arc(s, a.s, a.e, a.w));  // already canonical
      CHECK(canonical_arc(s, a.s, a.e, a.w) == a);
    }
  }
}

TEST_CASE("functional agreement between class overloads") {
  RibbonSurface t = make_preset("S_1_1");
  Functional F = parse_functional(t, "i:a+b");
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> pick(0, 3);
  int done = 0;
  while (done < 30) {
    Word w;
    for (int j = 0; j < 2 + static_cast<int>(rng() % 5); ++j) {
      Letter x = static_cast<Letter>(pick(rng));
      if (!w.empty() && inverse_letter(w.back()) == x) continue;
      w.push_back(static_cast<char>(x));
    }
    CurveClass c;
    try {
      c = canonical_curve(t, w);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (c.peripheral) continue;
    ++done;
    MultiClass single = make_multicurve({{c, 1}});
    CHECK(F.eval(single) == F.eval(c));
    MultiClass weighted = make_multicurve({{c, Rational(5)}});
    CHECK(F.eval(weighted) == 5 * F.eval(c));
  }
  // Scaled functionals stay integral on multiclasses too.
  Functional H = parse_functional(t, "i:a+b/2");
  CHECK(H.eval(parse_multiclass(t, "2*ab")) == 6);  // 2 * 2*(1 + 1/2)
}
