#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arccount/classes.hpp"

namespace arccount {

// Mapping class presented as a free-group automorphism. boundary_perm and
// boundary_conj witness that every boundary word maps to a conjugate of a
// boundary word without inversion: phi(b_i) = c_i . b_{perm[i]} . c_i^-1.
struct MCGAutomorphism {
  std::string label;
  std::vector<Word> images;          // image of generator i
  std::vector<Word> inverse_images;  // generator images of the inverse class
  std::vector<int> boundary_perm;
  std::vector<Word> boundary_conj;
};

// Validates that images/inverse_images invert each other on every generator
// and derives the boundary action; throws invalid_argument otherwise.
MCGAutomorphism make_automorphism(const RibbonSurface& s, const std::string& label,
                                  std::vector<Word> images,
                                  std::vector<Word> inverse_images);

MCGAutomorphism inverse(const RibbonSurface& s, const MCGAutomorphism& f);

// Twist (and, for S_0_4, half-twist) generating sets per preset, closed under
// inverses. convention "setwise" allows boundary permutations, "preserve"
// restricts to generators fixing every boundary. Pair of pants rejected.
std::vector<MCGAutomorphism> preset_generators(const RibbonSurface& s,
                                               const std::string& convention = "setwise");

Word apply_word(const MCGAutomorphism& f, const Word& w);
CurveClass apply(const RibbonSurface& s, const MCGAutomorphism& f, const CurveClass& x);
ArcClass apply(const RibbonSurface& s, const MCGAutomorphism& f, const ArcClass& x);
MultiClass apply(const RibbonSurface& s, const MCGAutomorphism& f, const MultiClass& x);

// Congruence-type subgroup: kernel of the action on H_1(S; Z/m). rep[i] is
// the matrix of generator i, row-major dim x dim, column j = abelianization
// of images[j]. modulus 0 means the full group (no restriction).
struct SubgroupSpec {
  int modulus = 0;
  int dim = 0;
  std::vector<std::array<uint8_t, 9>> rep;

  bool is_full() const { return modulus == 0; }
  std::string description() const;
};

SubgroupSpec full_group();
SubgroupSpec homology_kernel(const RibbonSurface& s,
                             const std::vector<MCGAutomorphism>& gens, int modulus);

// Product of representation matrices (word applied left to right) == identity.
bool in_subgroup(const SubgroupSpec& gamma, const std::vector<int>& generator_indices);

struct OrbitBallConfig {
  double slack = 2.0;
  int workers = 1;
  bool check_saturation = true;
  bool store_members = false;
};

// Ball {x in Gamma.seed : F(x) <= L}. counts_by_level[l-1] = N(l) for
// l = 1..L; members populated only when store_members. For a proper subgroup
// the search runs over (class, homology matrix) pairs and members are classes
// reached with the identity matrix. Deterministic for any worker count.
struct OrbitBall {
  std::string surface;
  std::string seed_key;
  std::string gamma_desc;
  std::string functional_desc;
  long long L = 0;
  double slack = 2.0;
  std::vector<long long> counts_by_level;
  bool saturated = false;
  long long explored_states = 0;
  double wall_time = 0;  // seconds; kept out of bit-stable serializations

  std::vector<CurveClass> curve_members;
  std::vector<ArcClass> arc_members;
  std::vector<long long> member_F;  // aligned with the member vectors
};

using CurveFunctional = std::function<long long(const CurveClass&)>;
using ArcFunctional = std::function<long long(const ArcClass&)>;

// Breadth-first closure under the generator list, expanding any state with
// F <= slack*L. Throws invalid_argument on an inessential seed and
// runtime_error when F is non-positive on a reached class. saturated is set
// by re-running at doubled slack and comparing counts_by_level.
OrbitBall orbit_ball(const RibbonSurface& s, const std::vector<MCGAutomorphism>& gens,
                     const CurveClass& seed, const SubgroupSpec& gamma,
                     const CurveFunctional& F, long long L, const OrbitBallConfig& cfg);
OrbitBall orbit_ball(const RibbonSurface& s, const std::vector<MCGAutomorphism>& gens,
                     const ArcClass& seed, const SubgroupSpec& gamma,
                     const ArcFunctional& F, long long L, const OrbitBallConfig& cfg);

}  // namespace arccount
