#pragma once
#include <array>
#include <string>
#include <vector>

#include "arccount/classes.hpp"

namespace arccount {

using RationalMatrix = std::array<Rational, 4>;  // row-major a b c d, det +1

// Stored discrete faithful matrix representation of a preset, with one
// repelling interval per generator for the exact ping-pong certificate.
struct OracleRep {
  RibbonSurface surface;
  std::vector<RationalMatrix> gens;
  std::vector<std::pair<Rational, Rational>> repelling;
};

// Loads and certifies the representation stored for a preset; throws
// std::runtime_error when the data file carries none (S_1_2, S_0_3).
OracleRep load_oracle_rep(const std::string& preset_name);

// Exact-rational ping-pong certificate: generators hyperbolic with det +1,
// the 2n attracting/repelling intervals pairwise disjoint, and their circular
// order equal to the ribbon order. Throws std::runtime_error on failure.
void certify_oracle_rep(const OracleRep& rep);

// Numeric crossing counts from axis-endpoint interleaving on the boundary
// circle, enumerating conjugate axes up to conjugator word length max_depth.
// Monotone nondecreasing in depth; the returned value is the count that
// agrees over the last two depths, and a count still moving at max_depth
// throws std::runtime_error (inconclusive), never returns a guess.
// Words longer than 12 letters are rejected.
long long hyperbolic_oracle_i(const OracleRep& rep, const Word& u, const Word& v, int max_depth = 8);
long long hyperbolic_oracle_si(const OracleRep& rep, const Word& u, int max_depth = 8);
long long hyperbolic_oracle_i_arc(const OracleRep& rep, const ArcClass& a, const Word& v,
                                  int max_depth = 8);

}  // namespace arccount
