#pragma once
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace arccount {

// Letters are byte codes: a=0, a'=1, b=2, b'=3, c=4, c'=5.
// Byte order doubles as the global tie-break order a < a' < b < b' < c < c'.
using Letter = unsigned char;
using Word = std::string;  // raw letter codes, not ASCII

constexpr int kMaxGenerators = 3;

inline Letter inverse_letter(Letter x) { return static_cast<Letter>(x ^ 1u); }
inline int generator_of(Letter x) { return x >> 1; }
inline bool is_positive(Letter x) { return (x & 1u) == 0; }
inline Letter positive_letter(int gen) { return static_cast<Letter>(2 * gen); }

// Text syntax: letters a,b,c with ' suffix for the inverse, e.g. "aba'b'".
Word parse_word(const std::string& text, int generators);
std::string format_word(const Word& w);

bool is_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);
Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);  // free-reduces first
Word inverse_word(const Word& w);
Word concat_reduce(const Word& a, const Word& b);

// Longest common prefix length of a with the infinite periodic word per^inf.
size_t common_prefix_periodic(const Word& a, const Word& per);

// Lexicographically least rotation (Booth's algorithm).
Word least_rotation(const Word& w);
Word rotate(const Word& w, size_t k);

// Smallest period p of w with p | |w| (so w = root^(|w|/p)); |w| if primitive.
size_t primitive_period(const Word& w);
Word word_power(const Word& w, int k);  // k may be negative

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw std::invalid_argument("rational division by zero");
    return {a.num * b.den, a.den * b.num};
  }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
};

Rational parse_rational(const std::string& text);

}  // namespace arccount
