#include "arccount/words.hpp"

#include <algorithm>

namespace arccount {

Word parse_word(const std::string& text, int generators) {
  Word out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == ' ' || c == '.') continue;
    if (c < 'a' || c >= 'a' + generators)
      throw std::invalid_argument("bad letter '" + std::string(1, c) + "' in word \"" + text + "\"");
    Letter x = positive_letter(c - 'a');
    if (i + 1 < text.size() && text[i + 1] == '\'') {
      x = inverse_letter(x);
      ++i;
    }
    out.push_back(static_cast<char>(x));
  }
  return out;
}

std::string format_word(const Word& w) {
  std::string out;
  for (unsigned char c : w) {
    out.push_back(static_cast<char>('a' + generator_of(c)));
    if (!is_positive(c)) out.push_back('\'');
  }
  return out;
}

bool is_reduced(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (static_cast<Letter>(w[i]) == inverse_letter(w[i + 1])) return false;
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_reduced(w)) return false;
  if (w.size() >= 2 && static_cast<Letter>(w.front()) == inverse_letter(w.back())) return false;
  return true;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (char c : w) {
    if (!out.empty() && static_cast<Letter>(out.back()) == inverse_letter(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && static_cast<Letter>(r[lo]) == inverse_letter(r[hi - 1])) {
    ++lo;
    --hi;
  }
  return r.substr(lo, hi - lo);
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back(static_cast<char>(inverse_letter(*it)));
  return out;
}

Word concat_reduce(const Word& a, const Word& b) {
  size_t cut = 0;
  while (cut < a.size() && cut < b.size() &&
         static_cast<Letter>(a[a.size() - 1 - cut]) == inverse_letter(b[cut]))
    ++cut;
  Word out = a.substr(0, a.size() - cut);
  out.append(b, cut, b.size() - cut);
  return out;
}

size_t common_prefix_periodic(const Word& a, const Word& per) {
  if (per.empty()) return 0;
  size_t k = 0;
  while (k < a.size() && a[k] == per[k % per.size()]) ++k;
  return k;
}

Word rotate(const Word& w, size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  return w.substr(k) + w.substr(0, k);
}

Word least_rotation(const Word& w) {
  if (w.empty()) return w;
  const size_t n = w.size();
  std::string s = w + w;
  size_t i = 0, j = 1;
  while (j < n && i < n) {
    size_t k = 0;
    while (k < n && s[i + k] == s[j + k]) ++k;
    if (k >= n) break;
    if (s[i + k] < s[j + k])
      j = j + k + 1;
    else {
      size_t next = i + k + 1;
      i = j;
      j = std::max(next, j + 1);
    }
  }
  return rotate(w, std::min(i, j));
}

size_t primitive_period(const Word& w) {
  const size_t n = w.size();
  if (n == 0) return 0;
  std::string f(n + 1, 0);
  std::vector<size_t> fail(n + 1, 0);
  for (size_t i = 1; i < n; ++i) {
    size_t j = fail[i];
    while (j > 0 && w[i] != w[j]) j = fail[j];
    fail[i + 1] = (w[i] == w[j]) ? j + 1 : 0;
  }
  size_t p = n - fail[n];
  return (n % p == 0) ? p : n;
}

Word word_power(const Word& w, int k) {
  Word base = k < 0 ? inverse_word(w) : w;
  int reps = k < 0 ? -k : k;
  Word out;
  out.reserve(base.size() * reps);
  for (int i = 0; i < reps; ++i) out += base;
  return out;
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational \"" + text + "\"");
  }
}

}  // namespace arccount
