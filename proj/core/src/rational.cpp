#include "bolcat/rational.hpp"

#include <cctype>
#include <cmath>

namespace bolcat {

Rat parse_rat(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);  // GMP rejects a leading '+'
  if (text.empty()) throw ParseError("empty rational literal");
  std::string s(text);
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/'))
      throw ParseError("bad rational literal: " + s);
  }
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: " + s);
  }
}

std::string to_string(const Rat& q) { return q.get_str(); }

std::string to_string(const CRat& z) {
  if (z.im == 0) return z.re.get_str();
  std::string s = z.re == 0 ? "" : z.re.get_str();
  std::string i = z.im.get_str();
  if (!s.empty() && z.im > 0) s += "+";
  return s + i + "i";
}

std::complex<double> SurdEntry::approx() const {
  static const double rt2 = std::sqrt(2.0);
  return {a.get_d() + b.get_d() * rt2, c.get_d() + d.get_d() * rt2};
}

SurdEntry parse_surd(std::string_view text) {
  SurdEntry e;
  size_t pos = 0;
  if (text.empty()) throw ParseError("empty matrix entry");
  while (pos < text.size()) {
    size_t start = pos;
    if (text[pos] == '+' || text[pos] == '-') ++pos;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
      ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      throw ParseError("bad matrix entry: " + std::string(text));
    Rat q = parse_rat(text.substr(start, pos - start));
    bool rt2 = false, imag = false;
    if (text.substr(pos, 2) == "r2") {
      rt2 = true;
      pos += 2;
    }
    if (pos < text.size() && text[pos] == 'i') {
      imag = true;
      ++pos;
    }
    (imag ? (rt2 ? e.d : e.c) : (rt2 ? e.b : e.a)) += q;
  }
  return e;
}

}  // namespace bolcat
