#include "tsnorm/rational.hpp"

#include <sstream>

namespace tsnorm {

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto parse_int = [](const std::string& t) -> BigInt {
    if (t.empty() || t == "-" || t == "+") throw std::invalid_argument("bad integer literal '" + t + "'");
    for (std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw std::invalid_argument("bad integer literal '" + t + "'");
    return BigInt(t);
  };

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    if (head.empty() || head == "-" || head == "+") head += "0";
    bool neg = head[0] == '-';
    BigInt num = parse_int(head);
    BigInt den = 1;
    for (char c : tail) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad decimal literal '" + text + "'");
      num = num * 10 + (neg ? -(c - '0') : (c - '0'));
      den *= 10;
    }
    return Rat(num, den);
  }
  return Rat(parse_int(s));
}

BigInt rat_ceil(const Rat& r) {
  BigInt num = numerator(r), den = denominator(r);
  BigInt q = num / den;
  if (q * den < num) ++q;  // truncation rounded toward zero on a positive remainder
  return q;
}

Rat rat_pow(const Rat& base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("rat_pow: negative exponent");
  Rat acc = 1, b = base;
  int e = exponent;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace tsnorm
