#include "pfpc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace pfpc {

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto bad = [&]() {
    return std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      return true;
    };
    if (!digits(num) || !digits(den)) throw bad();
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  auto dot = text.find('.');
  std::string whole(text.substr(0, dot));
  std::string frac = dot == std::string_view::npos ? "" : std::string(text.substr(dot + 1));
  if (whole.empty() && frac.empty()) throw bad();
  for (char c : whole + frac)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();

  mpz_class scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  std::string digits = whole + frac;
  mpz_class n(digits.empty() ? std::string("0") : digits, 10);
  Rational r(n, scale);
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

Rational pow2_inverse(unsigned k) {
  mpz_class den = 1;
  den <<= k;
  return Rational(mpz_class(1), den);
}

}  // namespace pfpc
