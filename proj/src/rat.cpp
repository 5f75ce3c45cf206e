#include "horosark/rat.hpp"

#include <sstream>

namespace horosark {

Rat Rat::parse(const std::string& s) {
  if (s.empty()) throw validation_error("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class n(s);
      return Rat(n);
    }
    mpz_class n(s.substr(0, slash));
    mpz_class d(s.substr(slash + 1));
    if (d == 0) throw validation_error("rational with zero denominator: " + s);
    return Rat(n, d);
  } catch (const std::invalid_argument&) {
    throw validation_error("malformed rational literal: " + s);
  }
}

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::decimal(int digits) const {
  if (is_zero()) return "0";
  mpz_class n = ::abs(num());
  mpz_class d = den();
  std::string sign = this->sign() < 0 ? "-" : "";

  // Scale so the integer part of n/d has exactly `digits` digits, tracking
  // the decimal exponent, then round half-up.
  int exp10 = 0;
  mpz_class ten = 10;
  while (n < d) { n *= 10; --exp10; }
  while (n >= d * 10) { d *= 10; ++exp10; }
  mpz_class scale = 1;
  for (int i = 1; i < digits; ++i) scale *= 10;
  mpz_class q = (n * scale * 2 + d) / (2 * d);  // round half up
  std::string ds = q.get_str();
  if ((int)ds.size() > digits) { ds.pop_back(); ++exp10; }  // rounding overflow

  // Place the decimal point; exp10 is the exponent of the leading digit.
  std::string out;
  if (exp10 >= 0 && exp10 < digits + 6) {
    int ip = exp10 + 1;
    if ((int)ds.size() <= ip) {
      out = ds + std::string(ip - ds.size(), '0');
    } else {
      out = ds.substr(0, ip) + "." + ds.substr(ip);
    }
  } else if (exp10 < 0 && exp10 > -7) {
    out = "0." + std::string(-exp10 - 1, '0') + ds;
  } else {
    out = ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e" + std::to_string(exp10);
  }
  // Trim trailing zeros of a fractional part.
  if (out.find('.') != std::string::npos && out.find('e') == std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return sign + out;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw internal_error("dot: size mismatch");
  Rat s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec operator+(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw internal_error("vec+: size mismatch");
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec operator-(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw internal_error("vec-: size mismatch");
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec operator*(const Rat& s, const RatVec& v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

std::string to_string(const RatVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].str();
  }
  os << ")";
  return os.str();
}

}  // namespace horosark
