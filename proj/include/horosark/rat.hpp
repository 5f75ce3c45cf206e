#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace horosark {

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct genericity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Exact rational, always canonical (lowest terms, positive denominator).
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}           // NOLINT: implicit by design
  Rat(long n, long d) : v_(n, d) {
    if (d == 0) throw internal_error("Rat: zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rat(const mpz_class& n) : v_(n) {}
  Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) {
    if (d == 0) throw internal_error("Rat: zero denominator");
    v_.canonicalize();
  }

  static Rat parse(const std::string& s);

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw internal_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  Rat abs() const { return Rat(mpq_class(::abs(v_))); }

  // Canonical "p/q" form ("p" when q = 1).
  std::string str() const;

  // Exact decimal rendering with `digits` significant digits, used only for
  // SVG coordinates. No floating point involved.
  std::string decimal(int digits) const;

 private:
  mpq_class v_;
};

using RatVec = std::vector<Rat>;

Rat dot(const RatVec& a, const RatVec& b);
RatVec operator+(const RatVec& a, const RatVec& b);
RatVec operator-(const RatVec& a, const RatVec& b);
RatVec operator*(const Rat& s, const RatVec& v);

std::string to_string(const RatVec& v);

}  // namespace horosark
