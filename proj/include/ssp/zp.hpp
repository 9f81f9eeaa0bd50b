// Arithmetic mod a small prime p.
#pragma once

#include <stdexcept>
#include <string>

namespace ssp {

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_prime(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// The prime p of the power relations g_i^p = e.  Only finite primes are
// supported; exponent vectors live in Z_p^n.
class PrimeModulus {
 public:
  explicit PrimeModulus(int p) : p_(p) {
    if (!is_prime(p))
      throw validation_error("p = " + std::to_string(p) + " is not prime");
  }

  int value() const { return p_; }

  int reduce(long long v) const {
    int r = static_cast<int>(v % p_);
    return r < 0 ? r + p_ : r;
  }

  int add(int a, int b) const { return (a + b) % p_; }
  int sub(int a, int b) const { return (a - b + p_) % p_; }
  int mul(int a, int b) const { return (a * b) % p_; }
  int neg(int a) const { return (p_ - a) % p_; }

  // Multiplicative inverse of a nonzero residue (p prime).
  int inv(int a) const {
    a %= p_;
    if (a == 0) throw validation_error("inverse of 0 mod p");
    int result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  int p_;
};

}  // namespace ssp
