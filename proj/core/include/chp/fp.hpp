#pragma once

#include <cstdint>

#include "chp/error.hpp"

namespace chp {

bool is_prime(uint32_t n);

// Arithmetic on residues in [0, p).  All helpers assume reduced inputs.
inline uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) {
  uint32_t s = a + b;
  return s >= p ? s - p : s;
}

inline uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

inline uint32_t fp_neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }

inline uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
}

uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p);
uint32_t fp_inv(uint32_t a, uint32_t p);

// Reduce an arbitrary signed integer into [0, p).
inline uint32_t fp_reduce(int64_t v, uint32_t p) {
  int64_t r = v % static_cast<int64_t>(p);
  if (r < 0) r += p;
  return static_cast<uint32_t>(r);
}

// Element of the prime field F_p.  The modulus travels with the value;
// mixing moduli is a structural error.  Used at API boundaries; bulk
// containers store raw residues with a single ambient modulus.
class Fp {
public:
  Fp(uint32_t value, uint32_t p) : v_(value % p), p_(p) {
    if (!is_prime(p)) throw Error(ErrorKind::structural, "modulus must be prime");
  }
  static Fp from_int(int64_t value, uint32_t p) { return Fp(fp_reduce(value, p), p); }

  uint32_t value() const { return v_; }
  uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(Fp o) const { check(o); return Fp(fp_add(v_, o.v_, p_), p_); }
  Fp operator-(Fp o) const { check(o); return Fp(fp_sub(v_, o.v_, p_), p_); }
  Fp operator*(Fp o) const { check(o); return Fp(fp_mul(v_, o.v_, p_), p_); }
  Fp operator-() const { return Fp(fp_neg(v_, p_), p_); }
  Fp inverse() const { return Fp(fp_inv(v_, p_), p_); }
  Fp pow(uint64_t e) const { return Fp(fp_pow(v_, e, p_), p_); }

  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

private:
  void check(const Fp& o) const {
    if (p_ != o.p_) throw Error(ErrorKind::structural, "F_p modulus mismatch");
  }
  uint32_t v_;
  uint32_t p_;
};

}  // namespace chp
