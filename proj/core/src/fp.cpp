#include "chp/fp.hpp"

namespace chp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::structural: return "structural";
    case ErrorKind::non_complex: return "non_complex";
    case ErrorKind::non_smooth: return "non_smooth";
    case ErrorKind::unstabilized: return "unstabilized";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p) {
  uint64_t base = a % p, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(acc);
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
  if (a % p == 0) throw Error(ErrorKind::structural, "inverse of zero in F_p");
  return fp_pow(a % p, p - 2, p);
}

}  // namespace chp
