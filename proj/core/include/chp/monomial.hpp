#pragma once

#include <cstdint>
#include <vector>

namespace chp {

// Exponent vector of a monomial; length equals the ambient variable count.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<uint32_t> exps) : e_(std::move(exps)) {}

  size_t nvars() const { return e_.size(); }
  uint32_t operator[](size_t i) const { return e_[i]; }
  uint32_t& operator[](size_t i) { return e_[i]; }
  const std::vector<uint32_t>& exps() const { return e_; }

  uint64_t degree() const;
  bool is_one() const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // Requires divides(o) in the caller's contract; quotient exponentwise.
  Monomial quotient_into(const Monomial& o) const;  // returns o / *this
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }
  // Plain container order (exponentwise lexicographic), unrelated to the
  // monomial orders used by the engine.
  bool operator<(const Monomial& o) const { return e_ < o.e_; }

private:
  std::vector<uint32_t> e_;
};

// Graded reverse lexicographic order: higher total degree wins; on equal
// degree the monomial with the smaller exponent at the last differing
// variable is the larger one.
bool grevlex_less(const Monomial& a, const Monomial& b);

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grevlex_less(b, a);
  }
};

}  // namespace chp
