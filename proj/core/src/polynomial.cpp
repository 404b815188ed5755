#include "chp/polynomial.hpp"

#include <cctype>
#include <sstream>

namespace chp {

Ring::Ring(uint32_t p_, uint32_t nvars_, char prefix_)
    : p(p_), nvars(nvars_), prefix(prefix_) {
  if (!is_prime(p)) throw Error(ErrorKind::structural, "modulus must be prime");
  if (p > 97) throw Error(ErrorKind::structural, "modulus must be at most 97");
  if (nvars == 0) throw Error(ErrorKind::structural, "ring needs at least one variable");
}

std::string Ring::var_name(size_t i) const {
  return std::string(1, prefix) + std::to_string(i);
}

Poly Poly::constant(const Ring& r, int64_t c) {
  Poly f(r);
  f.add_term(Monomial(r.nvars), fp_reduce(c, r.p));
  return f;
}

Poly Poly::variable(const Ring& r, size_t i, uint32_t exp) {
  if (i >= r.nvars) throw Error(ErrorKind::structural, "variable index out of range");
  Monomial m(r.nvars);
  m[i] = exp;
  return monomial(r, m, 1);
}

Poly Poly::monomial(const Ring& r, Monomial m, int64_t c) {
  if (m.nvars() != r.nvars)
    throw Error(ErrorKind::structural, "monomial arity does not match ring");
  Poly f(r);
  f.add_term(m, fp_reduce(c, r.p));
  return f;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

uint64_t Poly::degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

const Monomial& Poly::lead_monomial() const {
  if (terms_.empty()) throw Error(ErrorKind::structural, "leading term of zero");
  return terms_.begin()->first;
}

uint32_t Poly::lead_coeff() const {
  if (terms_.empty()) throw Error(ErrorKind::structural, "leading term of zero");
  return terms_.begin()->second;
}

uint32_t Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void Poly::check_same_ring(const Poly& o) const {
  if (ring_ != o.ring_) throw Error(ErrorKind::structural, "polynomial ring mismatch");
}

void Poly::add_term(const Monomial& m, uint32_t c) {
  c %= ring_.p;
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second = fp_add(it->second, c, ring_.p);
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  check_same_ring(o);
  Poly r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  check_same_ring(o);
  Poly r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, fp_neg(c, ring_.p));
  return r;
}

Poly Poly::operator-() const {
  Poly r(ring_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, fp_neg(c, ring_.p));
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_same_ring(o);
  Poly r(ring_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_)
      r.add_term(ma * mb, fp_mul(ca, cb, ring_.p));
  return r;
}

Poly Poly::scaled(uint32_t c) const {
  c %= ring_.p;
  Poly r(ring_);
  if (c == 0) return r;
  for (const auto& [m, cc] : terms_) r.terms_.emplace(m, fp_mul(cc, c, ring_.p));
  return r;
}

Poly Poly::times_monomial(const Monomial& m, uint32_t c) const {
  c %= ring_.p;
  Poly r(ring_);
  if (c == 0) return r;
  for (const auto& [mm, cc] : terms_) r.terms_.emplace(mm * m, fp_mul(cc, c, ring_.p));
  return r;
}

Poly Poly::pow(uint64_t e) const {
  Poly acc = Poly::constant(ring_, 1);
  Poly base(*this);
  while (e) {
    if (e & 1) acc = acc * base;
    if (e >>= 1) base = base * base;
  }
  return acc;
}

bool Poly::operator==(const Poly& o) const {
  return ring_ == o.ring_ && terms_ == o.terms_;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    bool printed = false;
    if (c != 1 || m.is_one()) {
      out << c;
      printed = true;
    }
    for (size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (printed) out << "*";
      out << ring_.var_name(i);
      if (m[i] > 1) out << "^" << m[i];
      printed = true;
    }
  }
  return out.str();
}

Poly partial_derivative(const Poly& f, size_t i) {
  if (i >= f.ring().nvars)
    throw Error(ErrorKind::structural, "derivative index out of range");
  Poly r(f.ring());
  for (const auto& [m, c] : f.terms()) {
    if (m[i] == 0) continue;
    uint32_t factor = m[i] % f.ring().p;
    if (factor == 0) continue;
    Monomial mm(m);
    mm[i] -= 1;
    r.add_term(mm, fp_mul(c, factor, f.ring().p));
  }
  return r;
}

Poly p_power_substitute(const Poly& f, const Ring& twisted) {
  if (twisted.p != f.ring().p || twisted.nvars != f.ring().nvars)
    throw Error(ErrorKind::structural, "twisted ring must match p and arity");
  // Coefficient Frobenius is the identity on F_p, so only the prefix moves.
  Poly r(twisted);
  for (const auto& [m, c] : f.terms()) r.add_term(m, c);
  return r;
}

Poly substitute_p_powers(const Poly& f, const Ring& target) {
  if (target.p != f.ring().p || target.nvars != f.ring().nvars)
    throw Error(ErrorKind::structural, "target ring must match p and arity");
  uint32_t p = f.ring().p;
  Poly r(target);
  for (const auto& [m, c] : f.terms()) {
    Monomial mm(m.nvars());
    for (size_t i = 0; i < m.nvars(); ++i) mm[i] = m[i] * p;
    r.add_term(mm, c);
  }
  return r;
}

Fp evaluate(const Poly& f, const std::vector<uint32_t>& point) {
  const Ring& r = f.ring();
  if (point.size() != r.nvars)
    throw Error(ErrorKind::structural, "evaluation point arity mismatch");
  uint32_t acc = 0;
  for (const auto& [m, c] : f.terms()) {
    uint32_t t = c;
    for (size_t i = 0; i < r.nvars; ++i)
      if (m[i]) t = fp_mul(t, fp_pow(point[i] % r.p, m[i], r.p), r.p);
    acc = fp_add(acc, t, r.p);
  }
  return Fp(acc, r.p);
}

namespace {

// Recursive-descent parser for sums of products of factors; factors are
// integers, variables with optional ^exponent, or parenthesized
// subexpressions with optional ^exponent.
class PolyParser {
public:
  PolyParser(const std::string& text, const Ring& ring) : s_(text), ring_(ring) {}

  Poly parse() {
    Poly r = expression();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse,
                "polynomial syntax error at position " + std::to_string(pos_ + 1) +
                    ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expression() {
    bool neg = false;
    skip_ws();
    if (eat('-')) neg = true;
    else eat('+');
    Poly acc = term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  uint64_t integer() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected integer");
    uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (1ull << 40)) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }

  Poly factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected factor");
    Poly base(ring_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      base = expression();
      if (!eat(')')) fail("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      base = Poly::constant(ring_, static_cast<int64_t>(integer() % ring_.p));
    } else if (c == ring_.prefix) {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected variable index");
      uint64_t idx = integer();
      if (idx >= ring_.nvars) fail("variable index out of range for this ring");
      base = Poly::variable(ring_, static_cast<size_t>(idx));
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    if (eat('^')) {
      uint64_t e = integer();
      if (e > 4096) fail("exponent too large");
      base = base.pow(e);
    }
    return base;
  }

  const std::string& s_;
  const Ring& ring_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const Ring& ring) {
  return PolyParser(text, ring).parse();
}

}  // namespace chp
