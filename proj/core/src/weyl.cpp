#include "chp/weyl.hpp"

#include <cctype>
#include <sstream>

namespace chp {

namespace {

// Degree guard: inputs beyond this d-degree reject to bound normal-form
// blowup; desk-scale experiments stay far below it.
uint64_t d_degree_guard(const Ring& r) { return 4ull * r.p; }

void check_guard(const WeylOp& a) {
  if (a.d_degree() > d_degree_guard(a.ring()))
    throw Error(ErrorKind::structural, "operator d-degree exceeds 4p guard");
}

// Falling-factorial style commutation coefficient for one variable:
// d^b x^c = sum_k k! C(b,k) C(c,k) x^{c-k} d^{b-k}.  The value is the
// integer [b]_k [c]_k / k!; track powers of p separately so intermediate
// division never hits a zero divisor mod p.
uint32_t commutation_coeff(uint32_t b, uint32_t c, uint32_t k, uint32_t p) {
  int64_t pexp = 0;
  uint32_t unit = 1;
  auto fold = [&](uint64_t f, int sign) {
    while (f % p == 0) {
      f /= p;
      pexp += sign;
    }
    uint32_t r = static_cast<uint32_t>(f % p);
    unit = sign > 0 ? fp_mul(unit, r, p) : fp_mul(unit, fp_inv(r, p), p);
  };
  for (uint32_t i = 0; i < k; ++i) {
    fold(b - i, +1);
    fold(c - i, +1);
    fold(i + 1, -1);
  }
  if (pexp > 0) return 0;
  if (pexp < 0)
    throw Error(ErrorKind::structural, "commutation coefficient not integral");
  return unit;
}

}  // namespace

bool WeylOp::Key::operator<(const Key& o) const {
  if (x != o.x) return grevlex_less(x, o.x);
  return grevlex_less(d, o.d);
}

WeylOp WeylOp::constant(const Ring& r, int64_t c) {
  WeylOp a(r);
  a.add_term(Monomial(r.nvars), Monomial(r.nvars), fp_reduce(c, r.p));
  return a;
}

WeylOp WeylOp::from_poly(const Poly& f) {
  WeylOp a(f.ring());
  Monomial one(f.ring().nvars);
  for (const auto& [m, c] : f.terms()) a.add_term(m, one, c);
  return a;
}

WeylOp WeylOp::coordinate(const Ring& r, size_t i) {
  return from_poly(Poly::variable(r, i));
}

WeylOp WeylOp::derivation(const Ring& r, size_t i) {
  if (i >= r.nvars) throw Error(ErrorKind::structural, "derivation index out of range");
  Monomial d(r.nvars);
  d[i] = 1;
  WeylOp a(r);
  a.add_term(Monomial(r.nvars), d, 1);
  return a;
}

WeylOp WeylOp::term(const Ring& r, Monomial x, Monomial d, int64_t c) {
  WeylOp a(r);
  a.add_term(x, d, fp_reduce(c, r.p));
  return a;
}

uint64_t WeylOp::d_degree() const {
  uint64_t deg = 0;
  for (const auto& [k, c] : terms_) deg = std::max(deg, k.d.degree());
  return deg;
}

void WeylOp::add_term(const Monomial& x, const Monomial& d, uint32_t c) {
  c %= ring_.p;
  if (c == 0) return;
  Key key{x, d};
  auto [it, fresh] = terms_.emplace(key, c);
  if (!fresh) {
    it->second = fp_add(it->second, c, ring_.p);
    if (it->second == 0) terms_.erase(it);
  }
}

WeylOp WeylOp::operator+(const WeylOp& o) const {
  if (ring_ != o.ring_) throw Error(ErrorKind::structural, "Weyl ring mismatch");
  WeylOp r(*this);
  for (const auto& [k, c] : o.terms_) r.add_term(k.x, k.d, c);
  return r;
}

WeylOp WeylOp::operator-(const WeylOp& o) const {
  if (ring_ != o.ring_) throw Error(ErrorKind::structural, "Weyl ring mismatch");
  WeylOp r(*this);
  for (const auto& [k, c] : o.terms_) r.add_term(k.x, k.d, fp_neg(c, ring_.p));
  return r;
}

WeylOp WeylOp::operator-() const {
  WeylOp r(ring_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, fp_neg(c, ring_.p));
  return r;
}

WeylOp WeylOp::scaled(uint32_t c) const {
  c %= ring_.p;
  WeylOp r(ring_);
  if (!c) return r;
  for (const auto& [k, cc] : terms_) r.terms_.emplace(k, fp_mul(cc, c, ring_.p));
  return r;
}

WeylOp WeylOp::pow(uint64_t e) const {
  WeylOp acc = WeylOp::constant(ring_, 1);
  for (uint64_t i = 0; i < e; ++i) acc = weyl_mul(acc, *this);
  return acc;
}

bool WeylOp::operator==(const WeylOp& o) const {
  return ring_ == o.ring_ && terms_ == o.terms_;
}

std::optional<Poly> WeylOp::as_multiplication_operator() const {
  const uint32_t p = ring_.p;
  Poly out(ring_);
  for (const auto& [k, c] : terms_) {
    bool kills = false;
    for (size_t i = 0; i < ring_.nvars; ++i)
      if (k.d[i] >= p) kills = true;  // acts as zero on O
    if (kills) continue;
    if (!k.d.is_one()) return std::nullopt;
    out.add_term(k.x, c);
  }
  return out;
}

std::string WeylOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    bool printed = false;
    if (c != 1 || (k.x.is_one() && k.d.is_one())) {
      out << c;
      printed = true;
    }
    auto emit = [&](const Monomial& m, char letter) {
      for (size_t i = 0; i < m.nvars(); ++i) {
        if (m[i] == 0) continue;
        if (printed) out << "*";
        out << letter << i;
        if (m[i] > 1) out << "^" << m[i];
        printed = true;
      }
    };
    emit(k.x, ring_.prefix);
    emit(k.d, 'd');
  }
  return out.str();
}

WeylOp weyl_mul(const WeylOp& a, const WeylOp& b) {
  if (a.ring() != b.ring()) throw Error(ErrorKind::structural, "Weyl ring mismatch");
  check_guard(a);
  check_guard(b);
  const Ring& ring = a.ring();
  const uint32_t p = ring.p;
  const size_t n = ring.nvars;
  WeylOp out(ring);

  // (x^a d^b)(x^c d^e): commute d^b past x^c one variable at a time.
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      uint32_t base = fp_mul(ca, cb, p);
      // Iterate k <= min(b, c) componentwise.
      std::vector<uint32_t> kmax(n);
      for (size_t i = 0; i < n; ++i) kmax[i] = std::min(ka.d[i], kb.x[i]);
      std::vector<uint32_t> k(n, 0);
      while (true) {
        uint32_t coeff = base;
        for (size_t i = 0; i < n && coeff; ++i)
          if (k[i]) coeff = fp_mul(coeff, commutation_coeff(ka.d[i], kb.x[i], k[i], p), p);
        if (coeff) {
          Monomial x(n), d(n);
          for (size_t i = 0; i < n; ++i) {
            x[i] = ka.x[i] + kb.x[i] - k[i];
            d[i] = ka.d[i] + kb.d[i] - k[i];
          }
          out.add_term(x, d, coeff);
        }
        size_t i = 0;
        while (i < n) {
          if (++k[i] <= kmax[i]) break;
          k[i] = 0;
          ++i;
        }
        if (i == n) break;
      }
    }
  return out;
}

Poly apply_operator(const WeylOp& op, const Poly& g) {
  if (op.ring() != g.ring()) throw Error(ErrorKind::structural, "operator ring mismatch");
  Poly out(g.ring());
  for (const auto& [k, c] : op.terms()) {
    Poly t = g;
    for (size_t i = 0; i < g.ring().nvars && !t.is_zero(); ++i)
      for (uint32_t rep = 0; rep < k.d[i] && !t.is_zero(); ++rep)
        t = partial_derivative(t, i);
    if (t.is_zero()) continue;
    out = out + t.times_monomial(k.x, c);
  }
  return out;
}

WeylOp VectorField::as_operator() const {
  const Ring& r = ring();
  WeylOp out(r);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    Monomial d(r.nvars);
    d[i] = 1;
    for (const auto& [m, c] : coeffs[i].terms()) out.add_term(m, d, c);
  }
  return out;
}

bool VectorField::is_zero() const {
  for (const Poly& f : coeffs)
    if (!f.is_zero()) return false;
  return true;
}

VectorField restricted_power(const VectorField& theta) {
  const Ring& r = theta.ring();
  WeylOp op = theta.as_operator();
  VectorField out(r);
  for (size_t i = 0; i < r.nvars; ++i) {
    Poly v = Poly::variable(r, i);
    for (uint32_t rep = 0; rep < r.p; ++rep) v = apply_operator(op, v);
    out.coeffs[i] = v;
  }
  return out;
}

WeylOp center_map(const VectorField& theta_twisted, const Ring& x_ring) {
  const Ring& yring = theta_twisted.ring();
  if (yring.p != x_ring.p || yring.nvars != x_ring.nvars)
    throw Error(ErrorKind::structural, "twisted field does not match coordinate ring");
  // pi_* sends d/d(y_i) to d/d(x_i) and pulls coefficients back via x^p.
  VectorField theta(x_ring);
  for (size_t i = 0; i < x_ring.nvars; ++i)
    theta.coeffs[i] = substitute_p_powers(theta_twisted.coeffs[i], x_ring);
  WeylOp theta_p = theta.as_operator().pow(x_ring.p);
  return theta_p - restricted_power(theta).as_operator();
}

WeylOp twist_automorphism(const Poly& f, const WeylOp& a) {
  const Ring& ring = a.ring();
  if (f.ring() != ring) throw Error(ErrorKind::structural, "twist ring mismatch");
  std::vector<WeylOp> twisted;
  for (size_t i = 0; i < ring.nvars; ++i)
    twisted.push_back(WeylOp::derivation(ring, i) - WeylOp::from_poly(partial_derivative(f, i)));
  WeylOp out(ring);
  for (const auto& [k, c] : a.terms()) {
    WeylOp term = WeylOp::term(ring, k.x, Monomial(ring.nvars), static_cast<int64_t>(c));
    // The twisted generators for distinct variables commute (the mixed
    // partials of f agree), so per-variable powers may be multiplied in any
    // fixed order.
    for (size_t i = 0; i < ring.nvars; ++i)
      for (uint32_t rep = 0; rep < k.d[i]; ++rep) term = weyl_mul(term, twisted[i]);
    out = out + term;
  }
  return out;
}

Connection::Connection(const Ring& ring, size_t rank, std::vector<PolyMatrix> matrices)
    : ring_(ring), rank_(rank), a_(std::move(matrices)) {
  if (a_.size() != ring.nvars)
    throw Error(ErrorKind::structural, "connection needs one matrix per variable");
  for (const auto& m : a_)
    if (m.rows() != rank || m.cols() != rank || m.ring() != ring)
      throw Error(ErrorKind::structural, "connection matrix extent mismatch");
  // Flatness: d_i(A_j) - d_j(A_i) + [A_i, A_j] = 0.
  for (size_t i = 0; i < a_.size(); ++i)
    for (size_t j = i + 1; j < a_.size(); ++j) {
      PolyMatrix curv =
          partial_derivative(a_[j], i) - partial_derivative(a_[i], j) + commutator(a_[i], a_[j]);
      if (!curv.is_zero())
        throw Error(ErrorKind::structural, "connection is not flat");
    }
}

Connection Connection::trivial(const Ring& ring, size_t rank) {
  std::vector<PolyMatrix> mats(ring.nvars, PolyMatrix(rank, rank, ring));
  return Connection(ring, rank, std::move(mats));
}

Connection Connection::twisted_line(const Poly& f) {
  const Ring& ring = f.ring();
  std::vector<PolyMatrix> mats;
  for (size_t i = 0; i < ring.nvars; ++i) {
    PolyMatrix m(1, 1, ring);
    m.at(0, 0) = -partial_derivative(f, i);
    mats.push_back(std::move(m));
  }
  return Connection(ring, 1, std::move(mats));
}

namespace {

// Small dense matrix of Weyl operators, just enough for nabla powers.
struct WeylMatrix {
  size_t n;
  Ring ring;
  std::vector<WeylOp> a;

  WeylMatrix(size_t n_, const Ring& r) : n(n_), ring(r), a(n_ * n_, WeylOp(r)) {}
  WeylOp& at(size_t i, size_t j) { return a[i * n + j]; }
  const WeylOp& at(size_t i, size_t j) const { return a[i * n + j]; }

  WeylMatrix mul(const WeylMatrix& o) const {
    WeylMatrix out(n, ring);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        if (at(i, k).is_zero()) continue;
        for (size_t j = 0; j < n; ++j) {
          if (o.at(k, j).is_zero()) continue;
          out.at(i, j) = out.at(i, j) + weyl_mul(at(i, k), o.at(k, j));
        }
      }
    return out;
  }
};

WeylMatrix covariant_derivative(const Connection& conn, const VectorField& theta) {
  const Ring& ring = conn.ring();
  WeylMatrix m(conn.rank(), ring);
  WeylOp scalar = theta.as_operator();
  for (size_t i = 0; i < conn.rank(); ++i) m.at(i, i) = scalar;
  for (size_t v = 0; v < ring.nvars; ++v) {
    if (theta.coeffs[v].is_zero()) continue;
    for (size_t i = 0; i < conn.rank(); ++i)
      for (size_t j = 0; j < conn.rank(); ++j) {
        const Poly& entry = conn.matrix(v).at(i, j);
        if (entry.is_zero()) continue;
        m.at(i, j) = m.at(i, j) + WeylOp::from_poly(theta.coeffs[v] * entry);
      }
  }
  return m;
}

}  // namespace

PolyMatrix p_curvature(const Connection& conn, const VectorField& theta) {
  const Ring& ring = conn.ring();
  if (theta.ring() != ring) throw Error(ErrorKind::structural, "vector field ring mismatch");
  WeylMatrix nabla = covariant_derivative(conn, theta);
  WeylMatrix acc = nabla;
  for (uint32_t i = 1; i < ring.p; ++i) acc = acc.mul(nabla);
  WeylMatrix rest = covariant_derivative(conn, restricted_power(theta));

  PolyMatrix out(conn.rank(), conn.rank(), ring);
  for (size_t i = 0; i < conn.rank(); ++i)
    for (size_t j = 0; j < conn.rank(); ++j) {
      WeylOp entry = acc.at(i, j) - rest.at(i, j);
      auto poly = entry.as_multiplication_operator();
      if (!poly)
        throw Error(ErrorKind::structural, "p-curvature entry is not O-linear");
      out.at(i, j) = *poly;
    }
  return out;
}

namespace {

class WeylParser {
public:
  WeylParser(const std::string& text, const Ring& ring) : s_(text), ring_(ring) {}

  WeylOp parse() {
    WeylOp r = expression();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse, "operator syntax error at position " +
                                      std::to_string(pos_ + 1) + ": " + what);
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

  uint64_t integer() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected integer");
    uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (1ull << 30)) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }

  WeylOp expression() {
    bool neg = false;
    skip_ws();
    if (eat('-')) neg = true;
    else eat('+');
    WeylOp acc = term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  WeylOp term() {
    WeylOp acc = factor();
    while (eat('*')) acc = weyl_mul(acc, factor());
    return acc;
  }

  WeylOp factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected factor");
    char c = s_[pos_];
    WeylOp base(ring_);
    if (c == '(') {
      ++pos_;
      base = expression();
      if (!eat(')')) fail("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      base = WeylOp::constant(ring_, static_cast<int64_t>(integer() % ring_.p));
    } else if (c == ring_.prefix || c == 'd') {
      bool is_d = c == 'd';
      ++pos_;
      uint64_t idx = integer();
      if (idx >= ring_.nvars) fail("variable index out of range for this ring");
      base = is_d ? WeylOp::derivation(ring_, static_cast<size_t>(idx))
                  : WeylOp::coordinate(ring_, static_cast<size_t>(idx));
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    if (eat('^')) {
      uint64_t e = integer();
      if (e > 1024) fail("exponent too large");
      base = base.pow(e);
    }
    return base;
  }

  const std::string& s_;
  const Ring& ring_;
  size_t pos_ = 0;
};

}  // namespace

WeylOp parse_weyl(const std::string& text, const Ring& ring) {
  return WeylParser(text, ring).parse();
}

}  // namespace chp
