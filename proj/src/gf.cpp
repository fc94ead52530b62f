#include "ssc/gf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ssc::gf {
namespace {

// Largest supported field order: floor(sqrt(2^63)).  Keeps p below 2^32,
// so coefficient products stay within a 64-bit signed range, and keeps
// p^degree - 1 exact as a signed 64-bit value for downstream index math.
constexpr std::uint64_t kMaxOrder = 3037000499ULL;

std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base)
      throw std::domain_error("field order exceeds the exact integer range");
    r *= base;
  }
  return r;
}

// Dense polynomial over GF(p): c[i] multiplies x^i, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f in place, f monic.  Coefficient products fit: p < 2^32.
void poly_reduce(Poly& a, const Poly& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  for (std::size_t i = a.size(); i-- > k;) {
    const std::uint64_t c = a[i];
    if (c == 0) continue;
    a[i] = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t t = (c * f[j]) % p;
      a[i - k + j] = (a[i - k + j] + p - t) % p;
    }
  }
  trim(a);
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  poly_reduce(r, f, p);
  return r;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  poly_reduce(base, f, p);
  Poly r{1};
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
  // Fermat: a^(p-2) mod p, p prime, a != 0.
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = (r * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return r;
}

Poly poly_rem(Poly a, const Poly& b, std::uint64_t p) {
  // b non-zero, not necessarily monic.
  const std::uint64_t lc_inv = inv_mod_p(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = (a.back() * lc_inv) % p;
    const std::size_t shift = a.size() - b.size();
    if (c != 0)
      for (std::size_t j = 0; j < b.size(); ++j) {
        const std::uint64_t t = (c * b[j]) % p;
        a[shift + j] = (a[shift + j] + p - t) % p;
      }
    a.pop_back();
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin test: f (monic, degree k >= 1) is irreducible over GF(p) iff
// x^(p^k) == x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for each prime r|k.
bool is_irreducible(const Poly& f, std::uint64_t p,
                    const std::vector<std::uint64_t>& deg_primes) {
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  const Poly x{0, 1};

  std::uint64_t pk = 1;
  for (std::size_t i = 0; i < k; ++i) pk *= p;  // caller bounds p^k

  if (poly_powmod(x, pk, f, p) != x) return false;

  for (std::uint64_t r : deg_primes) {
    std::uint64_t e = 1;
    for (std::size_t i = 0; i < k / r; ++i) e *= p;
    Poly h = poly_powmod(x, e, f, p);
    // h - x
    if (h.size() < 2) h.resize(2, 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    if (h.empty()) return false;         // f divides x^(p^(k/r)) - x
    if (poly_gcd(f, h, p).size() != 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t u) noexcept {
  if (u < 2) return false;
  if (u % 2 == 0) return u == 2;
  if (u % 3 == 0) return u == 3;
  for (std::uint64_t i = 5; i <= u / i; i += 6) {
    if (u % i == 0 || u % (i + 2) == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> factorize(std::uint64_t u) {
  if (u < 2) throw std::domain_error("factorize: argument must be >= 2");
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d : {2ULL, 3ULL}) {
    while (u % d == 0) {
      fs.push_back(d);
      u /= d;
    }
  }
  for (std::uint64_t i = 5; i <= u / i; i += 6) {
    for (std::uint64_t d : {i, i + 2}) {
      while (u % d == 0) {
        fs.push_back(d);
        u /= d;
      }
    }
  }
  if (u > 1) fs.push_back(u);
  return fs;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t u) {
  std::vector<std::uint64_t> fs = factorize(u);
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  return fs;
}

PrimePower prime_power(std::uint64_t q) {
  if (q < 2) throw std::domain_error("prime_power: q must be >= 2");
  if (q > kMaxOrder)
    throw std::domain_error("prime_power: q^2 - 1 exceeds the exact integer range");
  const std::vector<std::uint64_t> fs = factorize(q);
  for (std::uint64_t f : fs)
    if (f != fs[0]) throw std::domain_error("prime_power: q is not a prime power");
  return PrimePower{fs[0], static_cast<unsigned>(fs.size()), q};
}

std::optional<PrimePower> try_prime_power(std::uint64_t q) noexcept {
  try {
    return prime_power(q);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

FieldCtx::FieldCtx(std::uint64_t p, unsigned degree) : p_(p), degree_(degree) {
  if (!is_prime(p)) throw std::domain_error("FieldCtx: p must be prime");
  if (degree == 0) throw std::domain_error("FieldCtx: degree must be >= 1");
  order_ = checked_pow(p, degree, kMaxOrder * kMaxOrder);
  if (p > kMaxOrder)
    throw std::domain_error("field order exceeds the exact integer range");

  // Canonical modulus: scan monic candidates ordered by their coefficient
  // sequence read highest-degree first as a base-p integer; take the first
  // irreducible.  v encodes the non-leading coefficients in that order.
  const std::vector<std::uint64_t> deg_primes =
      degree == 1 ? std::vector<std::uint64_t>{} : distinct_prime_factors(degree);
  for (std::uint64_t v = 0;; ++v) {
    Poly f(degree + 1, 0);
    f[degree] = 1;
    std::uint64_t rest = v;
    for (unsigned i = 0; i < degree; ++i) {  // c_0 is the least significant digit
      f[i] = rest % p;
      rest /= p;
    }
    if (rest != 0)
      throw std::domain_error("FieldCtx: no irreducible candidate found");  // unreachable
    if (is_irreducible(f, p, deg_primes)) {
      mod_ = std::move(f);
      break;
    }
  }
}

FieldElement FieldCtx::zero() const { return FieldElement(degree_, 0); }

FieldElement FieldCtx::one() const { return scalar(1); }

FieldElement FieldCtx::scalar(std::uint64_t c) const {
  FieldElement a(degree_, 0);
  a[0] = c % p_;
  return a;
}

FieldElement FieldCtx::from_value(std::uint64_t v) const {
  if (v >= order_) throw std::domain_error("from_value: index out of range");
  FieldElement a(degree_, 0);
  for (unsigned i = 0; i < degree_; ++i) {
    a[i] = v % p_;
    v /= p_;
  }
  return a;
}

std::uint64_t FieldCtx::value(const FieldElement& a) const {
  check(a);
  std::uint64_t v = 0;
  for (unsigned i = degree_; i-- > 0;) v = v * p_ + a[i];
  return v;
}

bool FieldCtx::is_zero(const FieldElement& a) const {
  check(a);
  return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

void FieldCtx::check(const FieldElement& a) const {
  if (a.size() != degree_)
    throw std::domain_error("field element has wrong length for this context");
  for (std::uint64_t c : a)
    if (c >= p_) throw std::domain_error("field element coefficient out of range");
}

FieldElement FieldCtx::add(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  FieldElement r(degree_);
  for (unsigned i = 0; i < degree_; ++i) r[i] = (a[i] + b[i]) % p_;
  return r;
}

FieldElement FieldCtx::sub(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  FieldElement r(degree_);
  for (unsigned i = 0; i < degree_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
  return r;
}

FieldElement FieldCtx::mul(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  Poly pa(a.begin(), a.end()), pb(b.begin(), b.end());
  trim(pa);
  trim(pb);
  Poly r = poly_mulmod(pa, pb, mod_, p_);
  r.resize(degree_, 0);
  return r;
}

FieldElement FieldCtx::pow(const FieldElement& a, std::uint64_t e) const {
  check(a);
  Poly pa(a.begin(), a.end());
  trim(pa);
  Poly r = poly_powmod(pa, e, mod_, p_);
  r.resize(degree_, 0);
  return r;
}

bool is_primitive(const FieldCtx& ctx, const FieldElement& g) {
  if (ctx.is_zero(g)) throw std::domain_error("is_primitive: zero element");
  const std::uint64_t group = ctx.order() - 1;
  if (group == 1) return true;  // GF(2): the only unit generates trivially
  for (std::uint64_t r : distinct_prime_factors(group)) {
    if (ctx.pow(g, group / r) == ctx.one()) return false;
  }
  return true;
}

FieldElement find_primitive(const FieldCtx& ctx) {
  const std::uint64_t group = ctx.order() - 1;
  if (group == 1) return ctx.one();
  const std::vector<std::uint64_t> primes = distinct_prime_factors(group);
  for (std::uint64_t v = 1; v < ctx.order(); ++v) {
    const FieldElement g = ctx.from_value(v);
    bool ok = true;
    for (std::uint64_t r : primes) {
      if (ctx.pow(g, group / r) == ctx.one()) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::domain_error("find_primitive: no generator found");  // unreachable
}

bool in_subfield(const FieldCtx& ctx, const FieldElement& x, std::uint64_t q) {
  if (ctx.degree() % 2 != 0)
    throw std::domain_error("in_subfield: context degree must be even");
  std::uint64_t expect = 1;
  for (unsigned i = 0; i < ctx.degree() / 2; ++i) expect *= ctx.p();
  if (q != expect)
    throw std::domain_error("in_subfield: q must be p^(degree/2)");
  return ctx.pow(x, q) == x;
}

}  // namespace ssc::gf
