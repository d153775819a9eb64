#include "field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace weil {
namespace {

// Dense polynomial over F_p, coefficients little-endian, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

// a mod m, m monic.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  while (a.size() >= m.size()) {
    std::uint32_t c = a.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::uint32_t t = (c * m[i]) % p;
      a[i + shift] = (a[i + shift] + p - t) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m,
                 std::uint32_t p) {
  return poly_mod(poly_mul(a, b, p), m, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // Make b monic for the reduction step.
    Poly bm = b;
    std::uint32_t lead = bm.back();
    if (lead != 1) {
      // Inverse of lead mod p by Fermat.
      std::uint32_t inv = 1, base = lead, e = p - 2;
      while (e) {
        if (e & 1) inv = (inv * base) % p;
        base = (base * base) % p;
        e >>= 1;
      }
      for (auto& c : bm) c = (c * inv) % p;
    }
    Poly r = poly_mod(a, bm, p);
    a = b;
    b = r;
  }
  return a;
}

// x^(p^e) mod m via repeated Frobenius (p-th power) of x.
Poly frob_power_of_x(const Poly& m, std::uint32_t p, std::uint32_t e) {
  Poly x = {0, 1};
  Poly r = x;
  for (std::uint32_t i = 0; i < e; ++i) {
    // r <- r^p mod m by square-and-multiply on the exponent p.
    Poly acc = {1};
    Poly base = r;
    std::uint32_t ee = p;
    while (ee) {
      if (ee & 1) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
      ee >>= 1;
    }
    r = acc;
  }
  return r;
}

bool is_irreducible(const Poly& m, std::uint32_t p, std::uint32_t k) {
  // Rabin test: x^{p^k} == x mod m, and gcd(x^{p^{k/r}} - x, m) = 1 for
  // every prime r dividing k.
  Poly x = {0, 1};
  Poly xk = frob_power_of_x(m, p, k);
  if (xk != x) return false;
  std::uint32_t n = k;
  for (std::uint32_t r = 2; r <= n; ++r) {
    if (n % r != 0) continue;
    while (n % r == 0) n /= r;
    Poly d = frob_power_of_x(m, p, k / r);
    // d - x
    Poly diff = d;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    Poly g = poly_gcd(diff, m, p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> factor_u64(std::uint64_t n) {
  std::vector<std::uint32_t> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(static_cast<std::uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(static_cast<std::uint32_t>(n));
  return fs;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t FieldSpec::add(std::uint32_t a, std::uint32_t b) const {
  // Digitwise base-p addition of coefficient vectors.
  std::uint32_t r = 0, mul = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uint32_t da = a % p, db = b % p;
    a /= p;
    b /= p;
    r += ((da + db) % p) * mul;
    mul *= p;
  }
  return r;
}

std::uint32_t FieldSpec::pow(std::uint32_t a, long long e) const {
  if (a == 0) {
    if (e <= 0) throw FieldError("0 raised to non-positive power");
    return 0;
  }
  long long m = q - 1;
  long long ee = ((e % m) + m) % m;
  return exp_tab_[(static_cast<std::uint64_t>(log_tab_[a]) * ee) % (q - 1)];
}

std::uint32_t FieldSpec::order(std::uint32_t a) const {
  if (a == 0) throw FieldError("order of zero");
  std::uint32_t d = std::gcd(log_tab_[a], q - 1);
  return (q - 1) / d;
}

std::unique_ptr<FieldSpec> FieldSpec::make(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p) || p == 2) throw FieldError("characteristic must be an odd prime");
  if (k == 0) throw FieldError("degree must be positive");
  double qd = std::pow(static_cast<double>(p), static_cast<double>(k));
  if (qd > 1.0e6) throw FieldError("field order exceeds 10^6");

  auto F = std::make_unique<FieldSpec>();
  F->p = p;
  F->k = k;
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  F->q = q;

  // Smallest irreducible monic modulus in ascending coefficient-tuple order.
  F->modulus.assign(k, 0);
  if (k == 1) {
    F->modulus[0] = 0;  // modulus x, i.e. arithmetic mod p
  } else {
    bool found = false;
    for (std::uint32_t m = 1; m < q && !found; ++m) {
      Poly f(k + 1, 0);
      std::uint32_t mm = m;
      for (std::uint32_t i = 0; i < k; ++i) {
        f[i] = mm % p;
        mm /= p;
      }
      f[k] = 1;
      if (is_irreducible(f, p, k)) {
        for (std::uint32_t i = 0; i < k; ++i) F->modulus[i] = f[i];
        found = true;
      }
    }
    if (!found) throw FieldError("no irreducible modulus found");
  }

  // Raw multiplication on indices (used only during table construction).
  Poly mpoly(k + 1, 0);
  for (std::uint32_t i = 0; i < k; ++i) mpoly[i] = F->modulus[i];
  mpoly[k] = 1;
  auto raw_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (k == 1) return (a * b) % p;
    Poly fa, fb;
    for (std::uint32_t x = a; x; x /= p) fa.push_back(x % p);
    for (std::uint32_t x = b; x; x /= p) fb.push_back(x % p);
    Poly r = poly_mulmod(fa, fb, mpoly, p);
    std::uint32_t out = 0, mul = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      out += (i < r.size() ? r[i] : 0) * mul;
      mul *= p;
    }
    return out;
  };
  auto raw_pow = [&](std::uint32_t a, std::uint64_t e) -> std::uint32_t {
    std::uint32_t r = 1, b = a;
    while (e) {
      if (e & 1) r = raw_mul(r, b);
      b = raw_mul(b, b);
      e >>= 1;
    }
    return r;
  };

  // Smallest generator in element-index order.
  auto prime_factors = factor_u64(q - 1);
  std::uint32_t gen = 0;
  for (std::uint32_t a = 2; a < q; ++a) {
    bool ok = true;
    for (std::uint32_t r : prime_factors) {
      if (raw_pow(a, (q - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = a;
      break;
    }
  }
  if (gen == 0) throw FieldError("no generator found");
  F->gen = gen;

  // Exponent / log tables.
  F->exp_tab_.assign(q - 1, 0);
  F->log_tab_.assign(q, 0);
  std::uint32_t cur = 1;
  for (std::uint32_t j = 0; j < q - 1; ++j) {
    F->exp_tab_[j] = cur;
    F->log_tab_[cur] = j;
    cur = raw_mul(cur, gen);
  }
  if (cur != 1) throw FieldError("generator order mismatch");

  // Negation table (digitwise).
  F->neg_tab_.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t r = 0, mul = 1, x = a;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint32_t d = x % p;
      x /= p;
      r += ((p - d) % p) * mul;
      mul *= p;
    }
    F->neg_tab_[a] = r;
  }

  // Absolute trace table: x + x^p + .. + x^{p^{k-1}}, landing in 0..p-1.
  F->abs_trace_.assign(q, 0);
  for (std::uint32_t a = 1; a < q; ++a) {
    std::uint32_t s = 0, t = a;
    for (std::uint32_t i = 0; i < k; ++i) {
      s = F->add(s, t);
      t = raw_pow(t, p);
    }
    if (s >= p) throw FieldError("trace not in prime field");
    F->abs_trace_[a] = s;
  }

  // Roots of unity.
  const double two_pi = 2.0 * std::numbers::pi;
  F->zeta_.resize(q - 1);
  for (std::uint32_t j = 0; j < q - 1; ++j)
    F->zeta_[j] = std::polar(1.0, two_pi * j / (q - 1));
  F->zeta_p_.resize(p);
  for (std::uint32_t j = 0; j < p; ++j)
    F->zeta_p_[j] = std::polar(1.0, two_pi * j / p);

  return F;
}

void FieldSpec::register_subfield(const FieldSpec& sub) {
  if (sub.p != p || k % sub.k != 0)
    throw FieldError("not a subfield");
  if (subfields_.count(sub.q)) return;
  Subfield S;
  S.sub = &sub;
  S.embed.assign(sub.q, 0);
  S.project.assign(q, kNoElem);

  if (sub.q == q) {
    for (std::uint32_t a = 0; a < q; ++a) {
      S.embed[a] = a;
      S.project[a] = a;
    }
    subfields_[sub.q] = std::move(S);
    return;
  }

  // Minimal polynomial of sub.gen over F_p: prod_i (X - gen^{p^i}).
  std::uint32_t d = sub.k;
  std::vector<std::uint32_t> coeffs = {1};  // poly over `sub`, little-endian
  std::uint32_t root = sub.gen;
  for (std::uint32_t i = 0; i < d; ++i) {
    std::vector<std::uint32_t> next(coeffs.size() + 1, 0);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      next[j + 1] = sub.add(next[j + 1], coeffs[j]);
      next[j] = sub.sub(next[j], sub.mul(root, coeffs[j]));
    }
    coeffs = next;
    root = sub.pow(root, sub.p);
  }
  // Coefficients must lie in the prime field (indices < p).
  for (std::uint32_t c : coeffs)
    if (c >= sub.p) throw FieldError("minimal polynomial not over prime field");

  // Find the first root (element-index order) of that polynomial here.
  std::uint32_t zeta_sub = kNoElem;
  for (std::uint32_t z = 1; z < q; ++z) {
    std::uint32_t acc = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) {
      acc = add(mul(acc, z), coeffs[j]);  // scalars embed as themselves
    }
    if (acc == 0) {
      zeta_sub = z;
      break;
    }
  }
  if (zeta_sub == kNoElem) throw FieldError("no embedding root found");

  S.embed[0] = 0;
  for (std::uint32_t j = 0; j < sub.q - 1; ++j) {
    std::uint32_t img = pow(zeta_sub, j);
    S.embed[sub.exp_tab_[j]] = img;
    S.project[img] = sub.exp_tab_[j];
  }
  S.project[0] = 0;
  // Sanity: the embedding must be additive.
  for (std::uint32_t a = 1; a < sub.q; ++a) {
    if (S.embed[sub.add(a, 1)] != add(S.embed[a], S.embed[1]))
      throw FieldError("embedding is not additive");
  }
  subfields_[sub.q] = std::move(S);
}

std::uint32_t FieldSpec::embed(std::uint32_t q0, std::uint32_t a_sub) const {
  auto it = subfields_.find(q0);
  if (it == subfields_.end()) throw FieldError("subfield not registered");
  return it->second.embed.at(a_sub);
}

std::uint32_t FieldSpec::project_nothrow(std::uint32_t q0,
                                         std::uint32_t a) const {
  auto it = subfields_.find(q0);
  if (it == subfields_.end()) throw FieldError("subfield not registered");
  return it->second.project.at(a);
}

std::uint32_t FieldSpec::project(std::uint32_t q0, std::uint32_t a) const {
  std::uint32_t r = project_nothrow(q0, a);
  if (r == kNoElem) throw FieldError("element not in subfield");
  return r;
}

std::uint32_t FieldSpec::norm_to(std::uint32_t q0, std::uint32_t a) const {
  if (a == 0) return 0;
  std::uint64_t e = (q - 1) / (q0 - 1);
  return project(q0, exp_tab_[(static_cast<std::uint64_t>(log_tab_[a]) * e) %
                              (q - 1)]);
}

std::uint32_t FieldSpec::trace_to(std::uint32_t q0, std::uint32_t a) const {
  std::uint32_t s = 0, t = a;
  auto it = subfields_.find(q0);
  if (it == subfields_.end()) throw FieldError("subfield not registered");
  std::uint32_t steps = k / it->second.sub->k;
  for (std::uint32_t i = 0; i < steps; ++i) {
    s = add(s, t);
    t = frob(t, q0);
  }
  return project(q0, s);
}

std::vector<std::uint32_t> FieldSpec::frob_orbit(std::uint32_t q0,
                                                 std::uint32_t a) const {
  std::vector<std::uint32_t> orb;
  std::uint32_t t = a;
  do {
    orb.push_back(t);
    t = frob(t, q0);
  } while (t != a);
  return orb;
}

cplx FieldSpec::gauss_sum(std::uint32_t t) const {
  cplx s = 0.0;
  for (std::uint32_t x = 0; x < q; ++x) s += add_char(t, mul(x, x));
  return s;
}

Tower Tower::make(std::uint32_t q) {
  if (!is_prime(q) || q == 2) throw FieldError("q must be an odd prime");
  Tower T;
  T.q = q;
  T.F = FieldSpec::make(q, 1);
  T.E = FieldSpec::make(q, 2);
  T.K = FieldSpec::make(q, 3);
  T.E4 = FieldSpec::make(q, 4);
  double l6 = std::pow(static_cast<double>(q), 6.0);
  if (l6 > 1.0e6) throw FieldError("q^6 exceeds 10^6");
  T.L6 = FieldSpec::make(q, 6);

  T.E->register_subfield(*T.F);
  T.K->register_subfield(*T.F);
  T.E4->register_subfield(*T.E);
  T.E4->register_subfield(*T.F);
  T.L6->register_subfield(*T.K);
  T.L6->register_subfield(*T.E);
  T.L6->register_subfield(*T.F);
  return T;
}

}  // namespace weil
