// Finite field arithmetic via exponent/logarithm tables, with subfield
// embeddings, additive/multiplicative characters and Gauss sums.
//
// Elements of F_{p^k} are represented by their index in 0..p^k-1: the index is
// the base-p digit encoding of the coefficient vector of the element written
// in the power basis 1, x, .., x^{k-1} of F_p[x]/(modulus).  Index 0 is the
// zero element and indices 0..p-1 are the prime-subfield scalars.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace weil {

using cplx = std::complex<double>;

inline constexpr std::uint32_t kNoElem = 0xffffffffu;

class FieldError : public std::runtime_error {
 public:
  explicit FieldError(const std::string& msg) : std::runtime_error(msg) {}
};

class FieldSpec {
 public:
  std::uint32_t p = 0;  // characteristic (odd prime)
  std::uint32_t k = 0;  // extension degree over the prime field
  std::uint32_t q = 0;  // field order p^k
  // Monic modulus x^k + c_{k-1} x^{k-1} + .. + c_0; coefficients c_0..c_{k-1}.
  std::vector<std::uint32_t> modulus;
  std::uint32_t gen = 0;  // canonical multiplicative generator (element index)

  // Deterministic construction: smallest irreducible modulus (ascending
  // coefficient-tuple order), then smallest generator in element-index order.
  static std::unique_ptr<FieldSpec> make(std::uint32_t p, std::uint32_t k);

  FieldSpec() = default;
  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

  // --- basic arithmetic on element indices ---
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const { return neg_tab_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return add(a, neg_tab_[b]);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_tab_[(static_cast<std::uint64_t>(log_tab_[a]) + log_tab_[b]) %
                    (q - 1)];
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw FieldError("inverse of zero");
    return exp_tab_[(q - 1 - log_tab_[a]) % (q - 1)];
  }
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
    return mul(a, inv(b));
  }
  // a^e for any integer e (a != 0 when e < 0).
  std::uint32_t pow(std::uint32_t a, long long e) const;
  // Frobenius relative to the subfield of order q0: a -> a^q0.
  std::uint32_t frob(std::uint32_t a, std::uint32_t q0) const {
    return pow(a, q0);
  }

  std::uint32_t exp(std::uint32_t j) const { return exp_tab_[j % (q - 1)]; }
  std::uint32_t dlog(std::uint32_t a) const {
    if (a == 0) throw FieldError("dlog of zero");
    return log_tab_[a];
  }
  // Multiplicative order of a nonzero element.
  std::uint32_t order(std::uint32_t a) const;

  // --- subfield support ---
  // Register F_{q0} (q0 = p^d, d | k) as a subfield.  Keeps a pointer to
  // `sub`, which must outlive this field.
  void register_subfield(const FieldSpec& sub);
  bool has_subfield(std::uint32_t q0) const {
    return subfields_.count(q0) != 0;
  }
  // Canonical embedding F_{q0} -> this field, and its partial inverse.
  std::uint32_t embed(std::uint32_t q0, std::uint32_t a_sub) const;
  std::uint32_t project(std::uint32_t q0, std::uint32_t a) const;  // kNoElem if outside
  bool in_subfield(std::uint32_t q0, std::uint32_t a) const {
    return project_nothrow(q0, a) != kNoElem;
  }

  // Relative norm / trace down to the registered subfield of order q0,
  // returned as an element index of that subfield.
  std::uint32_t norm_to(std::uint32_t q0, std::uint32_t a) const;
  std::uint32_t trace_to(std::uint32_t q0, std::uint32_t a) const;
  // Galois orbit of `a` over F_{q0}: {a, a^q0, a^{q0^2}, ..}.
  std::vector<std::uint32_t> frob_orbit(std::uint32_t q0,
                                        std::uint32_t a) const;

  // Absolute trace down to the prime field, as an integer in 0..p-1.
  std::uint32_t abs_trace(std::uint32_t a) const { return abs_trace_[a]; }

  // --- characters ---
  // Additive character psi_t(x) = exp(2*pi*i * Tr_{F_q/F_p}(t*x) / p).
  cplx add_char(std::uint32_t t, std::uint32_t x) const {
    return zeta_p_[abs_trace_[mul(t, x)]];
  }
  // Multiplicative character chi_j(x) = zeta_{q-1}^{j * dlog(x)}, x != 0.
  cplx mult_char(std::uint64_t j, std::uint32_t x) const {
    if (x == 0) throw FieldError("mult_char at zero");
    return zeta_[(j * log_tab_[x]) % (q - 1)];
  }
  // Quadratic-residue symbol on F_q^x: +1 for squares, -1 otherwise.
  int legendre(std::uint32_t x) const {
    if (x == 0) throw FieldError("legendre at zero");
    return (log_tab_[x] % 2 == 0) ? 1 : -1;
  }
  // Gauss sum gamma(psi_t) = sum_x psi_t(x^2).
  cplx gauss_sum(std::uint32_t t) const;
  // Primitive (q-1)-th root of unity power: zeta^{j mod (q-1)}.
  cplx zeta(std::uint64_t j) const { return zeta_[j % (q - 1)]; }
  cplx zeta_p(std::uint32_t j) const { return zeta_p_[j % p]; }

 private:
  struct Subfield {
    const FieldSpec* sub = nullptr;
    std::vector<std::uint32_t> embed;    // size sub->q
    std::vector<std::uint32_t> project;  // size q, kNoElem if not in image
  };

  std::uint32_t project_nothrow(std::uint32_t q0, std::uint32_t a) const;

  std::vector<std::uint32_t> exp_tab_;  // size q-1
  std::vector<std::uint32_t> log_tab_;  // size q (log_tab_[0] unused)
  std::vector<std::uint32_t> neg_tab_;  // size q
  std::vector<std::uint32_t> abs_trace_;  // size q, values in 0..p-1
  std::vector<cplx> zeta_;    // zeta_[j] = exp(2 pi i j/(q-1))
  std::vector<cplx> zeta_p_;  // zeta_p_[j] = exp(2 pi i j/p)
  std::map<std::uint32_t, Subfield> subfields_;
};

// The tower of fields used throughout: F = F_q and its extensions of degree
// 2, 3, 4 and 6, with all the subfield embeddings the models need.
struct Tower {
  std::uint32_t q = 0;
  std::unique_ptr<FieldSpec> F;   // F_q
  std::unique_ptr<FieldSpec> E;   // F_{q^2}
  std::unique_ptr<FieldSpec> K;   // F_{q^3}
  std::unique_ptr<FieldSpec> E4;  // F_{q^4}  (quadratic over E)
  std::unique_ptr<FieldSpec> L6;  // F_{q^6}  (quadratic over K, cubic over E)

  static Tower make(std::uint32_t q);
};

bool is_prime(std::uint32_t n);

}  // namespace weil
