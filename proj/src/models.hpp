// The three explicit models on q^4(q-1)-dimensional function spaces, with
// operators kept in factored form (monomial factors plus at most one Fourier
// kernel per group element) so that traces cost O(dim).
//
// Points are pairs (space coordinate, psi-index): the underlying function
// spaces consist of maps from {space} x {nontrivial additive characters} to C,
// indexed row-major as point = space_index * (q-1) + tpos, where the additive
// character is psi_t with t = gen^tpos.
#pragma once

#include <memory>

#include "chartab.hpp"

namespace weil {

enum class ModelCase { Triple, FxE, Cubic };

// Shared construction context: the field tower and the character tables of
// the three groups involved.
struct Context {
  std::uint32_t q = 0;
  Tower tower;
  std::unique_ptr<CharTable> tabF;  // GL2(F_q), cuspidal data from F_{q^2}
  std::unique_ptr<CharTable> tabE;  // GL2(F_{q^2}), cuspidal data from F_{q^4}
  std::unique_ptr<CharTable> tabK;  // GL2(F_{q^3}), cuspidal data from F_{q^6}

  static Context make(std::uint32_t q);

  const FieldSpec& F() const { return *tower.F; }
  const FieldSpec& E() const { return *tower.E; }
  const FieldSpec& K() const { return *tower.K; }
};

// One factor of an operator, acting on vectors by
//   (A v)(x) = scale * coeff[x] * v(sigma[x])         (monomial factor)
// or by the model's Fourier kernel times `scale`     (fourier = true).
// Empty sigma means the identity permutation; empty coeff means all ones.
struct Factor {
  bool fourier = false;
  std::vector<std::uint32_t> sigma;
  std::vector<cplx> coeff;
  cplx scale{1.0, 0.0};
};

class Model;

struct FactoredOperator {
  const Model* model = nullptr;
  std::vector<Factor> factors;  // leftmost factor acts last (outermost)

  cplx trace() const;                      // O(dim) with <= 1 Fourier factor
  void apply(std::vector<cplx>& v) const;  // in place
  std::vector<std::vector<cplx>> dense() const;  // for small cross-checks
};

class Model {
 public:
  Model(const Context& ctx, ModelCase mc);

  ModelCase model_case() const { return case_; }
  const Context& context() const { return *ctx_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t dim() const { return dim_; }
  std::uint32_t space_size() const { return space_; }

  // --- point codecs ---
  // Triple: space coordinate encodes a 2x2 matrix over F,
  //   s = ((m11*q + m12)*q + m21)*q + m22.
  // FxE: space coordinate encodes a hermitian matrix [[x, a], [conj a, y]],
  //   s = (x*q^2 + a)*q + y   with x, y in F and a in E.
  // Cubic: space coordinate encodes (beta, y) with beta in K, y in F,
  //   s = beta*q + y.
  std::uint32_t point(std::uint32_t space, std::uint32_t tpos) const {
    return space * (q_ - 1) + tpos;
  }
  std::uint32_t space_of(std::uint32_t pt) const { return pt / (q_ - 1); }
  std::uint32_t tpos_of(std::uint32_t pt) const { return pt % (q_ - 1); }

  // --- operator builders ---
  // Action of (g, 1, 1) resp. (g, 1) resp. g for the first GL2(F) component
  // (Cubic: g ranges over GL2(K)).  Factors are emitted via the Bruhat
  // factorization of g, so at most one of them is a Fourier kernel.
  std::vector<Factor> g_factors(const GroupElement& g) const;
  // Monomial action of (1, g2, g3) in the triple model.
  Factor partner_factor_triple(const GroupElement& g2,
                               const GroupElement& g3) const;
  // Monomial action of (1, h), h in GL2(E), in the FxE model.
  Factor partner_factor_fxe(const GroupElement& h) const;

  FactoredOperator op_triple(const GroupElement& g1, const GroupElement& g2,
                             const GroupElement& g3) const;
  FactoredOperator op_fxe(const GroupElement& g, const GroupElement& h) const;
  FactoredOperator op_cubic(const GroupElement& g) const;

  // Fourier kernel entry (excluding the scalar), zero unless the psi-indices
  // of the two points agree.
  cplx kernel(std::uint32_t pt_out, std::uint32_t pt_in) const;
  cplx fourier_scalar() const;
  // In-place kernel transform (excluding the scalar).
  void fourier_apply(std::vector<cplx>& v) const;

  // psi_t(u) lookup, t = gen^tpos, u an element index of F.
  cplx psi(std::uint32_t tpos, std::uint32_t u) const {
    return psi_[tpos][u];
  }

 private:
  std::vector<Factor> diag_factors(std::uint32_t p, std::uint32_t s) const;
  Factor unipotent_factor(std::uint32_t b) const;

  const Context* ctx_;
  ModelCase case_;
  std::uint32_t q_ = 0, space_ = 0, dim_ = 0;
  std::vector<std::vector<cplx>> psi_;  // [tpos][element of F]
  // FxE: tr_ab_[a1 * q^2 + a2] = index of Tr_{E/F}(a1 * conj(a2)).
  std::vector<std::uint32_t> tr_ab_;
  // Cubic: trk_ab_[b1 * q^3 + b2] = index of Tr_{K/F}(b1 * b2).
  std::vector<std::uint32_t> trk_ab_;
  std::vector<std::uint32_t> conj_e_;   // E conjugation table
  std::vector<std::uint32_t> norm_e_;   // E -> F norm table
};

// --- symplectic side of the cubic model ---
// Vectors of the 4-dimensional F-space W_0 = F + K + K + F, written
// (x, alpha; beta, y) with x, y in F and alpha, beta in K.
struct W0Vector {
  std::uint32_t x = 0, alpha = 0, beta = 0, y = 0;
  bool operator==(const W0Vector& o) const {
    return x == o.x && alpha == o.alpha && beta == o.beta && y == o.y;
  }
};

// Symplectic pairing <w, w'> = x y' - x' y - Tr(alpha beta') + Tr(alpha' beta)
// with values in F.
std::uint32_t w0_pair(const Context& ctx, const W0Vector& w,
                      const W0Vector& w2);
// Action of g in GL2(K) on W_0 (the degree-3 twisted tensor action).
W0Vector w0_act(const Context& ctx, const GroupElement& gK, const W0Vector& w);
// Similitude factor: <gw, gw'> = N_{K/F}(det g) * <w, w'>.
std::uint32_t w0_similitude(const Context& ctx, const GroupElement& gK);

}  // namespace weil
