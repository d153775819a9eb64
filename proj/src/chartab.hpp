// Irreducible characters of GL2 over a finite field: label enumeration,
// character evaluation, inner products, duals, base change, and an
// independent small matrix model for the cuspidal characters.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gl2.hpp"

namespace weil {

struct IrrLabel {
  enum Kind : std::uint8_t { OneDim, Steinberg, Principal, Cuspidal };
  Kind kind = OneDim;
  // Character indices (dlog exponents): j1 over the base field's unit group
  // for OneDim/Steinberg/Principal (with j2), over the quadratic extension's
  // unit group for Cuspidal.
  std::uint32_t j1 = 0, j2 = 0;

  bool operator==(const IrrLabel& o) const {
    return kind == o.kind && j1 == o.j1 && j2 == o.j2;
  }
  bool operator<(const IrrLabel& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (j1 != o.j1) return j1 < o.j1;
    return j2 < o.j2;
  }
};

class CharTable {
 public:
  // `F` is the coefficient field of the group, `ext` its registered
  // quadratic extension (source of cuspidal parameters).
  CharTable(const FieldSpec& F, const FieldSpec& ext);

  const FieldSpec& field() const { return *F_; }
  const FieldSpec& ext() const { return *ext_; }
  const ClassList& classes() const { return classes_; }
  const std::vector<IrrLabel>& labels() const { return labels_; }

  std::uint64_t dim(const IrrLabel& l) const;
  cplx eval(const IrrLabel& l, const ConjClassInfo& c) const;
  cplx eval(const IrrLabel& l, std::uint32_t class_index) const {
    return eval(l, classes_[class_index]);
  }
  // Character value at an arbitrary group element.
  cplx eval_at(const IrrLabel& l, const GroupElement& g) const {
    return eval(l, classes_[classes_.class_of(g)]);
  }

  // Canonical form: Principal indices sorted, Cuspidal index replaced by the
  // minimum of its Galois orbit {j, j*Q mod (Q^2-1)}.  Throws on invalid
  // labels (equal Principal indices, Galois-fixed Cuspidal index).
  IrrLabel canonical(IrrLabel l) const;
  IrrLabel dual(const IrrLabel& l) const;
  std::uint32_t label_index(const IrrLabel& l) const;
  std::string label_str(const IrrLabel& l) const;

  // Hermitian inner product of class functions given by their values on the
  // classes (in class order): (1/|G|) sum_c |c| f(c) conj(g(c)).
  cplx inner_product(const std::vector<cplx>& f,
                     const std::vector<cplx>& g) const;

 private:
  const FieldSpec* F_;
  const FieldSpec* ext_;
  ClassList classes_;
  std::vector<IrrLabel> labels_;
  std::map<IrrLabel, std::uint32_t> index_;
};

// Index of the character chi_j of sub^x composed with the norm map
// big^x -> sub^x, as a character index of big^x.
std::uint32_t norm_composed_index(const FieldSpec& big, const FieldSpec& sub,
                                  std::uint64_t j);

// Base change lift along the extension of coefficient fields src -> dst,
// where [dst.field() : src.field()] is 2 or 3.  For degree 2 the cuspidal
// characters become principal series; for degree 3 they stay cuspidal.
IrrLabel base_change(const CharTable& src, const CharTable& dst,
                     const IrrLabel& l);

// Character of the explicit cuspidal model with parameter Lambda = chi_j of
// ext^x (j regular), computed by matrix traces on the (q-1)-dimensional
// space of functions on the nontrivial additive characters of F.  Returned
// in the class order of `tab` (which must be the table for GL2(F) with
// quadratic extension `ext`).
std::vector<cplx> cuspidal_model_char(const CharTable& tab, std::uint32_t j);

}  // namespace weil
