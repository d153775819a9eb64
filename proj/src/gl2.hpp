// GL(2) over a finite field: elements, Bruhat factorization, conjugacy
// classes with canonical representatives, and fast class lookup.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "field.hpp"

namespace weil {

struct GroupElement {
  const FieldSpec* F = nullptr;
  std::uint32_t a = 1, b = 0, c = 0, d = 1;  // row-major [[a, b], [c, d]]

  std::uint32_t det() const { return F->sub(F->mul(a, d), F->mul(b, c)); }
  std::uint32_t trace() const { return F->add(a, d); }
  bool invertible() const { return det() != 0; }
  bool operator==(const GroupElement& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
};

GroupElement gl2_identity(const FieldSpec& F);
GroupElement gl2_mul(const GroupElement& x, const GroupElement& y);
GroupElement gl2_inv(const GroupElement& x);
GroupElement gl2_transpose(const GroupElement& x);
GroupElement gl2_scalar(const FieldSpec& F, std::uint32_t s);  // s*I, s != 0
std::string gl2_str(const GroupElement& g);

inline std::uint64_t gl2_order(std::uint32_t q) {
  std::uint64_t Q = q;
  return (Q * Q - 1) * (Q * Q - Q);
}

// Pack an element into a single integer (base-q digits a,b,c,d) for set keys.
inline std::uint32_t gl2_pack(const GroupElement& g) {
  std::uint32_t q = g.F->q;
  return ((g.a * q + g.b) * q + g.c) * q + g.d;
}
GroupElement gl2_unpack(const FieldSpec& F, std::uint32_t key);

// Bruhat factorization with respect to the standard Borel:
//   c == 0:  g = u(x) * diag(p, s)                    (has_omega = false)
//   c != 0:  g = u(x) * diag(p, s) * omega * u(y)     (has_omega = true)
// where u(t) = [[1, t], [0, 1]] and omega = [[0, 1], [-1, 0]].
struct BruhatFactorization {
  bool has_omega = false;
  std::uint32_t x = 0;  // upper unipotent parameter (left)
  std::uint32_t p = 1, s = 1;  // diagonal entries
  std::uint32_t y = 0;  // upper unipotent parameter (right, omega case only)
};

BruhatFactorization bruhat_factor(const GroupElement& g);
GroupElement bruhat_compose(const FieldSpec& F, const BruhatFactorization& f);

// Conjugacy class kinds for GL2(F_Q), Q the order of the coefficient field.
enum class ClassKind : std::uint8_t { Central, Jordan, Split, Elliptic };

struct ConjClassInfo {
  ClassKind kind;
  // Parameters, all as dlog indices unless noted:
  //   Central:  u1 = dlog(a)                          (rep a*I)
  //   Jordan:   u1 = dlog(a)                          (rep [[a,1],[0,a]])
  //   Split:    u1 = dlog(a), u2 = dlog(b), u1 < u2   (rep diag(a, b))
  //   Elliptic: u1 = canonical dlog of the eigenvalue x in the quadratic
  //             extension, min(dlog x, dlog x^Q)      (rep companion matrix)
  std::uint32_t u1 = 0, u2 = 0;
  GroupElement rep;
  std::uint64_t size = 0;
};

// Conjugacy classes of GL2 over `F`, using `ext` (the registered quadratic
// extension of F) for elliptic eigenvalues.  Deterministic order: Central
// (u1 ascending), Jordan (u1 ascending), Split (lexicographic (u1, u2)),
// Elliptic (u1 ascending).
class ClassList {
 public:
  ClassList(const FieldSpec& F, const FieldSpec& ext);

  const FieldSpec& field() const { return *F_; }
  const FieldSpec& ext() const { return *ext_; }
  const std::vector<ConjClassInfo>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  const ConjClassInfo& operator[](std::size_t i) const { return classes_[i]; }

  // Index of the conjugacy class containing g, via (det, trace) plus the
  // central/Jordan disambiguation.
  std::uint32_t class_of(const GroupElement& g) const;

 private:
  const FieldSpec* F_;
  const FieldSpec* ext_;
  std::vector<ConjClassInfo> classes_;
  // lookup[trace * q + det] -> class index for non-central, non-Jordan pairs;
  // pairs with a repeated eigenvalue are resolved in class_of.
  std::vector<std::uint32_t> lookup_;
  std::vector<std::uint32_t> central_idx_;  // by dlog of eigenvalue
  std::vector<std::uint32_t> jordan_idx_;
};

}  // namespace weil
