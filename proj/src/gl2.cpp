#include "gl2.hpp"

#include <sstream>

namespace weil {

GroupElement gl2_identity(const FieldSpec& F) {
  return GroupElement{&F, 1, 0, 0, 1};
}

GroupElement gl2_mul(const GroupElement& x, const GroupElement& y) {
  const FieldSpec& F = *x.F;
  return GroupElement{
      &F,
      F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)),
      F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
      F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)),
      F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

GroupElement gl2_inv(const GroupElement& x) {
  const FieldSpec& F = *x.F;
  std::uint32_t di = F.inv(x.det());
  return GroupElement{&F, F.mul(di, x.d), F.mul(di, F.neg(x.b)),
                      F.mul(di, F.neg(x.c)), F.mul(di, x.a)};
}

GroupElement gl2_transpose(const GroupElement& x) {
  return GroupElement{x.F, x.a, x.c, x.b, x.d};
}

GroupElement gl2_scalar(const FieldSpec& F, std::uint32_t s) {
  return GroupElement{&F, s, 0, 0, s};
}

std::string gl2_str(const GroupElement& g) {
  std::ostringstream os;
  os << "[[" << g.a << "," << g.b << "],[" << g.c << "," << g.d << "]]";
  return os.str();
}

GroupElement gl2_unpack(const FieldSpec& F, std::uint32_t key) {
  std::uint32_t q = F.q;
  GroupElement g;
  g.F = &F;
  g.d = key % q;
  key /= q;
  g.c = key % q;
  key /= q;
  g.b = key % q;
  g.a = key / q;
  return g;
}

BruhatFactorization bruhat_factor(const GroupElement& g) {
  const FieldSpec& F = *g.F;
  if (!g.invertible()) throw FieldError("bruhat_factor of singular matrix");
  BruhatFactorization f;
  if (g.c == 0) {
    // g = u(b/d) * diag(a, d)
    f.has_omega = false;
    f.x = F.div(g.b, g.d);
    f.p = g.a;
    f.s = g.d;
  } else {
    // g = u(a/c) * diag(-det/c, -c) * omega * u(d/c)
    f.has_omega = true;
    f.x = F.div(g.a, g.c);
    f.p = F.neg(F.div(g.det(), g.c));
    f.s = F.neg(g.c);
    f.y = F.div(g.d, g.c);
  }
  return f;
}

GroupElement bruhat_compose(const FieldSpec& F, const BruhatFactorization& f) {
  GroupElement u1{&F, 1, f.x, 0, 1};
  GroupElement dg{&F, f.p, 0, 0, f.s};
  GroupElement r = gl2_mul(u1, dg);
  if (f.has_omega) {
    GroupElement om{&F, 0, 1, F.neg(1), 0};
    GroupElement u2{&F, 1, f.y, 0, 1};
    r = gl2_mul(gl2_mul(r, om), u2);
  }
  return r;
}

ClassList::ClassList(const FieldSpec& F, const FieldSpec& ext)
    : F_(&F), ext_(&ext) {
  if (ext.q != F.q * F.q || !ext.has_subfield(F.q))
    throw FieldError("ClassList needs the registered quadratic extension");
  std::uint32_t q = F.q;
  std::uint64_t Q = q;
  central_idx_.assign(q - 1, 0);
  jordan_idx_.assign(q - 1, 0);
  lookup_.assign(q * q, 0xffffffffu);

  // Central classes a*I, a = gen^j.
  for (std::uint32_t j = 0; j < q - 1; ++j) {
    ConjClassInfo ci;
    ci.kind = ClassKind::Central;
    ci.u1 = j;
    std::uint32_t a = F.exp(j);
    ci.rep = gl2_scalar(F, a);
    ci.size = 1;
    central_idx_[j] = static_cast<std::uint32_t>(classes_.size());
    classes_.push_back(ci);
  }
  // Jordan classes [[a,1],[0,a]].
  for (std::uint32_t j = 0; j < q - 1; ++j) {
    ConjClassInfo ci;
    ci.kind = ClassKind::Jordan;
    ci.u1 = j;
    std::uint32_t a = F.exp(j);
    ci.rep = GroupElement{&F, a, 1, 0, a};
    ci.size = Q * Q - 1;
    jordan_idx_[j] = static_cast<std::uint32_t>(classes_.size());
    classes_.push_back(ci);
  }
  // Split classes diag(a, b), dlog(a) < dlog(b).
  for (std::uint32_t j1 = 0; j1 + 1 < q - 1; ++j1) {
    for (std::uint32_t j2 = j1 + 1; j2 < q - 1; ++j2) {
      ConjClassInfo ci;
      ci.kind = ClassKind::Split;
      ci.u1 = j1;
      ci.u2 = j2;
      std::uint32_t a = F.exp(j1), b = F.exp(j2);
      ci.rep = GroupElement{&F, a, 0, 0, b};
      ci.size = Q * Q + Q;
      lookup_[ci.rep.trace() * q + ci.rep.det()] =
          static_cast<std::uint32_t>(classes_.size());
      classes_.push_back(ci);
    }
  }
  // Elliptic classes: eigenvalue x in ext \ F, canonicalized to the smaller
  // dlog in its Galois orbit {x, x^q}; representative is the companion
  // matrix [[0, -N(x)], [1, Tr(x)]].
  for (std::uint32_t j = 0; j < ext.q - 1; ++j) {
    std::uint32_t x = ext.exp(j);
    if (ext.in_subfield(q, x)) continue;
    std::uint32_t xq = ext.frob(x, q);
    if (ext.dlog(xq) < j) continue;
    ConjClassInfo ci;
    ci.kind = ClassKind::Elliptic;
    ci.u1 = j;
    std::uint32_t tr = ext.trace_to(q, x);
    std::uint32_t nm = ext.norm_to(q, x);
    ci.rep = GroupElement{&F, 0, F.neg(nm), 1, tr};
    ci.size = Q * Q - Q;
    lookup_[tr * q + nm] = static_cast<std::uint32_t>(classes_.size());
    classes_.push_back(ci);
  }

  // Class equation sanity check.
  std::uint64_t total = 0;
  for (const auto& c : classes_) total += c.size;
  if (total != gl2_order(q)) throw FieldError("class equation mismatch");
}

std::uint32_t ClassList::class_of(const GroupElement& g) const {
  const FieldSpec& F = *F_;
  std::uint32_t q = F.q;
  std::uint32_t det = g.det();
  if (det == 0) throw FieldError("class_of on singular matrix");
  std::uint32_t tr = g.trace();
  // Discriminant tr^2 - 4 det decides the eigenvalue structure.
  std::uint32_t disc = F.sub(F.mul(tr, tr), F.mul(4 % F.p, det));
  if (disc == 0) {
    // Repeated eigenvalue a = tr/2.
    std::uint32_t a = F.div(tr, 2 % F.p);
    bool scalar = (g.b == 0 && g.c == 0 && g.a == g.d);
    return scalar ? central_idx_[F.dlog(a)] : jordan_idx_[F.dlog(a)];
  }
  std::uint32_t idx = lookup_[tr * q + det];
  if (idx == 0xffffffffu) throw FieldError("class lookup failure");
  return idx;
}

}  // namespace weil
