#include "chartab.hpp"

#include <sstream>

namespace weil {

CharTable::CharTable(const FieldSpec& F, const FieldSpec& ext)
    : F_(&F), ext_(&ext), classes_(F, ext) {
  std::uint32_t Q = F.q;
  for (std::uint32_t j = 0; j < Q - 1; ++j)
    labels_.push_back({IrrLabel::OneDim, j, 0});
  for (std::uint32_t j = 0; j < Q - 1; ++j)
    labels_.push_back({IrrLabel::Steinberg, j, 0});
  for (std::uint32_t j1 = 0; j1 + 1 < Q - 1; ++j1)
    for (std::uint32_t j2 = j1 + 1; j2 < Q - 1; ++j2)
      labels_.push_back({IrrLabel::Principal, j1, j2});
  std::uint32_t QQ = ext.q - 1;
  for (std::uint32_t j = 0; j < QQ; ++j) {
    std::uint32_t jq = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(j) * Q) % QQ);
    if (jq == j) continue;   // not regular
    if (jq < j) continue;    // keep the smaller Galois-orbit member
    labels_.push_back({IrrLabel::Cuspidal, j, 0});
  }
  if (labels_.size() != classes_.size())
    throw FieldError("label/class count mismatch");
  for (std::uint32_t i = 0; i < labels_.size(); ++i) index_[labels_[i]] = i;
}

std::uint64_t CharTable::dim(const IrrLabel& l) const {
  std::uint64_t Q = F_->q;
  switch (l.kind) {
    case IrrLabel::OneDim: return 1;
    case IrrLabel::Steinberg: return Q;
    case IrrLabel::Principal: return Q + 1;
    case IrrLabel::Cuspidal: return Q - 1;
  }
  return 0;
}

cplx CharTable::eval(const IrrLabel& l, const ConjClassInfo& c) const {
  const FieldSpec& F = *F_;
  const FieldSpec& E = *ext_;
  std::uint64_t Q = F.q;
  std::uint64_t m = Q - 1;           // order of F^x
  std::uint64_t M = E.q - 1;         // order of ext^x
  switch (l.kind) {
    case IrrLabel::OneDim: {
      // chi_j(det g)
      std::uint32_t dlog_det = F.dlog(c.rep.det());
      (void)dlog_det;
      switch (c.kind) {
        case ClassKind::Central:
        case ClassKind::Jordan:
          return F.zeta(static_cast<std::uint64_t>(l.j1) * 2 * c.u1);
        case ClassKind::Split:
          return F.zeta(static_cast<std::uint64_t>(l.j1) * (c.u1 + c.u2));
        case ClassKind::Elliptic:
          return F.zeta(static_cast<std::uint64_t>(l.j1) *
                        F.dlog(c.rep.det()));
      }
      break;
    }
    case IrrLabel::Steinberg: {
      cplx det_char;
      switch (c.kind) {
        case ClassKind::Central:
          return cplx(static_cast<double>(Q), 0.0) *
                 F.zeta(static_cast<std::uint64_t>(l.j1) * 2 * c.u1);
        case ClassKind::Jordan:
          return cplx(0.0, 0.0);
        case ClassKind::Split:
          return F.zeta(static_cast<std::uint64_t>(l.j1) * (c.u1 + c.u2));
        case ClassKind::Elliptic:
          return -F.zeta(static_cast<std::uint64_t>(l.j1) *
                         F.dlog(c.rep.det()));
      }
      (void)det_char;
      break;
    }
    case IrrLabel::Principal: {
      std::uint64_t j1 = l.j1, j2 = l.j2;
      switch (c.kind) {
        case ClassKind::Central:
          return cplx(static_cast<double>(Q + 1), 0.0) *
                 F.zeta((j1 + j2) * c.u1);
        case ClassKind::Jordan:
          return F.zeta((j1 + j2) * c.u1);
        case ClassKind::Split:
          return F.zeta(j1 * c.u1 + j2 * c.u2) +
                 F.zeta(j1 * c.u2 + j2 * c.u1);
        case ClassKind::Elliptic:
          return cplx(0.0, 0.0);
      }
      break;
    }
    case IrrLabel::Cuspidal: {
      std::uint64_t j = l.j1;
      (void)m;
      switch (c.kind) {
        case ClassKind::Central:
          // theta at the scalar eigenvalue, embedded into the extension
          return cplx(static_cast<double>(Q - 1), 0.0) *
                 E.zeta(j * E.dlog(E.embed(Q, F.exp(c.u1))));
        case ClassKind::Jordan:
          return -E.zeta(j * E.dlog(E.embed(Q, F.exp(c.u1))));
        case ClassKind::Split:
          return cplx(0.0, 0.0);
        case ClassKind::Elliptic:
          return -(E.zeta(j * c.u1) + E.zeta(j * c.u1 % M * Q));
      }
      break;
    }
  }
  throw FieldError("unreachable character case");
}

IrrLabel CharTable::canonical(IrrLabel l) const {
  std::uint64_t m = F_->q - 1;
  std::uint64_t M = ext_->q - 1;
  switch (l.kind) {
    case IrrLabel::OneDim:
    case IrrLabel::Steinberg:
      l.j1 %= static_cast<std::uint32_t>(m);
      l.j2 = 0;
      return l;
    case IrrLabel::Principal: {
      l.j1 %= static_cast<std::uint32_t>(m);
      l.j2 %= static_cast<std::uint32_t>(m);
      if (l.j1 == l.j2) throw FieldError("principal label needs distinct characters");
      if (l.j1 > l.j2) std::swap(l.j1, l.j2);
      return l;
    }
    case IrrLabel::Cuspidal: {
      std::uint64_t j = l.j1 % M;
      std::uint64_t jq = (j * F_->q) % M;
      if (j == jq) throw FieldError("cuspidal label needs a regular character");
      l.j1 = static_cast<std::uint32_t>(std::min(j, jq));
      l.j2 = 0;
      return l;
    }
  }
  throw FieldError("unreachable label kind");
}

IrrLabel CharTable::dual(const IrrLabel& l) const {
  std::uint64_t m = F_->q - 1;
  std::uint64_t M = ext_->q - 1;
  IrrLabel d = l;
  switch (l.kind) {
    case IrrLabel::OneDim:
    case IrrLabel::Steinberg:
      d.j1 = static_cast<std::uint32_t>((m - l.j1 % m) % m);
      return d;
    case IrrLabel::Principal:
      d.j1 = static_cast<std::uint32_t>((m - l.j1 % m) % m);
      d.j2 = static_cast<std::uint32_t>((m - l.j2 % m) % m);
      return canonical(d);
    case IrrLabel::Cuspidal:
      d.j1 = static_cast<std::uint32_t>((M - l.j1 % M) % M);
      return canonical(d);
  }
  throw FieldError("unreachable label kind");
}

std::uint32_t CharTable::label_index(const IrrLabel& l) const {
  auto it = index_.find(canonical(l));
  if (it == index_.end()) throw FieldError("unknown label");
  return it->second;
}

std::string CharTable::label_str(const IrrLabel& l) const {
  std::ostringstream os;
  switch (l.kind) {
    case IrrLabel::OneDim: os << "1[" << l.j1 << "]"; break;
    case IrrLabel::Steinberg: os << "St[" << l.j1 << "]"; break;
    case IrrLabel::Principal:
      os << "Ps[" << l.j1 << "," << l.j2 << "]";
      break;
    case IrrLabel::Cuspidal: os << "Cusp[" << l.j1 << "]"; break;
  }
  return os.str();
}

cplx CharTable::inner_product(const std::vector<cplx>& f,
                              const std::vector<cplx>& g) const {
  if (f.size() != classes_.size() || g.size() != classes_.size())
    throw FieldError("class function size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < classes_.size(); ++i)
    s += static_cast<double>(classes_[i].size) * f[i] * std::conj(g[i]);
  return s / static_cast<double>(gl2_order(F_->q));
}

std::uint32_t norm_composed_index(const FieldSpec& big, const FieldSpec& sub,
                                  std::uint64_t j) {
  std::uint64_t m = sub.q - 1;
  std::uint64_t M = big.q - 1;
  std::uint64_t t = sub.dlog(big.norm_to(sub.q, big.gen));
  return static_cast<std::uint32_t>(((j % m) * t % m) * (M / m) % M);
}

IrrLabel base_change(const CharTable& src, const CharTable& dst,
                     const IrrLabel& l) {
  const FieldSpec& F = src.field();
  const FieldSpec& big = dst.field();
  if (big.k % F.k != 0) throw FieldError("base change: not an extension");
  std::uint32_t deg = big.k / F.k;
  if (deg != 2 && deg != 3) throw FieldError("base change degree must be 2 or 3");

  switch (l.kind) {
    case IrrLabel::OneDim:
      return {IrrLabel::OneDim, norm_composed_index(big, F, l.j1), 0};
    case IrrLabel::Steinberg:
      return {IrrLabel::Steinberg, norm_composed_index(big, F, l.j1), 0};
    case IrrLabel::Principal:
      return dst.canonical({IrrLabel::Principal,
                            norm_composed_index(big, F, l.j1),
                            norm_composed_index(big, F, l.j2)});
    case IrrLabel::Cuspidal: {
      const FieldSpec& E = src.ext();
      if (deg == 2) {
        // The parameter field coincides with the new coefficient field:
        // theta and theta^q become a principal pair.
        if (&E != &big) throw FieldError("degree-2 base change field mismatch");
        std::uint64_t M = E.q - 1;
        std::uint32_t jq = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(l.j1) * F.q) % M);
        return dst.canonical({IrrLabel::Principal, l.j1, jq});
      }
      // Degree 3: compose theta with the norm from the degree-6 field down
      // to the quadratic extension; the result is still regular.
      const FieldSpec& L = dst.ext();
      return dst.canonical(
          {IrrLabel::Cuspidal, norm_composed_index(L, E, l.j1), 0});
    }
  }
  throw FieldError("unreachable label kind");
}

namespace {

using Mat = std::vector<std::vector<cplx>>;

Mat mat_id(std::uint32_t n) {
  Mat m(n, std::vector<cplx>(n, 0.0));
  for (std::uint32_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  std::uint32_t n = static_cast<std::uint32_t>(a.size());
  Mat r(n, std::vector<cplx>(n, 0.0));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t k = 0; k < n; ++k) {
      cplx aik = a[i][k];
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::uint32_t j = 0; j < n; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

}  // namespace

std::vector<cplx> cuspidal_model_char(const CharTable& tab, std::uint32_t j) {
  const FieldSpec& F = tab.field();
  const FieldSpec& E = tab.ext();
  std::uint32_t q = F.q;
  std::uint32_t n = q - 1;  // model space: functions on nontrivial psi_s
  std::uint64_t M = E.q - 1;
  std::uint64_t jq = (static_cast<std::uint64_t>(j) * q) % M;
  if (jq == j) throw FieldError("cuspidal model needs a regular character");

  auto Lambda = [&](std::uint32_t e_elt) -> cplx {
    return E.zeta(static_cast<std::uint64_t>(j) * E.dlog(e_elt));
  };
  auto Lambda_F = [&](std::uint32_t f_elt) -> cplx {
    return Lambda(E.embed(q, f_elt));
  };

  // Basis position i <-> additive character psi_{exp(i)}.
  auto torus = [&](std::uint32_t t) {  // action of diag(1, t)
    Mat m(n, std::vector<cplx>(n, 0.0));
    std::uint32_t ti = F.inv(t);
    for (std::uint32_t i = 0; i < n; ++i)
      m[i][F.dlog(F.mul(F.exp(i), ti))] = 1.0;
    return m;
  };
  auto unipotent = [&](std::uint32_t b) {  // action of u(b)
    Mat m(n, std::vector<cplx>(n, 0.0));
    for (std::uint32_t i = 0; i < n; ++i) m[i][i] = F.add_char(F.exp(i), b);
    return m;
  };
  // Action of omega: (W f)(psi_s) = -1/q sum_{y in E^x} psi_s(Tr y)
  // Lambda(y) f(psi_s^{N y}).
  Mat W(n, std::vector<cplx>(n, 0.0));
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t s = F.exp(i);
    for (std::uint32_t ye = 1; ye < E.q; ++ye) {
      std::uint32_t tr = E.trace_to(q, ye);
      std::uint32_t nm = E.norm_to(q, ye);
      std::uint32_t col = F.dlog(F.mul(s, nm));
      W[i][col] += -1.0 / static_cast<double>(q) * F.add_char(s, tr) *
                   Lambda(ye);
    }
  }

  auto rep_matrix = [&](const GroupElement& g) -> Mat {
    BruhatFactorization f = bruhat_factor(g);
    // g = u(x) diag(p, s) [omega u(y)]; diag(p, s) = pI * diag(1, s/p).
    Mat m = unipotent(f.x);
    cplx central = Lambda_F(f.p);
    std::uint32_t t = F.div(f.s, f.p);
    if (t != 1) m = mat_mul(m, torus(t));
    if (f.has_omega) {
      m = mat_mul(m, W);
      if (f.y != 0) m = mat_mul(m, unipotent(f.y));
    }
    for (auto& row : m)
      for (auto& v : row) v *= central;
    return m;
  };

  std::vector<cplx> out;
  out.reserve(tab.classes().size());
  for (const auto& c : tab.classes().classes()) {
    Mat m = rep_matrix(c.rep);
    cplx tr = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) tr += m[i][i];
    out.push_back(tr);
  }
  return out;
}

}  // namespace weil
