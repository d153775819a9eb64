#include "orbits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_set>

namespace weil {

namespace {

// Orbit partition from a point-action given as "apply group element #i".
// The mover list must be closed under generation of the acting group (BFS
// closes each orbit under every mover, hence under the generated group).
OrbitScan scan_with_movers(
    std::uint32_t n_points, std::uint64_t group_order,
    const std::vector<std::function<std::uint32_t(std::uint32_t)>>& movers,
    const std::function<std::string(const std::vector<std::uint32_t>&)>&
        describe) {
  OrbitScan out;
  out.group_order = group_order;
  std::vector<char> seen(n_points, 0);
  for (std::uint32_t start = 0; start < n_points; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> orbit = {start};
    seen[start] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& mv : movers) {
        std::uint32_t img = mv(orbit[head]);
        if (!seen[img]) {
          seen[img] = 1;
          orbit.push_back(img);
        }
      }
    }
    OrbitInfo info;
    info.rep = *std::min_element(orbit.begin(), orbit.end());
    info.size = orbit.size();
    if (group_order % info.size != 0)
      throw FieldError("orbit size does not divide the group order");
    info.stab_order = group_order / info.size;
    info.description = describe(orbit);
    out.orbits.push_back(std::move(info));
  }
  std::sort(out.orbits.begin(), out.orbits.end(),
            [](const OrbitInfo& a, const OrbitInfo& b) {
              return a.size != b.size ? a.size < b.size : a.rep < b.rep;
            });
  return out;
}

std::vector<GroupElement> gl2_generators(const FieldSpec& X) {
  std::vector<GroupElement> gens;
  // Unipotents spanning X additively over the prime field, both diagonal
  // one-parameter subgroups, and the Weyl element.
  std::uint32_t b = 1;
  for (std::uint32_t i = 0; i < X.k; ++i) {
    gens.push_back(GroupElement{&X, 1, b, 0, 1});
    b = X.mul(b, X.gen);
  }
  gens.push_back(GroupElement{&X, X.gen, 0, 0, 1});
  gens.push_back(GroupElement{&X, 1, 0, 0, X.gen});
  gens.push_back(GroupElement{&X, 0, 1, X.neg(1), 0});
  return gens;
}

}  // namespace

OrbitScan orbit_scan(const Model& m, const std::string& variant) {
  const Context& ctx = m.context();
  const FieldSpec& F = ctx.F();
  std::uint32_t q = ctx.q;
  std::uint32_t nt = q - 1;

  if (variant == "triple") {
    if (m.model_case() != ModelCase::Triple)
      throw FieldError("variant does not match model case");
    // (g1, g2) . (m, psi_t) = (det(g1 g2)^{-1} g1 m g2^t, psi_{t det(g1 g2)})
    auto act = [&](const GroupElement& g1, const GroupElement& g2,
                   std::uint32_t pt) -> std::uint32_t {
      std::uint32_t s = m.space_of(pt), t = m.tpos_of(pt);
      std::uint32_t m22 = s % q, m21 = (s / q) % q, m12 = (s / (q * q)) % q,
                    m11 = s / (q * q * q);
      GroupElement M{&F, m11, m12, m21, m22};
      GroupElement R = gl2_mul(gl2_mul(g1, M), gl2_transpose(g2));
      std::uint32_t c = F.mul(g1.det(), g2.det());
      std::uint32_t ci = F.inv(c);
      std::uint32_t sr =
          ((F.mul(ci, R.a) * q + F.mul(ci, R.b)) * q + F.mul(ci, R.c)) * q +
          F.mul(ci, R.d);
      return m.point(sr, (t + F.dlog(c)) % nt);
    };
    std::vector<std::function<std::uint32_t(std::uint32_t)>> movers;
    GroupElement id = gl2_identity(F);
    for (const auto& g : gl2_generators(F)) {
      movers.push_back([&, g](std::uint32_t p) { return act(g, id, p); });
      movers.push_back([&, g](std::uint32_t p) { return act(id, g, p); });
    }
    auto describe = [&](const std::vector<std::uint32_t>& orbit) {
      std::uint32_t pt = orbit.front();
      std::uint32_t s = m.space_of(pt);
      std::uint32_t m22 = s % q, m21 = (s / q) % q, m12 = (s / (q * q)) % q,
                    m11 = s / (q * q * q);
      GroupElement M{&F, m11, m12, m21, m22};
      std::uint32_t det = M.det();
      if (det != 0) {
        // t * det(m) is an invariant of the action
        std::uint32_t a = F.mul(F.exp(m.tpos_of(pt)), det);
        return std::string("xi[") + std::to_string(a) + "]";
      }
      bool zero = (m11 | m12 | m21 | m22) == 0;
      return std::string(zero ? "delta" : "eta");
    };
    OrbitScan out =
        scan_with_movers(m.dim(), gl2_order(q) * gl2_order(q), movers,
                         describe);
    out.variant = variant;
    return out;
  }

  if (variant == "fxe") {
    if (m.model_case() != ModelCase::FxE)
      throw FieldError("variant does not match model case");
    const FieldSpec& E = ctx.E();
    std::uint32_t qe = E.q;
    // h . (m, psi_t) = (h m h^* N(det h)^{-1}, psi_{t N(det h)})
    auto act = [&](const GroupElement& h, std::uint32_t pt) -> std::uint32_t {
      std::uint32_t s = m.space_of(pt), t = m.tpos_of(pt);
      std::uint32_t y = s % q, a = (s / q) % qe, x = s / (q * qe);
      GroupElement M{&E, E.embed(q, x), a, E.frob(a, q), E.embed(q, y)};
      GroupElement Hs{&E, E.frob(h.a, q), E.frob(h.c, q), E.frob(h.b, q),
                      E.frob(h.d, q)};
      GroupElement R = gl2_mul(gl2_mul(h, M), Hs);
      std::uint32_t nd = E.norm_to(q, h.det());
      std::uint32_t ndi = F.inv(nd);
      std::uint32_t ndie = E.embed(q, ndi);
      std::uint32_t xr = F.mul(ndi, E.project(q, R.a));
      std::uint32_t ar = E.mul(ndie, R.b);
      std::uint32_t yr = F.mul(ndi, E.project(q, R.d));
      return m.point((xr * qe + ar) * q + yr, (t + F.dlog(nd)) % nt);
    };
    std::vector<std::function<std::uint32_t(std::uint32_t)>> movers;
    for (const auto& h : gl2_generators(E))
      movers.push_back([&, h](std::uint32_t p) { return act(h, p); });
    auto describe = [&](const std::vector<std::uint32_t>& orbit) {
      std::uint32_t pt = orbit.front();
      std::uint32_t s = m.space_of(pt);
      std::uint32_t y = s % q, a = (s / q) % qe, x = s / (q * qe);
      std::uint32_t det = F.sub(F.mul(x, y), E.norm_to(q, a));
      if (det != 0)
        return std::string("xi[") +
               std::to_string(F.mul(F.exp(m.tpos_of(pt)), det)) + "]";
      bool zero = (x | a | y) == 0;
      return std::string(zero ? "delta" : "eta");
    };
    OrbitScan out = scan_with_movers(
        m.dim(), gl2_order(qe), movers, describe);
    out.variant = variant;
    return out;
  }

  if (variant == "cubicN" || variant == "cubicT") {
    if (m.model_case() != ModelCase::Cubic)
      throw FieldError("variant does not match model case");
    const FieldSpec& K = ctx.K();
    std::uint32_t qk = K.q;
    std::vector<std::function<std::uint32_t(std::uint32_t)>> movers;
    std::uint64_t group_order;
    if (variant == "cubicN") {
      group_order = qk;
      // u(b) . (beta, y, psi) = (beta - b^{s^2} y, y, psi)
      for (std::uint32_t b = 1; b < qk; ++b) {
        std::uint32_t bs2 = K.frob(b, q * q);
        movers.push_back([&, bs2](std::uint32_t pt) {
          std::uint32_t s = m.space_of(pt), t = m.tpos_of(pt);
          std::uint32_t y = s % q, beta = s / q;
          std::uint32_t br = K.sub(beta, K.mul(bs2, K.embed(q, y)));
          return m.point(br * q + y, t);
        });
      }
    } else {
      group_order = static_cast<std::uint64_t>(qk - 1) * (qk - 1);
      // h(a,d) . (beta, y, psi_t) =
      //   ((N(ad)/(d d^s a^{s^2})) beta, N(a) y, psi_{t N(ad)^{-1}})
      for (std::uint32_t ja = 0; ja < qk - 1; ++ja) {
        for (std::uint32_t jd = 0; jd < qk - 1; ++jd) {
          std::uint32_t a = K.exp(ja), d = K.exp(jd);
          std::uint32_t nad = K.norm_to(q, K.mul(a, d));
          std::uint32_t na = K.norm_to(q, a);
          std::uint32_t denom = K.mul(K.mul(d, K.frob(d, q)),
                                      K.frob(a, q * q));
          std::uint32_t cb = K.div(K.embed(q, nad), denom);
          std::uint32_t tshift = (nt - F.dlog(nad) % nt) % nt;
          movers.push_back([&, cb, na, tshift](std::uint32_t pt) {
            std::uint32_t s = m.space_of(pt), t = m.tpos_of(pt);
            std::uint32_t y = s % q, beta = s / q;
            return m.point(K.mul(cb, beta) * q + F.mul(na, y),
                           (t + tshift) % nt);
          });
        }
      }
    }
    auto describe = [&](const std::vector<std::uint32_t>& orbit) {
      std::uint32_t pt = orbit.front();
      std::uint32_t s = m.space_of(pt), t = m.tpos_of(pt);
      std::uint32_t y = s % q, beta = s / q;
      if (variant == "cubicN") {
        if (y == 0)
          return "xi[beta=" + std::to_string(beta) +
                 ",t=" + std::to_string(F.exp(t)) + "]";
        return "eta[y=" + std::to_string(y) +
               ",t=" + std::to_string(F.exp(t)) + "]";
      }
      if (beta == 0 && y == 0) return std::string("origin");
      if (y == 0) return std::string("beta-line");
      if (beta == 0) return std::string("y-line");
      // Generic orbit: canonicalize to beta = 1, y = 1 and report the
      // smallest psi-index attained there.
      std::uint32_t best = nt;
      for (std::uint32_t p : orbit) {
        std::uint32_t sp = m.space_of(p);
        if (sp / q == 1 && sp % q == 1) best = std::min(best, m.tpos_of(p));
      }
      return "generic[k=" + std::to_string(F.exp(best)) + "]";
    };
    OrbitScan out = scan_with_movers(m.dim(), group_order, movers, describe);
    out.variant = variant;
    return out;
  }

  throw FieldError("unknown orbit variant: " + variant);
}

U2Structure u2_structure(const Context& ctx) {
  const FieldSpec& E = ctx.E();
  std::uint32_t q = ctx.q;
  std::uint32_t qe = E.q;
  U2Structure out;
  out.u2_expected = static_cast<std::uint64_t>(q - 1) * q * (q + 1) * (q + 1);

  auto star = [&](const GroupElement& h) {
    return GroupElement{&E, E.frob(h.a, q), E.frob(h.c, q), E.frob(h.b, q),
                        E.frob(h.d, q)};
  };

  // Direct scan for U2(E) = {h : h h^* = 1}.
  std::vector<GroupElement> u2;
  GroupElement id = gl2_identity(E);
  std::uint32_t nkeys = qe * qe * qe * qe;
  for (std::uint32_t key = 0; key < nkeys; ++key) {
    GroupElement h = gl2_unpack(E, key);
    if (!h.invertible()) continue;
    if (gl2_mul(h, star(h)) == id) u2.push_back(h);
  }
  out.u2_order = u2.size();

  // Parameterization: diag(u, 1) * [[a, b], [-b^q, a^q]] with u, a, b
  // subject to N(u) = 1 and N(a) + N(b) = 1.
  std::unordered_set<std::uint32_t> u2_keys, param_keys;
  for (const auto& h : u2) u2_keys.insert(gl2_pack(h));
  for (std::uint32_t u = 1; u < qe; ++u) {
    if (E.norm_to(q, u) != 1) continue;
    for (std::uint32_t a = 0; a < qe; ++a) {
      for (std::uint32_t b = 0; b < qe; ++b) {
        if (ctx.F().add(E.norm_to(q, a), E.norm_to(q, b)) != 1) continue;
        GroupElement core{&E, a, b, E.neg(E.frob(b, q)), E.frob(a, q)};
        GroupElement du{&E, u, 0, 0, 1};
        param_keys.insert(gl2_pack(gl2_mul(du, core)));
      }
    }
  }
  out.param_matches = (param_keys == u2_keys);

  // B' = upper-triangular invertibles; its meet with U2 should be exactly
  // {diag(u a, a^q) : N(u) = 1, N(a) = 1}.
  std::unordered_set<std::uint32_t> meet_expect;
  for (std::uint32_t u = 1; u < qe; ++u) {
    if (E.norm_to(q, u) != 1) continue;
    for (std::uint32_t a = 1; a < qe; ++a) {
      if (E.norm_to(q, a) != 1) continue;
      meet_expect.insert(
          gl2_pack(GroupElement{&E, E.mul(u, a), 0, 0, E.frob(a, q)}));
    }
  }
  std::unordered_set<std::uint32_t> meet;
  for (const auto& h : u2)
    if (h.c == 0) meet.insert(gl2_pack(h));
  out.borel_meet_matches = (meet == meet_expect);

  // e with e^{q+1} = -1, and g0 = [[0, 1], [-1, e^q]].
  std::uint32_t e = 0;
  for (std::uint32_t z = 1; z < qe; ++z) {
    if (E.pow(z, q + 1) == E.neg(1)) {
      e = z;
      break;
    }
  }
  if (e == 0) throw FieldError("no element with norm -1");
  GroupElement g0{&E, 0, 1, E.neg(1), E.frob(e, q)};

  std::unordered_set<std::uint32_t> coset1, coset2;
  for (std::uint32_t bk = 0; bk < nkeys; ++bk) {
    GroupElement bm = gl2_unpack(E, bk);
    if (bm.c != 0 || !bm.invertible()) continue;
    for (const auto& h : u2) {
      coset1.insert(gl2_pack(gl2_mul(bm, h)));
      coset2.insert(gl2_pack(gl2_mul(gl2_mul(bm, g0), h)));
    }
  }
  out.coset1 = coset1.size();
  out.coset2 = coset2.size();
  out.g0_outside = (coset1.count(gl2_pack(g0)) == 0);

  bool disjoint = true;
  for (std::uint32_t k : coset2)
    if (coset1.count(k)) {
      disjoint = false;
      break;
    }
  out.partition_ok =
      disjoint && (out.coset1 + out.coset2 == gl2_order(qe));

  std::uint64_t bprime = static_cast<std::uint64_t>(qe - 1) * (qe - 1) * qe;
  out.pass = out.u2_order == out.u2_expected && out.param_matches &&
             out.borel_meet_matches && out.g0_outside && out.partition_ok &&
             out.coset1 == bprime * (q - 1) * q &&
             out.coset2 == bprime * (q + 1);
  return out;
}

HomDims hom_dims_triple(const Context& ctx) {
  const FieldSpec& F = ctx.F();
  const CharTable& tab = *ctx.tabF;
  Model m(ctx, ModelCase::Triple);
  OrbitScan scan = orbit_scan(m, "triple");
  std::uint32_t q = ctx.q;
  std::uint32_t nt = q - 1;

  auto act = [&](const GroupElement& g1, const GroupElement& g2,
                 std::uint32_t pt) -> std::uint32_t {
    std::uint32_t s = m.space_of(pt), t = m.tpos_of(pt);
    std::uint32_t m22 = s % q, m21 = (s / q) % q, m12 = (s / (q * q)) % q,
                  m11 = s / (q * q * q);
    GroupElement M{&F, m11, m12, m21, m22};
    GroupElement R = gl2_mul(gl2_mul(g1, M), gl2_transpose(g2));
    std::uint32_t c = F.mul(g1.det(), g2.det());
    std::uint32_t ci = F.inv(c);
    std::uint32_t sr =
        ((F.mul(ci, R.a) * q + F.mul(ci, R.b)) * q + F.mul(ci, R.c)) * q +
        F.mul(ci, R.d);
    return m.point(sr, (t + F.dlog(c)) % nt);
  };

  std::vector<GroupElement> G;
  for (std::uint32_t key = 0; key < q * q * q * q; ++key) {
    GroupElement g = gl2_unpack(F, key);
    if (g.invertible()) G.push_back(g);
  }

  std::size_t n = tab.labels().size();
  HomDims out;
  out.total.assign(n * n, 0);
  for (const auto& orbit : scan.orbits) {
    // Joint class profile of the stabilizer, with the second component
    // transposed as in the fixed-space formula.
    std::vector<std::uint64_t> cnt(
        tab.classes().size() * tab.classes().size(), 0);
    std::uint64_t stab = 0;
    for (const auto& g1 : G) {
      for (const auto& g2 : G) {
        if (act(g1, g2, orbit.rep) != orbit.rep) continue;
        ++stab;
        cnt[tab.classes().class_of(g1) * tab.classes().size() +
            tab.classes().class_of(gl2_transpose(g2))] += 1;
      }
    }
    if (stab != orbit.stab_order)
      throw FieldError("stabilizer enumeration mismatch");
    std::vector<long long> dims(n * n, 0);
    for (std::size_t l1 = 0; l1 < n; ++l1) {
      for (std::size_t l2 = 0; l2 < n; ++l2) {
        cplx s = 0.0;
        for (std::size_t c1 = 0; c1 < tab.classes().size(); ++c1)
          for (std::size_t c2 = 0; c2 < tab.classes().size(); ++c2) {
            std::uint64_t k = cnt[c1 * tab.classes().size() + c2];
            if (!k) continue;
            s += static_cast<double>(k) *
                 tab.eval(tab.labels()[l1], static_cast<std::uint32_t>(c1)) *
                 tab.eval(tab.labels()[l2], static_cast<std::uint32_t>(c2));
          }
        s /= static_cast<double>(stab);
        long long r = std::llround(s.real());
        out.residual = std::max(
            out.residual,
            std::max(std::abs(s.real() - static_cast<double>(r)),
                     std::abs(s.imag())));
        dims[l1 * n + l2] = r;
        out.total[l1 * n + l2] += r;
      }
    }
    out.per_orbit.push_back(std::move(dims));
  }
  return out;
}

std::vector<long long> predicted_hom_dims_triple(const Context& ctx) {
  const CharTable& tab = *ctx.tabF;
  std::size_t n = tab.labels().size();
  std::uint32_t q = ctx.q;
  std::vector<long long> pred(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    switch (tab.labels()[i].kind) {
      case IrrLabel::OneDim: pred[i * n + i] = q + 1; break;
      case IrrLabel::Steinberg: pred[i * n + i] = q; break;
      case IrrLabel::Principal: pred[i * n + i] = q + 1; break;
      case IrrLabel::Cuspidal: pred[i * n + i] = q - 1; break;
    }
  }
  for (std::uint32_t j = 0; j < q - 1; ++j) {
    std::size_t st = tab.label_index({IrrLabel::Steinberg, j, 0});
    std::size_t on = tab.label_index({IrrLabel::OneDim, j, 0});
    pred[st * n + on] = 1;
    pred[on * n + st] = 1;
  }
  return pred;
}

HomDims hom_dims_fxe(const Context& ctx) {
  const FieldSpec& F = ctx.F();
  const FieldSpec& E = ctx.E();
  const CharTable& tab = *ctx.tabE;
  Model m(ctx, ModelCase::FxE);
  OrbitScan scan = orbit_scan(m, "fxe");
  std::uint32_t q = ctx.q;
  std::uint32_t qe = E.q;
  std::uint32_t nt = q - 1;

  auto act = [&](const GroupElement& h, std::uint32_t pt) -> std::uint32_t {
    std::uint32_t s = m.space_of(pt), t = m.tpos_of(pt);
    std::uint32_t y = s % q, a = (s / q) % qe, x = s / (q * qe);
    GroupElement M{&E, E.embed(q, x), a, E.frob(a, q), E.embed(q, y)};
    GroupElement Hs{&E, E.frob(h.a, q), E.frob(h.c, q), E.frob(h.b, q),
                    E.frob(h.d, q)};
    GroupElement R = gl2_mul(gl2_mul(h, M), Hs);
    std::uint32_t nd = E.norm_to(q, h.det());
    std::uint32_t ndi = F.inv(nd);
    std::uint32_t ndie = E.embed(q, ndi);
    std::uint32_t xr = F.mul(ndi, E.project(q, R.a));
    std::uint32_t ar = E.mul(ndie, R.b);
    std::uint32_t yr = F.mul(ndi, E.project(q, R.d));
    return m.point((xr * qe + ar) * q + yr, (t + F.dlog(nd)) % nt);
  };

  std::vector<GroupElement> H;
  for (std::uint32_t key = 0; key < qe * qe * qe * qe; ++key) {
    GroupElement h = gl2_unpack(E, key);
    if (h.invertible()) H.push_back(h);
  }

  std::size_t n = tab.labels().size();
  HomDims out;
  out.total.assign(n, 0);
  for (const auto& orbit : scan.orbits) {
    std::vector<std::uint64_t> cnt(tab.classes().size(), 0);
    std::uint64_t stab = 0;
    for (const auto& h : H) {
      if (act(h, orbit.rep) != orbit.rep) continue;
      ++stab;
      cnt[tab.classes().class_of(h)] += 1;
    }
    if (stab != orbit.stab_order)
      throw FieldError("stabilizer enumeration mismatch");
    std::vector<long long> dims(n, 0);
    for (std::size_t l = 0; l < n; ++l) {
      cplx s = 0.0;
      for (std::size_t c = 0; c < tab.classes().size(); ++c) {
        if (!cnt[c]) continue;
        s += static_cast<double>(cnt[c]) *
             tab.eval(tab.labels()[l], static_cast<std::uint32_t>(c));
      }
      s /= static_cast<double>(stab);
      long long r = std::llround(s.real());
      out.residual =
          std::max(out.residual,
                   std::max(std::abs(s.real() - static_cast<double>(r)),
                            std::abs(s.imag())));
      dims[l] = r;
      out.total[l] += r;
    }
    out.per_orbit.push_back(std::move(dims));
  }
  return out;
}

std::vector<long long> predicted_hom_dims_fxe(const Context& ctx) {
  const CharTable& tab = *ctx.tabE;
  std::uint32_t q = ctx.q;
  std::uint64_t M = static_cast<std::uint64_t>(ctx.E().q) - 1;
  std::size_t n = tab.labels().size();
  std::vector<long long> pred(n, 0);
  auto galois_fixed = [&](std::uint32_t j) {
    return (static_cast<std::uint64_t>(j) * q) % M == j;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const IrrLabel& l = tab.labels()[i];
    switch (l.kind) {
      case IrrLabel::OneDim:
        if (galois_fixed(l.j1)) pred[i] = q + 1;
        break;
      case IrrLabel::Steinberg:
        if (galois_fixed(l.j1)) pred[i] = q;
        break;
      case IrrLabel::Principal:
        if (galois_fixed(l.j1) && galois_fixed(l.j2))
          pred[i] = q + 1;
        else if ((static_cast<std::uint64_t>(l.j1) * q) % M == l.j2)
          pred[i] = q - 1;
        break;
      case IrrLabel::Cuspidal:
        break;
    }
  }
  return pred;
}

BorelInvariantReport k_borel_invariants(const Model& cubic,
                                        std::uint32_t chi_j) {
  if (cubic.model_case() != ModelCase::Cubic)
    throw FieldError("k_borel_invariants needs the cubic model");
  const Context& ctx = cubic.context();
  const FieldSpec& F = ctx.F();
  const FieldSpec& K = ctx.K();
  std::uint32_t q = ctx.q;
  std::uint32_t qk = K.q;
  std::uint32_t dim = cubic.dim();
  BorelInvariantReport rep;

  // F0 = delta at ((0, 0), phi); G0 supported on the unipotent orbit of
  // ((0, 1), phi), with G0((beta, 1), phi) = phi(-N(beta)).
  std::vector<cplx> F0(dim, 0.0), G0(dim, 0.0);
  F0[cubic.point(0, 0)] = 1.0;
  for (std::uint32_t beta = 0; beta < qk; ++beta)
    G0[cubic.point(beta * q + 1, 0)] =
        F.add_char(1, F.neg(K.norm_to(q, beta)));

  // Both must be fixed by the whole unipotent group.
  double neq = 0.0;
  for (std::uint32_t b = 0; b < qk; ++b) {
    GroupElement u{&K, 1, b, 0, 1};
    FactoredOperator op = cubic.op_cubic(u);
    std::vector<cplx> vf = F0, vg = G0;
    op.apply(vf);
    op.apply(vg);
    for (std::uint32_t i = 0; i < dim; ++i) {
      neq = std::max(neq, std::abs(vf[i] - F0[i]));
      neq = std::max(neq, std::abs(vg[i] - G0[i]));
    }
  }
  rep.n_equation_ok = neq < 1e-9;

  // Average the chi-twisted torus action over T.
  std::vector<cplx> A(dim, 0.0), B(dim, 0.0);
  for (std::uint32_t ja = 0; ja < qk - 1; ++ja) {
    for (std::uint32_t jd = 0; jd < qk - 1; ++jd) {
      GroupElement h{&K, K.exp(ja), 0, 0, K.exp(jd)};
      std::uint32_t nad = K.norm_to(q, h.det());
      cplx twist = F.mult_char(chi_j, nad);
      FactoredOperator op = cubic.op_cubic(h);
      std::vector<cplx> vf = F0, vg = G0;
      op.apply(vf);
      op.apply(vg);
      for (std::uint32_t i = 0; i < dim; ++i) {
        A[i] += twist * vf[i];
        B[i] += twist * vg[i];
      }
    }
  }

  GroupElement om{&K, 0, 1, K.neg(1), 0};
  FactoredOperator wop = cubic.op_cubic(om);
  std::vector<cplx> wA = A, wB = B;
  wop.apply(wA);
  wop.apply(wB);

  // Evaluation points: x00, x01, x10 and y_k for k = gen^0 .. gen^{q-2}.
  std::vector<std::uint32_t> pts = {cubic.point(0, 0), cubic.point(1, 0),
                                    cubic.point(q, 0)};
  for (std::uint32_t t = 0; t < q - 1; ++t)
    pts.push_back(cubic.point(q + 1, t));

  double qd = q;
  double D = std::pow(qd * qd + qd + 1.0, 2.0);
  double C = (qd - 1.0) * D;
  auto chi_leg = [&](std::uint32_t kpos) -> cplx {
    std::uint32_t k = F.exp(kpos);
    return F.mult_char(chi_j, k) *
           cplx(static_cast<double>(F.legendre(k)), 0.0);
  };

  rep.expect_A = {C, 0.0, 0.0};
  rep.expect_B = {0.0, D, 0.0};
  rep.expect_wA = {C / (qd * qd), C / (qd * qd), C / (qd * qd)};
  rep.expect_wB = {-(qd - 1.0) * (qd + 1.0) * D / qd, (qd + 1.0) * D / qd,
                   D / qd};
  for (std::uint32_t t = 0; t < q - 1; ++t) {
    std::uint32_t k = F.exp(t);
    rep.expect_A.push_back(0.0);
    rep.expect_B.push_back(chi_leg(t) * F.add_char(1, F.neg(k)) * D);
    rep.expect_wA.push_back(chi_leg(t) * C / (qd * qd));
    rep.expect_wB.push_back(cplx(0.0, 0.0));  // recorded, not asserted
  }

  for (std::size_t i = 0; i < pts.size(); ++i) {
    rep.A_vals.push_back(A[pts[i]]);
    rep.B_vals.push_back(B[pts[i]]);
    rep.wA_vals.push_back(wA[pts[i]]);
    rep.wB_vals.push_back(wB[pts[i]]);
    rep.max_err = std::max(rep.max_err, std::abs(A[pts[i]] - rep.expect_A[i]));
    rep.max_err = std::max(rep.max_err, std::abs(B[pts[i]] - rep.expect_B[i]));
    rep.max_err =
        std::max(rep.max_err, std::abs(wA[pts[i]] - rep.expect_wA[i]));
    if (i < 3)
      rep.max_err =
          std::max(rep.max_err, std::abs(wB[pts[i]] - rep.expect_wB[i]));
  }

  // q A - (q-1) B is fixed by the Fourier generator.
  std::vector<cplx> mix(dim);
  for (std::uint32_t i = 0; i < dim; ++i)
    mix[i] = qd * A[i] - (qd - 1.0) * B[i];
  std::vector<cplx> wmix = mix;
  wop.apply(wmix);
  for (std::uint32_t i = 0; i < dim; ++i)
    rep.invariance_err =
        std::max(rep.invariance_err, std::abs(wmix[i] - mix[i]));

  rep.pass = rep.n_equation_ok && rep.max_err < 1e-6 &&
             rep.invariance_err < 1e-6;
  return rep;
}

}  // namespace weil
