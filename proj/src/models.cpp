#include "models.hpp"

namespace weil {

Context Context::make(std::uint32_t q) {
  Context c;
  c.q = q;
  c.tower = Tower::make(q);
  c.tabF = std::make_unique<CharTable>(*c.tower.F, *c.tower.E);
  c.tabE = std::make_unique<CharTable>(*c.tower.E, *c.tower.E4);
  c.tabK = std::make_unique<CharTable>(*c.tower.K, *c.tower.L6);
  return c;
}

Model::Model(const Context& ctx, ModelCase mc) : ctx_(&ctx), case_(mc) {
  const FieldSpec& F = ctx.F();
  q_ = F.q;
  space_ = q_ * q_ * q_ * q_;
  dim_ = space_ * (q_ - 1);

  psi_.assign(q_ - 1, std::vector<cplx>(q_));
  for (std::uint32_t tpos = 0; tpos < q_ - 1; ++tpos)
    for (std::uint32_t u = 0; u < q_; ++u)
      psi_[tpos][u] = F.add_char(F.exp(tpos), u);

  if (case_ == ModelCase::FxE) {
    const FieldSpec& E = ctx.E();
    std::uint32_t qe = E.q;
    conj_e_.resize(qe);
    norm_e_.resize(qe);
    for (std::uint32_t a = 0; a < qe; ++a) {
      conj_e_[a] = E.frob(a, q_);
      norm_e_[a] = E.norm_to(q_, a);
    }
    tr_ab_.resize(static_cast<std::size_t>(qe) * qe);
    for (std::uint32_t a1 = 0; a1 < qe; ++a1)
      for (std::uint32_t a2 = 0; a2 < qe; ++a2)
        tr_ab_[static_cast<std::size_t>(a1) * qe + a2] =
            E.trace_to(q_, E.mul(a1, conj_e_[a2]));
  } else if (case_ == ModelCase::Cubic) {
    const FieldSpec& K = ctx.K();
    std::uint32_t qk = K.q;
    trk_ab_.resize(static_cast<std::size_t>(qk) * qk);
    for (std::uint32_t b1 = 0; b1 < qk; ++b1)
      for (std::uint32_t b2 = 0; b2 < qk; ++b2)
        trk_ab_[static_cast<std::size_t>(b1) * qk + b2] =
            K.trace_to(q_, K.mul(b1, b2));
  }
}

namespace {

// Quadratic form on the space coordinate: det for the triple case, the
// hermitian determinant x*y - N(alpha) for the FxE case.
inline std::uint32_t triple_det(const FieldSpec& F, std::uint32_t s,
                                std::uint32_t q) {
  std::uint32_t m22 = s % q, m21 = (s / q) % q, m12 = (s / (q * q)) % q,
                m11 = s / (q * q * q);
  return F.sub(F.mul(m11, m22), F.mul(m12, m21));
}

}  // namespace

Factor Model::unipotent_factor(std::uint32_t b) const {
  const FieldSpec& F = ctx_->F();
  Factor f;
  f.coeff.resize(dim_);
  switch (case_) {
    case ModelCase::Triple: {
      for (std::uint32_t s = 0; s < space_; ++s) {
        std::uint32_t arg = F.mul(b, triple_det(F, s, q_));
        for (std::uint32_t t = 0; t < q_ - 1; ++t)
          f.coeff[point(s, t)] = psi_[t][arg];
      }
      break;
    }
    case ModelCase::FxE: {
      const FieldSpec& E = ctx_->E();
      std::uint32_t qe = E.q;
      for (std::uint32_t s = 0; s < space_; ++s) {
        std::uint32_t y = s % q_, a = (s / q_) % qe, x = s / (q_ * qe);
        std::uint32_t det = F.sub(F.mul(x, y), norm_e_[a]);
        std::uint32_t arg = F.mul(b, det);
        for (std::uint32_t t = 0; t < q_ - 1; ++t)
          f.coeff[point(s, t)] = psi_[t][arg];
      }
      break;
    }
    case ModelCase::Cubic: {
      // b lives in K.  Coefficient at (beta, y):
      //   psi( Tr(b b^s beta y) - N(b) y^2 - Tr(b beta beta^{s^2}) ),
      // and the read position is (beta - b^{s^2} y, y).
      const FieldSpec& K = ctx_->K();
      std::uint32_t bs = K.frob(b, q_);
      std::uint32_t bs2 = K.frob(bs, q_);
      std::uint32_t bbs = K.mul(b, bs);
      std::uint32_t nb = K.norm_to(q_, b);
      f.sigma.resize(dim_);
      for (std::uint32_t beta = 0; beta < K.q; ++beta) {
        std::uint32_t bbeta = K.mul(b, beta);
        std::uint32_t beta_s2 = K.frob(beta, q_ * q_);
        std::uint32_t t3 = K.trace_to(q_, K.mul(bbeta, beta_s2));
        for (std::uint32_t y = 0; y < q_; ++y) {
          std::uint32_t s = beta * q_ + y;
          std::uint32_t yk = K.embed(q_, y);
          std::uint32_t t1 = K.trace_to(q_, K.mul(bbs, K.mul(beta, yk)));
          std::uint32_t t2 = F.mul(nb, F.mul(y, y));
          std::uint32_t arg = F.sub(F.sub(t1, t2), t3);
          std::uint32_t beta_read = K.sub(beta, K.mul(bs2, yk));
          std::uint32_t s_read = beta_read * q_ + y;
          for (std::uint32_t t = 0; t < q_ - 1; ++t) {
            f.coeff[point(s, t)] = psi_[t][arg];
            f.sigma[point(s, t)] = point(s_read, t);
          }
        }
      }
      break;
    }
  }
  return f;
}

std::vector<Factor> Model::diag_factors(std::uint32_t p,
                                        std::uint32_t s) const {
  const FieldSpec& F = ctx_->F();
  std::vector<Factor> out;
  if (case_ == ModelCase::Cubic) {
    // h(a, d) = diag(a, d) over K in one monomial factor:
    //   scale chi(N(ad)) (quadratic character), read position
    //   ((N(ad)/(d d^s a^{s^2})) beta, N(a) y), psi-index shift by N(ad)^{-1}.
    const FieldSpec& K = ctx_->K();
    std::uint32_t a = p, d = s;
    std::uint32_t nad = K.norm_to(q_, K.mul(a, d));
    std::uint32_t na = K.norm_to(q_, a);
    std::uint32_t dds = K.mul(d, K.frob(d, q_));
    std::uint32_t denom = K.mul(dds, K.frob(a, q_ * q_));
    std::uint32_t cb = K.div(K.embed(q_, nad), denom);
    std::uint32_t tshift = (q_ - 1 - F.dlog(nad) % (q_ - 1)) % (q_ - 1);
    Factor f;
    f.scale = cplx(static_cast<double>(F.legendre(nad)), 0.0);
    f.sigma.resize(dim_);
    for (std::uint32_t beta = 0; beta < K.q; ++beta) {
      std::uint32_t beta_read = K.mul(cb, beta);
      for (std::uint32_t y = 0; y < q_; ++y) {
        std::uint32_t y_read = F.mul(na, y);
        std::uint32_t s_read = beta_read * q_ + y_read;
        std::uint32_t sp = beta * q_ + y;
        for (std::uint32_t t = 0; t < q_ - 1; ++t)
          f.sigma[point(sp, t)] = point(s_read, (t + tshift) % (q_ - 1));
      }
    }
    out.push_back(std::move(f));
    return out;
  }

  // Triple / FxE: diag(p, s) = h(p) * h'(p*s), where h(r) = diag(r, r^{-1})
  // acts by f(m) -> f(r m) and h'(t) acts on the psi-index only.
  if (p != 1) {
    Factor f;
    f.sigma.resize(dim_);
    if (case_ == ModelCase::Triple) {
      for (std::uint32_t sp = 0; sp < space_; ++sp) {
        std::uint32_t m22 = sp % q_, m21 = (sp / q_) % q_,
                      m12 = (sp / (q_ * q_)) % q_, m11 = sp / (q_ * q_ * q_);
        std::uint32_t sr = ((F.mul(p, m11) * q_ + F.mul(p, m12)) * q_ +
                            F.mul(p, m21)) *
                               q_ +
                           F.mul(p, m22);
        for (std::uint32_t t = 0; t < q_ - 1; ++t)
          f.sigma[point(sp, t)] = point(sr, t);
      }
    } else {
      const FieldSpec& E = ctx_->E();
      std::uint32_t qe = E.q;
      std::uint32_t pe = E.embed(q_, p);
      for (std::uint32_t sp = 0; sp < space_; ++sp) {
        std::uint32_t y = sp % q_, a = (sp / q_) % qe, x = sp / (q_ * qe);
        std::uint32_t sr =
            (F.mul(p, x) * qe + E.mul(pe, a)) * q_ + F.mul(p, y);
        for (std::uint32_t t = 0; t < q_ - 1; ++t)
          f.sigma[point(sp, t)] = point(sr, t);
      }
    }
    out.push_back(std::move(f));
  }
  std::uint32_t tparam = F.mul(p, s);
  if (tparam != 1) {
    Factor f;
    f.sigma.resize(dim_);
    std::uint32_t tshift = (q_ - 1 - F.dlog(tparam)) % (q_ - 1);
    for (std::uint32_t sp = 0; sp < space_; ++sp)
      for (std::uint32_t t = 0; t < q_ - 1; ++t)
        f.sigma[point(sp, t)] = point(sp, (t + tshift) % (q_ - 1));
    out.push_back(std::move(f));
  }
  return out;
}

cplx Model::fourier_scalar() const {
  double qq = static_cast<double>(q_) * q_;
  return case_ == ModelCase::FxE ? cplx(-1.0 / qq, 0.0) : cplx(1.0 / qq, 0.0);
}

std::vector<Factor> Model::g_factors(const GroupElement& g) const {
  BruhatFactorization f = bruhat_factor(g);
  std::vector<Factor> out;
  if (f.x != 0) out.push_back(unipotent_factor(f.x));
  auto diag = diag_factors(f.p, f.s);
  for (auto& d : diag) out.push_back(std::move(d));
  if (f.has_omega) {
    Factor w;
    w.fourier = true;
    w.scale = fourier_scalar();
    out.push_back(std::move(w));
    if (f.y != 0) out.push_back(unipotent_factor(f.y));
  }
  return out;
}

Factor Model::partner_factor_triple(const GroupElement& g2,
                                    const GroupElement& g3) const {
  const FieldSpec& F = ctx_->F();
  // f(m) -> f(det(g2 g3) g2^{-1} m (g3^{-1})^t, psi^{det(g2 g3)^{-1}})
  GroupElement A = gl2_inv(g2);
  GroupElement Bt = gl2_transpose(gl2_inv(g3));
  std::uint32_t c = F.mul(g2.det(), g3.det());
  std::uint32_t tshift = (q_ - 1 - F.dlog(c)) % (q_ - 1);
  Factor f;
  f.sigma.resize(dim_);
  for (std::uint32_t sp = 0; sp < space_; ++sp) {
    std::uint32_t m22 = sp % q_, m21 = (sp / q_) % q_,
                  m12 = (sp / (q_ * q_)) % q_, m11 = sp / (q_ * q_ * q_);
    GroupElement M{&F, m11, m12, m21, m22};
    GroupElement R = gl2_mul(gl2_mul(A, M), Bt);
    std::uint32_t sr = ((F.mul(c, R.a) * q_ + F.mul(c, R.b)) * q_ +
                        F.mul(c, R.c)) *
                           q_ +
                       F.mul(c, R.d);
    for (std::uint32_t t = 0; t < q_ - 1; ++t)
      f.sigma[point(sp, t)] = point(sr, (t + tshift) % (q_ - 1));
  }
  return f;
}

Factor Model::partner_factor_fxe(const GroupElement& h) const {
  const FieldSpec& F = ctx_->F();
  const FieldSpec& E = ctx_->E();
  std::uint32_t qe = E.q;
  // f(m) -> f(N(det h) h^{-1} m h^{*-1}, psi^{N(det h)^{-1}}),  h^* = conj(h)^t
  GroupElement Hi = gl2_inv(h);
  GroupElement Hstar{&E, conj_e_[h.a], conj_e_[h.c], conj_e_[h.b],
                     conj_e_[h.d]};
  GroupElement Hsi = gl2_inv(Hstar);
  std::uint32_t nd = norm_e_[h.det()];
  std::uint32_t nde = E.embed(q_, nd);
  std::uint32_t tshift = (q_ - 1 - F.dlog(nd)) % (q_ - 1);
  Factor f;
  f.sigma.resize(dim_);
  for (std::uint32_t sp = 0; sp < space_; ++sp) {
    std::uint32_t y = sp % q_, a = (sp / q_) % qe, x = sp / (q_ * qe);
    GroupElement M{&E, E.embed(q_, x), a, conj_e_[a], E.embed(q_, y)};
    GroupElement R = gl2_mul(gl2_mul(Hi, M), Hsi);
    std::uint32_t xr = F.mul(nd, E.project(q_, R.a));
    std::uint32_t ar = E.mul(nde, R.b);
    std::uint32_t yr = F.mul(nd, E.project(q_, R.d));
    std::uint32_t sr = (xr * qe + ar) * q_ + yr;
    for (std::uint32_t t = 0; t < q_ - 1; ++t)
      f.sigma[point(sp, t)] = point(sr, (t + tshift) % (q_ - 1));
  }
  return f;
}

FactoredOperator Model::op_triple(const GroupElement& g1,
                                  const GroupElement& g2,
                                  const GroupElement& g3) const {
  if (case_ != ModelCase::Triple) throw FieldError("wrong model case");
  FactoredOperator op;
  op.model = this;
  op.factors = g_factors(g1);
  GroupElement id = gl2_identity(ctx_->F());
  if (!(g2 == id) || !(g3 == id))
    op.factors.push_back(partner_factor_triple(g2, g3));
  return op;
}

FactoredOperator Model::op_fxe(const GroupElement& g,
                               const GroupElement& h) const {
  if (case_ != ModelCase::FxE) throw FieldError("wrong model case");
  FactoredOperator op;
  op.model = this;
  op.factors = g_factors(g);
  if (!(h == gl2_identity(ctx_->E())))
    op.factors.push_back(partner_factor_fxe(h));
  return op;
}

FactoredOperator Model::op_cubic(const GroupElement& g) const {
  if (case_ != ModelCase::Cubic) throw FieldError("wrong model case");
  FactoredOperator op;
  op.model = this;
  op.factors = g_factors(g);
  return op;
}

cplx Model::kernel(std::uint32_t pt_out, std::uint32_t pt_in) const {
  std::uint32_t t = tpos_of(pt_out);
  if (t != tpos_of(pt_in)) return cplx(0.0, 0.0);
  const FieldSpec& F = ctx_->F();
  std::uint32_t so = space_of(pt_out), si = space_of(pt_in);
  std::uint32_t arg = 0;
  switch (case_) {
    case ModelCase::Triple: {
      std::uint32_t m22 = so % q_, m21 = (so / q_) % q_,
                    m12 = (so / (q_ * q_)) % q_, m11 = so / (q_ * q_ * q_);
      std::uint32_t n22 = si % q_, n21 = (si / q_) % q_,
                    n12 = (si / (q_ * q_)) % q_, n11 = si / (q_ * q_ * q_);
      arg = F.sub(F.add(F.mul(m11, n22), F.mul(m22, n11)),
                  F.add(F.mul(m12, n21), F.mul(m21, n12)));
      break;
    }
    case ModelCase::FxE: {
      std::uint32_t qe = ctx_->E().q;
      std::uint32_t ym = so % q_, am = (so / q_) % qe, xm = so / (q_ * qe);
      std::uint32_t yn = si % q_, an = (si / q_) % qe, xn = si / (q_ * qe);
      std::uint32_t tr = tr_ab_[static_cast<std::size_t>(am) * qe + an];
      arg = F.sub(F.add(F.mul(xm, yn), F.mul(xn, ym)), tr);
      break;
    }
    case ModelCase::Cubic: {
      std::uint32_t qk = ctx_->K().q;
      std::uint32_t ym = so % q_, bm = so / q_;
      std::uint32_t yn = si % q_, bn = si / q_;
      arg = F.add(F.mul(ym, yn),
                  trk_ab_[static_cast<std::size_t>(bm) * qk + bn]);
      break;
    }
  }
  return psi_[t][arg];
}

namespace {

// Replace one mixed-radix coordinate (size n, given stride) of the array by
// its transform against kernel entries psirow[kidx[nu * n + old]].
void dft_pass(std::vector<cplx>& a, std::vector<cplx>& tmp,
              std::uint32_t total, std::uint32_t n, std::uint32_t stride,
              const std::uint32_t* kidx, const cplx* psirow) {
  std::uint32_t outer_count = total / (n * stride);
  for (std::uint32_t outer = 0; outer < outer_count; ++outer) {
    std::uint32_t base0 = outer * n * stride;
    for (std::uint32_t inner = 0; inner < stride; ++inner) {
      std::uint32_t base = base0 + inner;
      for (std::uint32_t nu = 0; nu < n; ++nu) {
        cplx acc = 0.0;
        const std::uint32_t* krow = kidx + static_cast<std::size_t>(nu) * n;
        for (std::uint32_t old = 0; old < n; ++old)
          acc += psirow[krow[old]] * a[base + old * stride];
        tmp[base + nu * stride] = acc;
      }
    }
  }
  a.swap(tmp);
}

}  // namespace

void Model::fourier_apply(std::vector<cplx>& v) const {
  const FieldSpec& F = ctx_->F();
  std::uint32_t nt = q_ - 1;
  // Small positive / negative product index tables for the q-sized passes.
  std::vector<std::uint32_t> mulpos(q_ * q_), mulneg(q_ * q_);
  for (std::uint32_t u = 0; u < q_; ++u)
    for (std::uint32_t w = 0; w < q_; ++w) {
      mulpos[u * q_ + w] = F.mul(u, w);
      mulneg[u * q_ + w] = F.neg(F.mul(u, w));
    }

  std::vector<cplx> block(space_), tmp(space_), outp(space_);
  for (std::uint32_t t = 0; t < nt; ++t) {
    for (std::uint32_t s = 0; s < space_; ++s) block[s] = v[point(s, t)];
    const cplx* psirow = psi_[t].data();
    switch (case_) {
      case ModelCase::Triple: {
        std::uint32_t q = q_;
        dft_pass(block, tmp, space_, q, 1, mulpos.data(), psirow);
        dft_pass(block, tmp, space_, q, q, mulneg.data(), psirow);
        dft_pass(block, tmp, space_, q, q * q, mulneg.data(), psirow);
        dft_pass(block, tmp, space_, q, q * q * q, mulpos.data(), psirow);
        // Coordinates now read (m22, m21, m12, m11); reverse them.
        for (std::uint32_t z = 0; z < q; ++z)
          for (std::uint32_t w = 0; w < q; ++w)
            for (std::uint32_t u2 = 0; u2 < q; ++u2)
              for (std::uint32_t u1 = 0; u1 < q; ++u1)
                outp[((u1 * q + u2) * q + w) * q + z] =
                    block[((z * q + w) * q + u2) * q + u1];
        block.swap(outp);
        break;
      }
      case ModelCase::FxE: {
        std::uint32_t q = q_, qe = ctx_->E().q;
        // y-coordinate couples to the new x, x-coordinate to the new y.
        dft_pass(block, tmp, space_, q, 1, mulpos.data(), psirow);
        dft_pass(block, tmp, space_, q, q * qe, mulpos.data(), psirow);
        // alpha-pass with kernel psi(-Tr(am conj(an))).
        static thread_local std::vector<std::uint32_t> negtr;
        if (negtr.size() != tr_ab_.size()) {
          negtr.resize(tr_ab_.size());
          for (std::size_t i = 0; i < tr_ab_.size(); ++i)
            negtr[i] = F.neg(tr_ab_[i]);
        }
        dft_pass(block, tmp, space_, qe, q, negtr.data(), psirow);
        // Coordinates now read (ym, am, xm); swap the outer pair back.
        for (std::uint32_t x = 0; x < q; ++x)
          for (std::uint32_t a = 0; a < qe; ++a)
            for (std::uint32_t y = 0; y < q; ++y)
              outp[(x * qe + a) * q + y] = block[(y * qe + a) * q + x];
        block.swap(outp);
        break;
      }
      case ModelCase::Cubic: {
        std::uint32_t q = q_, qk = ctx_->K().q;
        dft_pass(block, tmp, space_, q, 1, mulpos.data(), psirow);
        dft_pass(block, tmp, space_, qk, q, trk_ab_.data(), psirow);
        break;
      }
    }
    for (std::uint32_t s = 0; s < space_; ++s) v[point(s, t)] = block[s];
  }
}

namespace {

struct Collapsed {
  std::vector<std::uint32_t> sigma;
  std::vector<cplx> coeff;
  cplx scale{1.0, 0.0};
};

Collapsed collapse(const std::vector<Factor>& factors, std::size_t lo,
                   std::size_t hi, std::uint32_t dim) {
  Collapsed c;
  c.sigma.resize(dim);
  c.coeff.assign(dim, cplx(1.0, 0.0));
  for (std::uint32_t x = 0; x < dim; ++x) c.sigma[x] = x;
  for (std::size_t i = lo; i < hi; ++i) {
    const Factor& f = factors[i];
    c.scale *= f.scale;
    if (f.coeff.empty() && f.sigma.empty()) continue;
    for (std::uint32_t x = 0; x < dim; ++x) {
      std::uint32_t y = c.sigma[x];
      if (!f.coeff.empty()) c.coeff[x] *= f.coeff[y];
      if (!f.sigma.empty()) c.sigma[x] = f.sigma[y];
    }
  }
  return c;
}

}  // namespace

cplx FactoredOperator::trace() const {
  std::uint32_t dim = model->dim();
  std::vector<std::size_t> fpos;
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i].fourier) fpos.push_back(i);

  if (fpos.empty()) {
    Collapsed c = collapse(factors, 0, factors.size(), dim);
    cplx s = 0.0;
    for (std::uint32_t x = 0; x < dim; ++x)
      if (c.sigma[x] == x) s += c.coeff[x];
    return c.scale * s;
  }
  if (fpos.size() == 1) {
    std::size_t p = fpos[0];
    Collapsed L = collapse(factors, 0, p, dim);
    Collapsed R = collapse(factors, p + 1, factors.size(), dim);
    cplx scale = L.scale * factors[p].scale * R.scale;
    std::vector<std::uint32_t> rinv(dim);
    for (std::uint32_t x = 0; x < dim; ++x) rinv[R.sigma[x]] = x;
    cplx s = 0.0;
    for (std::uint32_t x = 0; x < dim; ++x) {
      std::uint32_t a = L.sigma[x];
      std::uint32_t b = rinv[x];
      if (model->tpos_of(a) != model->tpos_of(b)) continue;
      s += L.coeff[x] * model->kernel(a, b) * R.coeff[b];
    }
    return scale * s;
  }
  // Multiple Fourier factors: fall back to applying to basis vectors.
  cplx s = 0.0;
  std::vector<cplx> e(dim);
  for (std::uint32_t j = 0; j < dim; ++j) {
    std::fill(e.begin(), e.end(), cplx(0.0, 0.0));
    e[j] = 1.0;
    apply(e);
    s += e[j];
  }
  return s;
}

void FactoredOperator::apply(std::vector<cplx>& v) const {
  std::uint32_t dim = model->dim();
  if (v.size() != dim) throw FieldError("vector dimension mismatch");
  std::vector<cplx> tmp(dim);
  for (std::size_t i = factors.size(); i-- > 0;) {
    const Factor& f = factors[i];
    if (f.fourier) {
      model->fourier_apply(v);
      if (f.scale != cplx(1.0, 0.0))
        for (auto& z : v) z *= f.scale;
      continue;
    }
    for (std::uint32_t x = 0; x < dim; ++x) {
      cplx z = f.sigma.empty() ? v[x] : v[f.sigma[x]];
      if (!f.coeff.empty()) z *= f.coeff[x];
      tmp[x] = f.scale * z;
    }
    v.swap(tmp);
  }
}

std::vector<std::vector<cplx>> FactoredOperator::dense() const {
  std::uint32_t dim = model->dim();
  std::vector<std::vector<cplx>> m(dim, std::vector<cplx>(dim, 0.0));
  std::vector<cplx> e(dim);
  for (std::uint32_t j = 0; j < dim; ++j) {
    std::fill(e.begin(), e.end(), cplx(0.0, 0.0));
    e[j] = 1.0;
    apply(e);
    for (std::uint32_t i = 0; i < dim; ++i) m[i][j] = e[i];
  }
  return m;
}

// --- symplectic side ---

std::uint32_t w0_pair(const Context& ctx, const W0Vector& w,
                      const W0Vector& w2) {
  const FieldSpec& F = ctx.F();
  const FieldSpec& K = ctx.K();
  std::uint32_t q = ctx.q;
  std::uint32_t s = F.sub(F.mul(w.x, w2.y), F.mul(w2.x, w.y));
  s = F.sub(s, K.trace_to(q, K.mul(w.alpha, w2.beta)));
  s = F.add(s, K.trace_to(q, K.mul(w2.alpha, w.beta)));
  return s;
}

W0Vector w0_act(const Context& ctx, const GroupElement& gK,
                const W0Vector& w) {
  const FieldSpec& F = ctx.F();
  const FieldSpec& K = ctx.K();
  std::uint32_t q = ctx.q;
  auto s1 = [&](std::uint32_t z) { return K.frob(z, q); };
  auto s2 = [&](std::uint32_t z) { return K.frob(z, q * q); };
  auto N = [&](std::uint32_t z) { return K.norm_to(q, z); };
  auto Tr = [&](std::uint32_t z) { return K.trace_to(q, z); };

  std::uint32_t a = gK.a, b = gK.b, c = gK.c, d = gK.d;
  std::uint32_t xe = K.embed(q, w.x), ye = K.embed(q, w.y);
  std::uint32_t al = w.alpha, be = w.beta;

  auto m3 = [&](std::uint32_t u, std::uint32_t v, std::uint32_t z) {
    return K.mul(K.mul(u, v), z);
  };

  // x' = N(a) x + Tr(a a^s b^{s2} alpha) + Tr(b b^s a^{s2} beta) + N(b) y
  std::uint32_t xp = F.add(
      F.add(F.mul(N(a), w.x), Tr(K.mul(m3(a, s1(a), s2(b)), al))),
      F.add(Tr(K.mul(m3(b, s1(b), s2(a)), be)), F.mul(N(b), w.y)));

  // alpha' (three groups plus the x and y terms)
  std::uint32_t ap = K.mul(m3(a, s1(a), s2(c)), xe);
  ap = K.add(ap, K.mul(m3(a, s1(a), s2(d)), al));
  ap = K.add(ap, K.mul(m3(b, s1(a), s2(c)), s1(al)));
  ap = K.add(ap, K.mul(m3(a, s1(b), s2(c)), s2(al)));
  ap = K.add(ap, K.mul(m3(b, s1(b), s2(c)), be));
  ap = K.add(ap, K.mul(m3(a, s1(b), s2(d)), s1(be)));
  ap = K.add(ap, K.mul(m3(b, s1(a), s2(d)), s2(be)));
  ap = K.add(ap, K.mul(m3(b, s1(b), s2(d)), ye));

  // beta'
  std::uint32_t bp = K.mul(m3(d, s1(d), s2(b)), ye);
  bp = K.add(bp, K.mul(m3(d, s1(d), s2(a)), be));
  bp = K.add(bp, K.mul(m3(c, s1(d), s2(b)), s1(be)));
  bp = K.add(bp, K.mul(m3(d, s1(c), s2(b)), s2(be)));
  bp = K.add(bp, K.mul(m3(c, s1(c), s2(b)), al));
  bp = K.add(bp, K.mul(m3(d, s1(c), s2(a)), s1(al)));
  bp = K.add(bp, K.mul(m3(c, s1(d), s2(a)), s2(al)));
  bp = K.add(bp, K.mul(m3(c, s1(c), s2(a)), xe));

  // y' = N(d) y + Tr(d d^s c^{s2} beta) + Tr(c c^s d^{s2} alpha) + N(c) x
  std::uint32_t yp = F.add(
      F.add(F.mul(N(d), w.y), Tr(K.mul(m3(d, s1(d), s2(c)), be))),
      F.add(Tr(K.mul(m3(c, s1(c), s2(d)), al)), F.mul(N(c), w.x)));

  return W0Vector{xp, ap, bp, yp};
}

std::uint32_t w0_similitude(const Context& ctx, const GroupElement& gK) {
  return ctx.K().norm_to(ctx.q, gK.det());
}

}  // namespace weil
