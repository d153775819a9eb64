#include "decomp.hpp"

#include <cmath>

namespace weil {

namespace {

// Collapse-and-trace of a pre-built factor list with one extra factor
// appended (avoids copying the cached factor vectors).
cplx trace_with(const Model& m, const std::vector<Factor>& gfac,
                const Factor* partner) {
  FactoredOperator op;
  op.model = &m;
  op.factors = gfac;  // cheap relative to the trace itself
  if (partner) op.factors.push_back(*partner);
  return op.trace();
}

}  // namespace

std::vector<cplx> weil_character(const Model& m) {
  const Context& ctx = m.context();
  switch (m.model_case()) {
    case ModelCase::Triple: {
      const ClassList& cl = ctx.tabF->classes();
      std::size_t n = cl.size();
      std::vector<std::vector<Factor>> gfac;
      gfac.reserve(n);
      for (std::size_t c = 0; c < n; ++c)
        gfac.push_back(m.g_factors(cl[c].rep));
      std::vector<cplx> chi(n * n * n);
      for (std::size_t c2 = 0; c2 < n; ++c2) {
        for (std::size_t c3 = 0; c3 < n; ++c3) {
          Factor partner = m.partner_factor_triple(cl[c2].rep, cl[c3].rep);
          for (std::size_t c1 = 0; c1 < n; ++c1)
            chi[(c1 * n + c2) * n + c3] = trace_with(m, gfac[c1], &partner);
        }
      }
      return chi;
    }
    case ModelCase::FxE: {
      const ClassList& clF = ctx.tabF->classes();
      const ClassList& clE = ctx.tabE->classes();
      std::size_t nF = clF.size(), nE = clE.size();
      std::vector<std::vector<Factor>> gfac;
      gfac.reserve(nF);
      for (std::size_t c = 0; c < nF; ++c)
        gfac.push_back(m.g_factors(clF[c].rep));
      std::vector<cplx> chi(nF * nE);
      for (std::size_t c2 = 0; c2 < nE; ++c2) {
        Factor partner = m.partner_factor_fxe(clE[c2].rep);
        for (std::size_t c1 = 0; c1 < nF; ++c1)
          chi[c1 * nE + c2] = trace_with(m, gfac[c1], &partner);
      }
      return chi;
    }
    case ModelCase::Cubic: {
      const ClassList& cl = ctx.tabK->classes();
      std::vector<cplx> chi(cl.size());
      for (std::size_t c = 0; c < cl.size(); ++c)
        chi[c] = m.op_cubic(cl[c].rep).trace();
      return chi;
    }
  }
  throw FieldError("unreachable model case");
}

MultTable multiplicity_table(const Model& m, const std::vector<cplx>& chi) {
  const Context& ctx = m.context();
  MultTable out;
  switch (m.model_case()) {
    case ModelCase::Triple: {
      const CharTable& tab = *ctx.tabF;
      std::size_t n = tab.classes().size();
      if (chi.size() != n * n * n) throw FieldError("character size mismatch");
      double order = static_cast<double>(gl2_order(ctx.q));
      // Stage the contraction one tensor slot at a time.
      std::vector<cplx> t1(n * n * n), t2(n * n * n);
      for (std::size_t l1 = 0; l1 < n; ++l1)
        for (std::size_t c2 = 0; c2 < n; ++c2)
          for (std::size_t c3 = 0; c3 < n; ++c3) {
            cplx s = 0.0;
            for (std::size_t c1 = 0; c1 < n; ++c1)
              s += static_cast<double>(tab.classes()[c1].size) *
                   chi[(c1 * n + c2) * n + c3] *
                   std::conj(tab.eval(tab.labels()[l1],
                                      static_cast<std::uint32_t>(c1)));
            t1[(l1 * n + c2) * n + c3] = s / order;
          }
      for (std::size_t l1 = 0; l1 < n; ++l1)
        for (std::size_t l2 = 0; l2 < n; ++l2)
          for (std::size_t c3 = 0; c3 < n; ++c3) {
            cplx s = 0.0;
            for (std::size_t c2 = 0; c2 < n; ++c2)
              s += static_cast<double>(tab.classes()[c2].size) *
                   t1[(l1 * n + c2) * n + c3] *
                   std::conj(tab.eval(tab.labels()[l2],
                                      static_cast<std::uint32_t>(c2)));
            t2[(l1 * n + l2) * n + c3] = s / order;
          }
      out.mult.resize(n * n * n);
      for (std::size_t l1 = 0; l1 < n; ++l1)
        for (std::size_t l2 = 0; l2 < n; ++l2)
          for (std::size_t l3 = 0; l3 < n; ++l3) {
            cplx s = 0.0;
            for (std::size_t c3 = 0; c3 < n; ++c3)
              s += static_cast<double>(tab.classes()[c3].size) *
                   t2[(l1 * n + l2) * n + c3] *
                   std::conj(tab.eval(tab.labels()[l3],
                                      static_cast<std::uint32_t>(c3)));
            s /= order;
            long long r = std::llround(s.real());
            out.residual = std::max(
                out.residual,
                std::max(std::abs(s.real() - static_cast<double>(r)),
                         std::abs(s.imag())));
            out.mult[(l1 * n + l2) * n + l3] = r;
          }
      return out;
    }
    case ModelCase::FxE: {
      const CharTable& tf = *ctx.tabF;
      const CharTable& te = *ctx.tabE;
      std::size_t nF = tf.classes().size(), nE = te.classes().size();
      if (chi.size() != nF * nE) throw FieldError("character size mismatch");
      double oF = static_cast<double>(gl2_order(ctx.q));
      double oE = static_cast<double>(gl2_order(ctx.E().q));
      std::vector<cplx> t1(nF * nE);
      for (std::size_t l1 = 0; l1 < nF; ++l1)
        for (std::size_t c2 = 0; c2 < nE; ++c2) {
          cplx s = 0.0;
          for (std::size_t c1 = 0; c1 < nF; ++c1)
            s += static_cast<double>(tf.classes()[c1].size) *
                 chi[c1 * nE + c2] *
                 std::conj(
                     tf.eval(tf.labels()[l1], static_cast<std::uint32_t>(c1)));
          t1[l1 * nE + c2] = s / oF;
        }
      out.mult.resize(nF * nE);
      for (std::size_t l1 = 0; l1 < nF; ++l1)
        for (std::size_t l2 = 0; l2 < nE; ++l2) {
          cplx s = 0.0;
          for (std::size_t c2 = 0; c2 < nE; ++c2)
            s += static_cast<double>(te.classes()[c2].size) *
                 t1[l1 * nE + c2] *
                 std::conj(
                     te.eval(te.labels()[l2], static_cast<std::uint32_t>(c2)));
          s /= oE;
          long long r = std::llround(s.real());
          out.residual =
              std::max(out.residual,
                       std::max(std::abs(s.real() - static_cast<double>(r)),
                                std::abs(s.imag())));
          out.mult[l1 * nE + l2] = r;
        }
      return out;
    }
    case ModelCase::Cubic: {
      const CharTable& tk = *ctx.tabK;
      std::size_t n = tk.classes().size();
      if (chi.size() != n) throw FieldError("character size mismatch");
      double oK = static_cast<double>(gl2_order(ctx.K().q));
      out.mult.resize(n);
      for (std::size_t l = 0; l < n; ++l) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
          if (chi[c] == cplx(0.0, 0.0)) continue;
          s += static_cast<double>(tk.classes()[c].size) * chi[c] *
               std::conj(
                   tk.eval(tk.labels()[l], static_cast<std::uint32_t>(c)));
        }
        s /= oK;
        long long r = std::llround(s.real());
        out.residual =
            std::max(out.residual,
                     std::max(std::abs(s.real() - static_cast<double>(r)),
                              std::abs(s.imag())));
        out.mult[l] = r;
      }
      return out;
    }
  }
  throw FieldError("unreachable model case");
}

std::vector<long long> predicted_decomposition(const Model& m) {
  const Context& ctx = m.context();
  const CharTable& tf = *ctx.tabF;
  std::size_t nF = tf.labels().size();
  switch (m.model_case()) {
    case ModelCase::Triple: {
      std::vector<long long> pred(nF * nF * nF, 0);
      for (std::size_t i = 0; i < nF; ++i)
        pred[(i * nF + i) * nF + i] += 1;
      for (std::size_t j = 0; j < static_cast<std::size_t>(ctx.q - 1); ++j) {
        std::uint32_t st = tf.label_index(
            {IrrLabel::Steinberg, static_cast<std::uint32_t>(j), 0});
        std::uint32_t on = tf.label_index(
            {IrrLabel::OneDim, static_cast<std::uint32_t>(j), 0});
        pred[(static_cast<std::size_t>(st) * nF + on) * nF + on] += 1;
        pred[(static_cast<std::size_t>(on) * nF + st) * nF + on] += 1;
        pred[(static_cast<std::size_t>(on) * nF + on) * nF + st] += 1;
      }
      return pred;
    }
    case ModelCase::FxE: {
      const CharTable& te = *ctx.tabE;
      std::size_t nE = te.labels().size();
      std::vector<long long> pred(nF * nE, 0);
      for (std::size_t i = 0; i < nF; ++i) {
        std::uint32_t bc = te.label_index(base_change(tf, te, tf.labels()[i]));
        pred[i * nE + bc] += 1;
      }
      for (std::size_t j = 0; j < static_cast<std::size_t>(ctx.q - 1); ++j) {
        std::uint32_t st = tf.label_index(
            {IrrLabel::Steinberg, static_cast<std::uint32_t>(j), 0});
        IrrLabel lift = base_change(
            tf, te, {IrrLabel::OneDim, static_cast<std::uint32_t>(j), 0});
        pred[static_cast<std::size_t>(st) * nE + te.label_index(lift)] += 1;
      }
      return pred;
    }
    case ModelCase::Cubic: {
      const CharTable& tk = *ctx.tabK;
      std::size_t nK = tk.labels().size();
      std::vector<long long> pred(nK, 0);
      for (std::size_t i = 0; i < nF; ++i)
        pred[tk.label_index(base_change(tf, tk, tf.labels()[i]))] += 1;
      return pred;
    }
  }
  throw FieldError("unreachable model case");
}

std::string tensor_label(const Model& m, std::size_t flat) {
  const Context& ctx = m.context();
  const CharTable& tf = *ctx.tabF;
  std::size_t nF = tf.labels().size();
  switch (m.model_case()) {
    case ModelCase::Triple: {
      std::size_t l3 = flat % nF, l2 = (flat / nF) % nF, l1 = flat / (nF * nF);
      return tf.label_str(tf.labels()[l1]) + "\xE2\x8A\x97" +
             tf.label_str(tf.labels()[l2]) + "\xE2\x8A\x97" +
             tf.label_str(tf.labels()[l3]);
    }
    case ModelCase::FxE: {
      const CharTable& te = *ctx.tabE;
      std::size_t nE = te.labels().size();
      std::size_t l2 = flat % nE, l1 = flat / nE;
      return tf.label_str(tf.labels()[l1]) + "\xE2\x8A\x97" +
             te.label_str(te.labels()[l2]);
    }
    case ModelCase::Cubic: {
      const CharTable& tk = *ctx.tabK;
      return tk.label_str(tk.labels()[flat]);
    }
  }
  throw FieldError("unreachable model case");
}

TheoremReport verify_theorem(const Model& m) {
  const Context& ctx = m.context();
  TheoremReport rep;
  rep.q = ctx.q;
  switch (m.model_case()) {
    case ModelCase::Triple: rep.case_name = "triple"; break;
    case ModelCase::FxE: rep.case_name = "fxe"; break;
    case ModelCase::Cubic: rep.case_name = "cubic"; break;
  }
  std::vector<cplx> chi = weil_character(m);
  MultTable table = multiplicity_table(m, chi);
  std::vector<long long> pred = predicted_decomposition(m);
  if (pred.size() != table.mult.size())
    throw FieldError("prediction size mismatch");
  rep.labels_checked = table.mult.size();
  rep.max_residual = table.residual;
  rep.dim_expected = static_cast<std::uint64_t>(m.dim());

  auto tuple_dim = [&](std::size_t flat) -> std::uint64_t {
    const CharTable& tf = *ctx.tabF;
    std::size_t nF = tf.labels().size();
    switch (m.model_case()) {
      case ModelCase::Triple: {
        std::size_t l3 = flat % nF, l2 = (flat / nF) % nF,
                    l1 = flat / (nF * nF);
        return tf.dim(tf.labels()[l1]) * tf.dim(tf.labels()[l2]) *
               tf.dim(tf.labels()[l3]);
      }
      case ModelCase::FxE: {
        const CharTable& te = *ctx.tabE;
        std::size_t nE = te.labels().size();
        return tf.dim(tf.labels()[flat / nE]) *
               te.dim(te.labels()[flat % nE]);
      }
      case ModelCase::Cubic:
        return ctx.tabK->dim(ctx.tabK->labels()[flat]);
    }
    return 0;
  };

  for (std::size_t i = 0; i < table.mult.size(); ++i) {
    long long mv = table.mult[i];
    if (mv != 0) {
      rep.nonzero.push_back({tensor_label(m, i), mv});
      std::uint64_t d = static_cast<std::uint64_t>(mv) * tuple_dim(i);
      rep.dim_total += d;
      if (m.model_case() == ModelCase::Cubic) {
        if (ctx.tabK->labels()[i].kind == IrrLabel::Cuspidal)
          rep.dim_cuspidal += d;
        else
          rep.dim_noncuspidal += d;
      }
    }
    if (mv != pred[i])
      rep.mismatches.push_back(tensor_label(m, i) + ": observed " +
                               std::to_string(mv) + ", predicted " +
                               std::to_string(pred[i]));
  }
  rep.pass = rep.mismatches.empty() && rep.max_residual < 1e-6 &&
             rep.dim_total == rep.dim_expected;
  return rep;
}

}  // namespace weil
