#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

namespace weil {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::vector<std::string> cases_of(const RunConfig& cfg) {
  if (cfg.model_case == "all") return {"triple", "fxe", "cubic"};
  return {cfg.model_case};
}

bool selected(const RunConfig& cfg, const std::string& name) {
  if (cfg.checks.empty()) return true;
  for (const auto& c : cfg.checks) {
    if (c == name) return true;
    if (name == "chartab" && c == "orthogonality") return true;
    if (name == "orthogonality" && c == "chartab") return true;
  }
  return false;
}

ModelCase case_enum(const std::string& s) {
  if (s == "triple") return ModelCase::Triple;
  if (s == "fxe") return ModelCase::FxE;
  return ModelCase::Cubic;
}

GroupElement random_invertible(const FieldSpec& X, std::mt19937_64& rng) {
  while (true) {
    GroupElement g{&X, static_cast<std::uint32_t>(rng() % X.q),
                   static_cast<std::uint32_t>(rng() % X.q),
                   static_cast<std::uint32_t>(rng() % X.q),
                   static_cast<std::uint32_t>(rng() % X.q)};
    if (g.invertible()) return g;
  }
}

// Row and column orthogonality of one character table, plus the independent
// cuspidal matrix-model cross-check when `with_oracle` is set.
double orthogonality_error(const CharTable& tab, bool with_oracle) {
  const auto& labels = tab.labels();
  const ClassList& cls = tab.classes();
  std::size_t n = labels.size();
  std::vector<std::vector<cplx>> V(n, std::vector<cplx>(cls.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < cls.size(); ++c)
      V[i][c] = tab.eval(labels[i], static_cast<std::uint32_t>(c));

  double g_order = static_cast<double>(gl2_order(tab.field().q));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t c = 0; c < cls.size(); ++c)
        s += static_cast<double>(cls[c].size) * V[i][c] * std::conj(V[j][c]);
      s /= g_order;
      worst = std::max(worst, std::abs(s - (i == j ? cplx(1.0) : cplx(0.0))));
    }
  }
  for (std::size_t c1 = 0; c1 < cls.size(); ++c1) {
    for (std::size_t c2 = c1; c2 < cls.size(); ++c2) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += V[i][c1] * std::conj(V[i][c2]);
      cplx expect =
          c1 == c2 ? cplx(g_order / static_cast<double>(cls[c1].size)) : 0.0;
      worst = std::max(worst, std::abs(s - expect));
    }
  }

  if (with_oracle) {
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i].kind != IrrLabel::Cuspidal) continue;
      std::vector<cplx> model = cuspidal_model_char(tab, labels[i].j1);
      for (std::size_t c = 0; c < cls.size(); ++c)
        worst = std::max(worst, std::abs(model[c] - V[i][c]));
    }
  }
  return worst;
}

}  // namespace

RunReport run_verify(const RunConfig& cfg) {
  if (cfg.q < 3 || cfg.q % 2 == 0 || !is_prime(cfg.q))
    throw ConfigError("q must be an odd prime >= 3");
  if (cfg.q > 7) throw ConfigError("q too large for the field tower");
  if (cfg.q == 7 && !cfg.allow_large)
    throw ConfigError("q = 7 requires --allow-large");
  if (cfg.model_case != "triple" && cfg.model_case != "fxe" &&
      cfg.model_case != "cubic" && cfg.model_case != "all")
    throw ConfigError("unknown case: " + cfg.model_case);
  if (cfg.format != "json" && cfg.format != "csv")
    throw ConfigError("unknown format: " + cfg.format);
  if (!(cfg.tol > 0.0)) throw ConfigError("tolerance must be positive");
  for (const auto& c : cfg.checks)
    if (c != "chartab" && c != "orthogonality" && c != "orbits" &&
        c != "homomorphism" && c != "appendix2" && c != "decomposition")
      throw ConfigError("unknown check: " + c);
  bool has_cubic = cfg.model_case == "cubic" || cfg.model_case == "all";
  if (!cfg.checks.empty() && !has_cubic)
    for (const auto& c : cfg.checks)
      if (c == "appendix2")
        throw ConfigError("appendix2 applies to the cubic case only");
  if (cfg.dense_oracle && cfg.q != 3)
    throw ConfigError("--dense-oracle is supported at q = 3 only");

  RunReport rep;
  rep.cfg = cfg;
  Context ctx = Context::make(cfg.q);
  std::vector<std::string> cases = cases_of(cfg);
  bool prefixed = cfg.model_case == "all";
  ordered_json audits = ordered_json::object();

  // Shared check: row/column orthogonality of the base and quadratic tables,
  // with the cuspidal matrix-model oracle on the base table.
  if (selected(cfg, "chartab")) {
    double worst = std::max(orthogonality_error(*ctx.tabF, true),
                            orthogonality_error(*ctx.tabE, false));
    CheckResult r;
    r.name = "orthogonality";
    r.pass = worst < 1e-9;
    r.details = "max deviation " + fmt("%.3e", worst) +
                " over row/column relations and the cuspidal model oracle";
    rep.checks.push_back(r);
    audits["orthogonality"] = {{"max_deviation", worst}};
  }

  std::mt19937_64 rng(cfg.seed);
  for (const auto& cs : cases) {
    std::string pfx = prefixed ? cs + "." : "";
    Model m(ctx, case_enum(cs));
    ordered_json ca = ordered_json::object();

    if (selected(cfg, "orbits") && cfg.q <= 5) {
      bool ok = true;
      std::string details;
      auto record = [&](const OrbitScan& s) {
        ordered_json arr = ordered_json::array();
        for (const auto& o : s.orbits)
          arr.push_back({{"rep", o.rep},
                         {"size", o.size},
                         {"stabilizer", o.stab_order},
                         {"description", o.description}});
        ca["orbits_" + s.variant] = arr;
      };
      std::uint32_t q = cfg.q;
      if (cs == "triple" || cs == "fxe") {
        OrbitScan s = orbit_scan(m, cs);
        record(s);
        std::uint64_t xi = 0, eta = 0, delta = 0;
        for (const auto& o : s.orbits) {
          if (o.description.rfind("xi[", 0) == 0) ++xi;
          if (o.description == "eta") ++eta;
          if (o.description == "delta") ++delta;
        }
        ok = xi == q - 1 && eta == 1 && delta == 1 &&
             s.orbits.front().size == q - 1;
        details = std::to_string(s.orbits.size()) + " orbits";
        if (cs == "fxe") {
          U2Structure u2 = u2_structure(ctx);
          ca["unitary_group"] = {{"order", u2.u2_order},
                                 {"expected", u2.u2_expected},
                                 {"coset1", u2.coset1},
                                 {"coset2", u2.coset2}};
          ok = ok && u2.pass;
          for (const auto& o : s.orbits)
            if (o.description.rfind("xi[", 0) == 0)
              ok = ok && o.stab_order == u2.u2_order;
          details += "; unitary group order " + std::to_string(u2.u2_order);
        }
      } else {
        OrbitScan sn = orbit_scan(m, "cubicN");
        OrbitScan st = orbit_scan(m, "cubicT");
        record(sn);
        record(st);
        std::uint64_t fixed = 0, moving = 0;
        for (const auto& o : sn.orbits)
          (o.size == 1 ? fixed : moving) += 1;
        std::uint64_t q3 = static_cast<std::uint64_t>(q) * q * q;
        ok = fixed == q3 * (q - 1) &&
             moving == static_cast<std::uint64_t>(q - 1) * (q - 1);
        for (const auto& o : sn.orbits)
          if (o.size != 1) ok = ok && o.size == q3;
        details = std::to_string(sn.orbits.size()) + " unipotent orbits, " +
                  std::to_string(st.orbits.size()) + " torus orbits";
      }
      if (cs != "cubic" && cfg.q == 3) {
        // Fixed-space dimension tables against the closed-form predictions.
        HomDims h = cs == "triple" ? hom_dims_triple(ctx) : hom_dims_fxe(ctx);
        std::vector<long long> pred = cs == "triple"
                                          ? predicted_hom_dims_triple(ctx)
                                          : predicted_hom_dims_fxe(ctx);
        ok = ok && h.residual < 1e-9 && h.total == pred;
        ca["hom_dims_match"] = (h.total == pred);
        details += "; fixed-space table " +
                   std::string(h.total == pred ? "matches" : "DIFFERS");
      }
      rep.checks.push_back({pfx + "orbits", ok, details});
    }

    if (selected(cfg, "homomorphism")) {
      double worst = 0.0;
      std::uint32_t dim = m.dim();
      auto probe = [&](const FactoredOperator& ox, const FactoredOperator& oy,
                       const FactoredOperator& oxy) {
        for (int b = 0; b < 20; ++b) {
          std::uint32_t i = static_cast<std::uint32_t>(rng() % dim);
          std::vector<cplx> v(dim, 0.0), w(dim, 0.0);
          v[i] = 1.0;
          w[i] = 1.0;
          oy.apply(v);
          ox.apply(v);
          oxy.apply(w);
          for (std::uint32_t k = 0; k < dim; ++k)
            worst = std::max(worst, std::abs(v[k] - w[k]));
        }
      };
      for (int it = 0; it < 200; ++it) {
        if (cs == "triple") {
          GroupElement x1 = random_invertible(ctx.F(), rng),
                       x2 = random_invertible(ctx.F(), rng),
                       x3 = random_invertible(ctx.F(), rng),
                       y1 = random_invertible(ctx.F(), rng),
                       y2 = random_invertible(ctx.F(), rng),
                       y3 = random_invertible(ctx.F(), rng);
          probe(m.op_triple(x1, x2, x3), m.op_triple(y1, y2, y3),
                m.op_triple(gl2_mul(x1, y1), gl2_mul(x2, y2),
                            gl2_mul(x3, y3)));
        } else if (cs == "fxe") {
          GroupElement x1 = random_invertible(ctx.F(), rng),
                       x2 = random_invertible(ctx.E(), rng),
                       y1 = random_invertible(ctx.F(), rng),
                       y2 = random_invertible(ctx.E(), rng);
          probe(m.op_fxe(x1, x2), m.op_fxe(y1, y2),
                m.op_fxe(gl2_mul(x1, y1), gl2_mul(x2, y2)));
        } else {
          GroupElement x = random_invertible(ctx.K(), rng),
                       y = random_invertible(ctx.K(), rng);
          probe(m.op_cubic(x), m.op_cubic(y), m.op_cubic(gl2_mul(x, y)));
        }
      }
      CheckResult r;
      r.name = pfx + "homomorphism";
      r.pass = worst < 1e-8;
      r.details =
          "200 random pairs, 20 basis vectors each; max deviation " +
          fmt("%.3e", worst);
      rep.checks.push_back(r);
      ca["homomorphism_max_deviation"] = worst;
    }

    if (selected(cfg, "appendix2") && cs == "cubic") {
      BorelInvariantReport b0 = k_borel_invariants(m, 0);
      BorelInvariantReport b1 = k_borel_invariants(m, 1);
      bool ok = b0.pass && b1.pass;
      ordered_json tab = ordered_json::object();
      auto dump = [&](const char* key, const std::vector<cplx>& vals) {
        ordered_json arr = ordered_json::array();
        for (const auto& v : vals)
          arr.push_back({{"re", v.real()}, {"im", v.imag()}});
        tab[key] = arr;
      };
      dump("A", b0.A_vals);
      dump("B", b0.B_vals);
      dump("wA", b0.wA_vals);
      dump("wB", b0.wB_vals);
      dump("expected_A", b0.expect_A);
      dump("expected_B", b0.expect_B);
      dump("expected_wA", b0.expect_wA);
      tab["max_error"] = b0.max_err;
      tab["invariance_error"] = b0.invariance_err;
      ca["borel_invariants"] = tab;
      CheckResult r;
      r.name = pfx + "appendix2";
      r.pass = ok;
      r.details = "untwisted max error " + fmt("%.3e", b0.max_err) +
                  ", mix invariance " + fmt("%.3e", b0.invariance_err) +
                  ", twisted max error " + fmt("%.3e", b1.max_err);
      rep.checks.push_back(r);
    }

    if (selected(cfg, "decomposition")) {
      TheoremReport tr = verify_theorem(m);
      bool ok = tr.pass && tr.max_residual < cfg.tol;
      CheckResult r;
      r.name = pfx + "decomposition";
      r.pass = ok;
      r.details = std::to_string(tr.labels_checked) + " labels, " +
                  std::to_string(tr.nonzero.size()) +
                  " nonzero, max residual " + fmt("%.3e", tr.max_residual);
      if (!tr.mismatches.empty())
        r.details += "; " + std::to_string(tr.mismatches.size()) +
                     " mismatches vs prediction";
      rep.checks.push_back(r);
      for (const auto& e : tr.nonzero) {
        MultEntry me = e;
        if (prefixed) me.label = cs + ":" + me.label;
        rep.multiplicities.push_back(me);
      }
      ca["labels_checked"] = tr.labels_checked;
      ca["dim_total"] = tr.dim_total;
      ca["dim_expected"] = tr.dim_expected;
      if (cs == "cubic") {
        ca["dim_cuspidal"] = tr.dim_cuspidal;
        ca["dim_noncuspidal"] = tr.dim_noncuspidal;
      }
      ca["max_residual"] = tr.max_residual;
      if (!tr.mismatches.empty()) ca["mismatches"] = tr.mismatches;
    }

    if (cfg.dense_oracle) {
      double worst = 0.0;
      for (int it = 0; it < 10; ++it) {
        FactoredOperator op =
            cs == "triple"
                ? m.op_triple(random_invertible(ctx.F(), rng),
                              random_invertible(ctx.F(), rng),
                              random_invertible(ctx.F(), rng))
                : cs == "fxe"
                      ? m.op_fxe(random_invertible(ctx.F(), rng),
                                 random_invertible(ctx.E(), rng))
                      : m.op_cubic(random_invertible(ctx.K(), rng));
        std::vector<std::vector<cplx>> d = op.dense();
        cplx dtr = 0.0;
        for (std::uint32_t i = 0; i < m.dim(); ++i) dtr += d[i][i];
        worst = std::max(worst, std::abs(dtr - op.trace()));
      }
      rep.checks.push_back({pfx + "dense_oracle", worst < 1e-9,
                            "10 random traces via dense matrices; max "
                            "deviation " +
                                fmt("%.3e", worst)});
      ca["dense_oracle_max_deviation"] = worst;
    }

    audits[cs] = ca;
  }

  rep.audits_json = audits.dump();
  return rep;
}

std::string render_json(const RunReport& rep) {
  ordered_json j;
  j["case"] = rep.cfg.model_case;
  j["q"] = rep.cfg.q;
  j["tolerance"] = rep.cfg.tol;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks)
    checks.push_back(
        {{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  j["checks"] = checks;
  ordered_json mults = ordered_json::array();
  for (const auto& m : rep.multiplicities)
    mults.push_back({{"label", m.label}, {"mult", m.mult}});
  j["multiplicities"] = mults;
  j["audits"] = ordered_json::parse(rep.audits_json);
  // Reports are byte-deterministic for identical configurations; wall-clock
  // timing goes to stderr instead.
  j["timing_ms"] = 0;
  return j.dump(2) + "\n";
}

std::string render_csv(const RunReport& rep) {
  std::string out = "label,mult\n";
  for (const auto& m : rep.multiplicities)
    out += "\"" + m.label + "\"," + std::to_string(m.mult) + "\n";
  return out;
}

std::string chartab_csv(std::uint32_t q, std::uint32_t degree) {
  if (q < 3 || q % 2 == 0 || !is_prime(q))
    throw ConfigError("q must be an odd prime >= 3");
  if (q > 7) throw ConfigError("q too large for the field tower");
  if (degree < 1 || degree > 3) throw ConfigError("degree must be 1, 2 or 3");
  Context ctx = Context::make(q);
  const CharTable& tab = degree == 1 ? *ctx.tabF
                         : degree == 2 ? *ctx.tabE
                                       : *ctx.tabK;
  const ClassList& cls = tab.classes();
  std::string out = "label";
  for (std::size_t c = 0; c < cls.size(); ++c)
    out += ",\"" + gl2_str(cls[c].rep) + "\"";
  out += "\n";
  for (const auto& l : tab.labels()) {
    out += "\"" + tab.label_str(l) + "\"";
    for (std::size_t c = 0; c < cls.size(); ++c) {
      cplx v = tab.eval(l, static_cast<std::uint32_t>(c));
      if (std::abs(v.real()) < 1e-12) v = cplx(0.0, v.imag());
      if (std::abs(v.imag()) < 1e-12) v = cplx(v.real(), 0.0);
      char buf[80];
      std::snprintf(buf, sizeof(buf), ",\"%.12g,%.12g\"", v.real(), v.imag());
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace weil
