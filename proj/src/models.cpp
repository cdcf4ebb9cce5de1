#include "koszul/models.hpp"

#include <bit>

namespace koszul {

SuperLieAlgebra SuperLieAlgebra::make(std::size_t dim, std::vector<int> parities,
                                      const std::vector<Entry>& entries) {
  if (parities.empty()) parities.assign(dim, 0);
  if (parities.size() != dim) throw kernel_error("parity list has wrong length");
  SuperLieAlgebra g;
  g.dim_ = dim;
  g.par_ = std::move(parities);
  g.C_.assign(dim * dim * dim, Rational(0));
  std::vector<uint8_t> set(dim * dim * dim, 0);
  auto put = [&](std::size_t a, std::size_t b, std::size_t c, const Rational& v) {
    const std::size_t idx = ((a * dim) + b) * dim + c;
    if (set[idx]) {
      if (!(g.C_[idx] == v))
        throw kernel_error("conflicting structure constant for C^" + std::to_string(a + 1));
    } else {
      set[idx] = 1;
      g.C_[idx] = v;
    }
  };
  for (const auto& e : entries) {
    if (e.a >= dim || e.b >= dim || e.c >= dim)
      throw kernel_error("structure constant index out of range");
    if (!is_zero(e.value) &&
        ((g.par_[e.b] + g.par_[e.c]) % 2) != (g.par_[e.a] % 2))
      throw kernel_error("structure constant violates parity consistency");
    const int s = (g.par_[e.b] * g.par_[e.c]) % 2;  // graded antisymmetry sign
    put(e.a, e.b, e.c, e.value);
    put(e.a, e.c, e.b, s ? e.value : -e.value);
  }
  // even diagonal brackets vanish by antisymmetry
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      if (g.par_[b] % 2 == 0 && !is_zero(g.c(a, b, b)))
        throw kernel_error("nonzero bracket of an even generator with itself");
  return g;
}

SuperLieAlgebra SuperLieAlgebra::abelian(std::size_t dim, std::vector<int> parities) {
  return make(dim, std::move(parities), {});
}

std::vector<Rational> SuperLieAlgebra::bracket(std::size_t b, std::size_t c) const {
  std::vector<Rational> v(dim_, Rational(0));
  for (std::size_t a = 0; a < dim_; ++a) v[a] = this->c(a, b, c);
  return v;
}

std::vector<JacobiatorEntry> jacobiator_oracle(const SuperLieAlgebra& g) {
  // [b,[c,d]] - [[b,c],d] - (-1)^{|b||c|} [c,[b,d]] componentwise
  std::vector<JacobiatorEntry> out;
  const std::size_t n = g.dim();
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d) {
        const int sbc = (g.parity(b) * g.parity(c)) % 2;
        for (std::size_t a = 0; a < n; ++a) {
          Rational v(0);
          for (std::size_t e = 0; e < n; ++e) {
            v += g.c(e, c, d) * g.c(a, b, e);
            v -= g.c(e, b, c) * g.c(a, e, d);
            const Rational t = g.c(e, b, d) * g.c(a, c, e);
            v += sbc ? t : -t;
          }
          if (!is_zero(v)) out.push_back({a, b, c, d, v});
        }
      }
  return out;
}

CeData ce_differential(const SuperLieAlgebra& g, SignConvention conv) {
  SlotSignature sig = SlotSignature::make(1, 1, {"par", "gh"});
  std::vector<GeneratorInfo> gens;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    MultiDegree d = MultiDegree::zero(sig);
    d.z2[0] = uint8_t(g.parity(a) % 2);
    d.z[0] = 1;
    gens.push_back({"xi" + std::to_string(a + 1), std::move(d)});
  }
  ContextPtr ctx = GradedContext::make(sig, conv, std::move(gens));

  const Rational half(Integer(1), Integer(2));
  std::vector<Polynomial> vals;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    Polynomial v = Polynomial::zero(ctx);
    for (std::size_t b = 0; b < g.dim(); ++b)
      for (std::size_t c = 0; c < g.dim(); ++c) {
        const Rational& C = g.c(a, b, c);
        if (is_zero(C)) continue;
        v += normal_form(ctx, {{b, 1}, {c, 1}}, C * half);
      }
    vals.push_back(std::move(v));
  }
  MultiDegree qdeg = MultiDegree::zero(sig);
  qdeg.z[0] = 1;
  CeData ce{g, ctx, Derivation::make(ctx, std::move(qdeg), std::move(vals))};
  return ce;
}

namespace {

int gen_parity(const GradedContext& ctx, std::size_t i) { return par(ctx.gen(i).degree); }

}  // namespace

PoissonBivector PoissonBivector::make(ContextPtr base,
                                      std::vector<std::vector<Polynomial>> comp) {
  const std::size_t n = base->size();
  if (comp.size() != n) throw kernel_error("bivector has wrong dimension");
  for (auto& row : comp) {
    if (row.size() != n) throw kernel_error("bivector has wrong dimension");
    for (auto& p : row)
      if (p.context() != base) throw kernel_error("bivector component in wrong context");
  }
  const bool bl = base->convention() == SignConvention::BernsteinLeites;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int pi_par = gen_parity(*base, i), pj_par = gen_parity(*base, j);
      // BL: pi^{IJ} = (-1)^{(|I|+1)(|J|+1)} pi^{JI}; Deligne: (-1)^{|I||J|+1}
      const int e = bl ? ((pi_par + 1) * (pj_par + 1)) % 2 : (pi_par * pj_par + 1) % 2;
      Polynomial want = e ? -comp[j][i] : comp[j][i];
      if (!(comp[i][j] == want))
        throw kernel_error("bivector is not graded-antisymmetric");
      if (!comp[i][j].is_zero()) {
        auto d = comp[i][j].degree();
        if (!d) throw kernel_error("bivector component is inhomogeneous");
        if (par(*d) != (pi_par + pj_par) % 2)
          throw kernel_error("bivector component violates the parity rule");
      }
    }
  PoissonBivector pv;
  pv.base_ = std::move(base);
  pv.comp_ = std::move(comp);
  return pv;
}

PoissonBivector PoissonBivector::zero(ContextPtr base) {
  std::vector<std::vector<Polynomial>> c(base->size(),
                                         std::vector<Polynomial>(base->size(),
                                                                 Polynomial::zero(base)));
  return make(std::move(base), std::move(c));
}

PoissonBivector PoissonBivector::negated() const {
  auto c = comp_;
  for (auto& row : c)
    for (auto& p : row) p = -p;
  return make(base_, std::move(c));
}

std::vector<Polynomial> PoissonBivector::schouten_obstruction() const {
  std::vector<Polynomial> out;
  const std::size_t n = dim();
  auto weight = [&](std::size_t i, std::size_t k) {
    return ((gen_parity(*base_, i) + 1) * (gen_parity(*base_, k) + 1)) % 2;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        Polynomial obs = Polynomial::zero(base_);
        auto cyc = [&](std::size_t a, std::size_t b, std::size_t c) {
          Polynomial t = Polynomial::zero(base_);
          for (std::size_t l = 0; l < n; ++l) {
            if (comp_[a][l].is_zero()) continue;
            Polynomial dpi = left_partial(comp_[b][c], l);
            if (dpi.is_zero()) continue;
            t += comp_[a][l] * dpi;
          }
          return weight(a, c) ? -t : t;
        };
        obs += cyc(i, j, k);
        obs += cyc(j, k, i);
        obs += cyc(k, i, j);
        if (!obs.is_zero()) out.push_back(obs);
      }
  return out;
}

PsmLift psm_lift(const PoissonBivector& pi, SlotPolicy momentum_slot, SlotPolicy form_slot) {
  PsmLift lift{pi, canonical_cotangent(pi.base(), momentum_slot, form_slot),
               Polynomial(), Derivation()};
  const ContextPtr& phase = lift.cot.phase;
  const std::size_t n = pi.dim();
  const Rational half(Integer(1), Integer(2));
  Polynomial Pi = Polynomial::zero(phase);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (pi.comp(i, j).is_zero()) continue;
      Polynomial p_i = Polynomial::generator(phase, lift.cot.momentum[i]);
      Polynomial p_j = Polynomial::generator(phase, lift.cot.momentum[j]);
      Pi += p_i * embed(pi.comp(i, j), phase) * p_j * half;
    }
  lift.hamiltonian = Pi;
  lift.Q = Pi.is_zero()
               ? Derivation::zero(phase, [&] {
                   MultiDegree d = phase->zero_degree();
                   auto& sig = phase->signature();
                   d.z[lift.cot.gh_slot - sig.z2_count] = 1;
                   return d;
                 }())
               : hamiltonian_vf(lift.cot.omega, Pi);
  return lift;
}

Polynomial psm_hamiltonian_alt(const PsmLift& lift) {
  const ContextPtr& phase = lift.cot.phase;
  const std::size_t n = lift.pi.dim();
  const Rational half(Integer(1), Integer(2));
  Polynomial Pi = Polynomial::zero(phase);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (lift.pi.comp(j, i).is_zero()) continue;
      Polynomial p_i = Polynomial::generator(phase, lift.cot.momentum[i]);
      Polynomial p_j = Polynomial::generator(phase, lift.cot.momentum[j]);
      Pi += p_i * p_j * embed(lift.pi.comp(j, i), phase) * half;
    }
  return Pi;
}

std::vector<Polynomial> q_morphism_defect(const Substitution& phi, const Derivation& Q1,
                                          const Derivation& Q2) {
  if (Q2.context() != phi.from || Q1.context() != phi.to)
    throw kernel_error("q_morphism_defect: contexts do not line up");
  phi.validate();
  std::vector<Polynomial> out;
  out.reserve(phi.from->size());
  for (std::size_t q = 0; q < phi.from->size(); ++q)
    out.push_back(Q1.apply(phi.images[q]) - substitute(Q2.value(q), phi));
  return out;
}

Derivation GaugeParameter::vertical_derivation(const MultiDegree& degree) const {
  std::vector<Polynomial> vals(ctx->size(), Polynomial::zero(ctx));
  for (const auto& [g, p] : components) vals.at(g) = p;
  return Derivation::make(ctx, degree, std::move(vals));
}

Derivation gauge_variation(const Derivation& Qtotal, const GaugeParameter& eps) {
  if (eps.ctx != Qtotal.context()) throw kernel_error("gauge_variation: context mismatch");
  MultiDegree deg = Qtotal.context()->zero_degree();
  bool have = false;
  for (const auto& [g, p] : eps.components) {
    if (p.is_zero()) continue;
    auto d = p.degree();
    if (!d) throw kernel_error("gauge parameter component is inhomogeneous");
    MultiDegree cand = *d - eps.ctx->gen(g).degree;
    if (!have) {
      deg = cand;
      have = true;
    } else if (!(deg == cand)) {
      throw kernel_error("gauge parameter components have inconsistent degree");
    }
  }
  if (have && gh(deg) != -1)
    throw kernel_error("gauge parameter must have total ghost degree -1");
  Derivation eps_hat = eps.vertical_derivation(
      have ? deg : [&] {
        MultiDegree d = Qtotal.context()->zero_degree();
        if (!d.z.empty()) d.z.back() = -1;
        return d;
      }());
  return commutator(Qtotal, eps_hat);
}

SuperLieAlgebra cs_extend_algebra(const SuperLieAlgebra& g, std::size_t m) {
  if (m == 0) return g;
  const std::size_t n = g.dim();
  const std::size_t masks = std::size_t(1) << m;
  std::vector<int> parities(n * masks);
  auto idx = [&](std::size_t mask, std::size_t a) { return mask * n + a; };
  for (std::size_t mask = 0; mask < masks; ++mask)
    for (std::size_t a = 0; a < n; ++a)
      parities[idx(mask, a)] = int((g.parity(a) + std::popcount(mask)) % 2);

  auto merge_sign = [&](std::size_t S, std::size_t T) {
    // parity of #{(s,t) in S x T : s > t}
    int inv = 0;
    for (std::size_t s = 0; s < m; ++s) {
      if (!(S >> s & 1)) continue;
      for (std::size_t t = 0; t < s; ++t)
        if (T >> t & 1) inv ^= 1;
    }
    return inv;
  };

  std::vector<SuperLieAlgebra::Entry> entries;
  for (std::size_t S = 0; S < masks; ++S)
    for (std::size_t T = 0; T < masks; ++T) {
      if (S & T) continue;
      int sgn = merge_sign(S, T);
      for (std::size_t a = 0; a < n; ++a) {
        const int move = (g.parity(a) * std::popcount(T)) % 2;  // e_a past eta_T
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c) {
            const Rational& C = g.c(c, a, b);
            if (is_zero(C)) continue;
            Rational v = ((sgn + move) % 2) ? -C : C;
            entries.push_back({idx(S | T, c), idx(S, a), idx(T, b), v});
          }
      }
    }
  return SuperLieAlgebra::make(n * masks, std::move(parities), entries);
}

// ---------------------------------------------------------------------------

PsmScenario psm_scenario(const PoissonBivector& pi, bool with_gauge_params) {
  PsmScenario sc{psm_lift(pi), nullptr, Derivation(), Substitution{}, {}, {}, {}, {}, {}, {}};
  const ContextPtr& phase = sc.lift.cot.phase;
  // build the worldsheet fields in the phase signature, sharing its ghost slot
  const SlotSignature& sig = phase->signature();
  const std::size_t gh_slot = sc.lift.cot.gh_slot;
  const std::size_t n = pi.dim();

  std::vector<GeneratorInfo> gens;
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back({"X" + std::to_string(i + 1), phase->gen(i).degree});
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back({"A" + std::to_string(i + 1),
                    phase->gen(sc.lift.cot.momentum[i]).degree});
  if (with_gauge_params) {
    for (std::size_t i = 0; i < n; ++i) {
      MultiDegree d = phase->gen(sc.lift.cot.momentum[i]).degree;
      d.z[gh_slot - sig.z2_count] -= 1;
      gens.push_back({"eps" + std::to_string(i + 1), std::move(d)});
    }
  }
  ContextPtr ws_base = GradedContext::make(sig, phase->convention(), std::move(gens));
  auto [ws, d] = shift_tangent(ws_base, SlotPolicy::existing(gh_slot));
  sc.source = ws.full;
  sc.d_source = d;
  for (std::size_t i = 0; i < n; ++i) {
    sc.X.push_back(i);
    sc.A.push_back(n + i);
    sc.dX.push_back(ws.partner_of(i));
    sc.dA.push_back(ws.partner_of(n + i));
    if (with_gauge_params) {
      sc.E.push_back(2 * n + i);
      sc.dE.push_back(ws.partner_of(2 * n + i));
    }
  }
  Substitution phi;
  phi.from = phase;
  phi.to = sc.source;
  phi.images.assign(phase->size(), Polynomial::zero(sc.source));
  for (std::size_t i = 0; i < n; ++i) {
    phi.images[i] = Polynomial::generator(sc.source, sc.X[i]);
    phi.images[sc.lift.cot.momentum[i]] = Polynomial::generator(sc.source, sc.A[i]);
  }
  phi.validate();
  sc.field_map = std::move(phi);
  return sc;
}

std::vector<Polynomial> psm_eom_defect(const PsmScenario& sc) {
  return q_morphism_defect(sc.field_map, sc.d_source, -sc.lift.Q);
}

PsmGaugeData psm_gauge_variation(const PsmScenario& sc) {
  const ContextPtr& phase = sc.lift.cot.phase;
  std::vector<GeneratorInfo> gens = sc.source->gens();
  const std::size_t off = gens.size();
  for (const auto& g : phase->gens()) gens.push_back(g);
  ContextPtr total =
      GradedContext::make(sc.source->signature(), sc.source->convention(), std::move(gens));

  const std::size_t n = sc.lift.pi.dim();
  std::vector<Polynomial> qv(total->size(), Polynomial::zero(total));
  for (std::size_t i = 0; i < sc.source->size(); ++i)
    qv[i] = embed(sc.d_source.value(i), total);
  for (std::size_t i = 0; i < phase->size(); ++i)
    qv[off + i] = embed(sc.lift.Q.value(i), total);
  Derivation Qtot = Derivation::make(total, sc.d_source.degree(), std::move(qv));

  GaugeParameter eps;
  eps.ctx = total;
  for (std::size_t i = 0; i < n; ++i)
    eps.components.push_back({off + sc.lift.cot.momentum[i],
                              Polynomial::generator(total, sc.E[i])});

  PsmGaugeData out{total, gauge_variation(Qtot, eps), {}, {}, Substitution{}};
  Substitution fm = Substitution::identity(total);
  for (std::size_t i = 0; i < n; ++i) {
    out.x.push_back(off + i);
    out.p.push_back(off + sc.lift.cot.momentum[i]);
    fm.images[off + i] = Polynomial::generator(total, sc.X[i]);
    fm.images[off + sc.lift.cot.momentum[i]] = Polynomial::generator(total, sc.A[i]);
  }
  out.to_fields = std::move(fm);
  return out;
}

CsScenario cs_scenario(const SuperLieAlgebra& g) {
  CsScenario sc{ce_differential(g), nullptr, Derivation(), Substitution{}, {}, {}, {}, {}};
  const ContextPtr& tgt = sc.ce.ctx;
  const SlotSignature& sig = tgt->signature();
  const std::size_t gh_slot = sig.z2_count;  // the single Z slot
  const std::size_t n = g.dim();

  std::vector<GeneratorInfo> gens;
  for (std::size_t a = 0; a < n; ++a)
    gens.push_back({"A" + std::to_string(a + 1), tgt->gen(a).degree});
  for (std::size_t a = 0; a < n; ++a) {
    MultiDegree d = tgt->gen(a).degree;
    d.z[0] -= 1;
    gens.push_back({"eps" + std::to_string(a + 1), std::move(d)});
  }
  ContextPtr ws_base = GradedContext::make(sig, tgt->convention(), std::move(gens));
  auto [ws, d] = shift_tangent(ws_base, SlotPolicy::existing(gh_slot));
  sc.source = ws.full;
  for (std::size_t a = 0; a < n; ++a) {
    sc.A.push_back(a);
    sc.E.push_back(n + a);
    sc.dA.push_back(ws.partner_of(a));
    sc.dE.push_back(ws.partner_of(n + a));
  }
  Substitution phi;
  phi.from = tgt;
  phi.to = sc.source;
  for (std::size_t a = 0; a < n; ++a)
    phi.images.push_back(Polynomial::generator(sc.source, sc.A[a]));
  phi.validate();
  sc.field_map = std::move(phi);

  sc.d_source = d;
  return sc;
}

std::vector<Polynomial> cs_eom_defect(const CsScenario& sc) {
  return q_morphism_defect(sc.field_map, sc.d_source, -sc.ce.Q);
}

CsGaugeData cs_gauge_variation(const CsScenario& sc) {
  const ContextPtr& tgt = sc.ce.ctx;
  std::vector<GeneratorInfo> gens = sc.source->gens();
  const std::size_t off = gens.size();
  for (const auto& g : tgt->gens()) gens.push_back(g);
  ContextPtr total =
      GradedContext::make(sc.source->signature(), sc.source->convention(), std::move(gens));

  std::vector<Polynomial> qv(total->size(), Polynomial::zero(total));
  for (std::size_t i = 0; i < sc.source->size(); ++i)
    qv[i] = embed(sc.d_source.value(i), total);
  for (std::size_t a = 0; a < tgt->size(); ++a)
    qv[off + a] = embed(sc.ce.Q.value(a), total);
  Derivation Qtot = Derivation::make(total, sc.d_source.degree(), std::move(qv));

  GaugeParameter eps;
  eps.ctx = total;
  for (std::size_t a = 0; a < tgt->size(); ++a)
    eps.components.push_back({off + a, Polynomial::generator(total, sc.E[a])});

  CsGaugeData out{total, gauge_variation(Qtot, eps), {}};
  for (std::size_t a = 0; a < tgt->size(); ++a) out.xi.push_back(off + a);
  return out;
}

GaugeFixResult source_susy_gauge_fix(const Matrix& pi_const) {
  const std::size_t n = pi_const.size();
  for (const auto& row : pi_const)
    if (row.size() != n) throw kernel_error("pi matrix not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(pi_const[i][j] == -pi_const[j][i]))
        throw kernel_error("constant pi must be antisymmetric");
  auto inv = invert(pi_const);
  if (!inv) throw kernel_error("pi is not constant-invertible");

  SlotSignature sig = SlotSignature::make(0, 1, {"gh"});
  std::vector<GeneratorInfo> gens;
  for (std::size_t i = 0; i < n; ++i) {
    MultiDegree d = MultiDegree::zero(sig);
    gens.push_back({"Xt" + std::to_string(i + 1), d});
  }
  for (std::size_t i = 0; i < n; ++i) {
    MultiDegree d = MultiDegree::zero(sig);
    d.z[0] = 1;
    gens.push_back({"At" + std::to_string(i + 1), d});
  }
  ContextPtr base = GradedContext::make(sig, SignConvention::BernsteinLeites, std::move(gens));
  auto [ws, d] = shift_tangent(base, SlotPolicy::existing(0));

  GaugeFixResult res;
  res.ctx = ws.full;
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial e = Polynomial::zero(ws.full);
    for (std::size_t i = 0; i < n; ++i)
      e += Polynomial::generator(ws.full, i) * (*inv)[j][i];
    res.epsilon.push_back(std::move(e));
  }

  // reduce -At_I - d(eps_I) modulo the EOM ideal dXt + pi At = 0,
  // i.e. substitute At_J -> -(pi^{-1})_{JI} dXt^I
  Substitution red = Substitution::identity(ws.full);
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial a = Polynomial::zero(ws.full);
    for (std::size_t i = 0; i < n; ++i)
      a -= Polynomial::generator(ws.full, ws.partner_of(i)) * (*inv)[j][i];
    red.images[n + j] = std::move(a);
  }
  res.residual_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial r = -Polynomial::generator(ws.full, n + i) - d.apply(res.epsilon[i]);
    r = substitute(r, red);
    if (!r.is_zero()) res.residual_zero = false;
    res.residual.push_back(std::move(r));
  }
  return res;
}

}  // namespace koszul
