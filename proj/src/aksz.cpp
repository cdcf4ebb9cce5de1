#include "koszul/aksz.hpp"

#include <bit>

namespace koszul {

BerezinianMeasure BerezinianMeasure::make(ContextPtr ctx, std::vector<std::size_t> gens) {
  std::vector<uint8_t> seen(ctx->size(), 0);
  for (auto g : gens) {
    if (g >= ctx->size()) throw kernel_error("measure generator out of range");
    if (!ctx->odd(g)) throw kernel_error("measure over a non-odd generator");
    if (seen[g]++) throw kernel_error("measure lists a generator twice");
  }
  return BerezinianMeasure{std::move(ctx), std::move(gens)};
}

long long BerezinianMeasure::deficit() const {
  long long n = 0;
  for (auto g : gens) n += gh(ctx->gen(g).degree);
  return n;
}

Polynomial berezin(const Polynomial& f, const BerezinianMeasure& mu) {
  if (f.context() != mu.ctx) throw kernel_error("berezin: context mismatch");
  const GradedContext& ctx = *mu.ctx;
  Polynomial out(mu.ctx);
  for (const auto& [m, c] : f.terms()) {
    bool full = true;
    for (auto g : mu.gens)
      if (m.exponent_of(uint32_t(g)) != 1) {
        full = false;
        break;
      }
    if (!full) continue;
    // move the measure generators (in measure order) to the front
    std::vector<Monomial::Factor> atoms = m.factors();
    int parity = 0;
    std::size_t front = 0;
    for (auto g : mu.gens) {
      std::size_t pos = front;
      while (pos < atoms.size() && atoms[pos].first != g) ++pos;
      for (std::size_t u = front; u < pos; ++u)
        parity ^= int((uint64_t(atoms[u].second) * ctx.pair_exponent(g, atoms[u].first)) & 1);
      Monomial::Factor fac = atoms[pos];
      atoms.erase(atoms.begin() + pos);
      atoms.insert(atoms.begin() + front, fac);
      ++front;
    }
    std::vector<Monomial::Factor> rest(atoms.begin() + front, atoms.end());
    out.add_term(Monomial(std::move(rest)), parity ? -c : c);
  }
  return out;
}

AdmissibleResult measure_admissible(const Derivation& Q, const BerezinianMeasure& mu) {
  if (Q.context() != mu.ctx) throw kernel_error("measure_admissible: context mismatch");
  const GradedContext& ctx = *mu.ctx;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (!ctx.odd(i) && gh(ctx.gen(i).degree) > 0) {
      return {false,
              "non-nilpotent generator '" + ctx.gen(i).name + "' of positive ghost degree",
              std::nullopt};
    }
  }
  const std::size_t q = mu.gens.size();
  if (q >= 63) throw kernel_error("measure too large to enumerate");
  for (std::size_t mask = 0; mask + 1 < (std::size_t(1) << q); ++mask) {
    std::vector<std::pair<std::size_t, uint32_t>> word;
    for (std::size_t a = 0; a < q; ++a)
      if (mask >> a & 1) word.push_back({mu.gens[a], 1});
    Polynomial f = normal_form(mu.ctx, word);
    if (!berezin(Q.apply(f), mu).is_zero())
      return {false, "Q-invariance fails", f};
  }
  return {true, "", std::nullopt};
}

bool top_cohomology_is_line(const SuperLieAlgebra& g) {
  for (std::size_t a = 0; a < g.dim(); ++a)
    if (g.parity(a) % 2) throw kernel_error("top_cohomology_is_line expects an even algebra");
  CeData ce = ce_differential(g);
  const std::size_t n = g.dim();
  Monomial top;
  {
    std::vector<Monomial::Factor> fs;
    for (std::size_t i = 0; i < n; ++i) fs.push_back({uint32_t(i), 1});
    top = Monomial(std::move(fs));
  }
  for (std::size_t skip = 0; skip < n; ++skip) {
    std::vector<Monomial::Factor> fs;
    for (std::size_t i = 0; i < n; ++i)
      if (i != skip) fs.push_back({uint32_t(i), 1});
    Polynomial m(ce.ctx);
    m.add_term(Monomial(std::move(fs)), Rational(1));
    const Polynomial img = ce.Q.apply(m);
    for (const auto& [mono, c] : img.terms())
      if (mono == top) return false;  // top monomial is exact
  }
  return true;
}

namespace {

std::string mask_suffix(std::size_t mask) {
  if (!mask) return "0";
  std::string s;
  for (std::size_t a = 0; mask >> a; ++a)
    if (mask >> a & 1) s += std::to_string(a + 1);
  return s;
}

// theta_S * g as a word for normal_form: thetas ascending, then the factor
std::vector<std::pair<std::size_t, uint32_t>> theta_word(
    const std::vector<std::size_t>& theta, std::size_t mask, std::size_t gen) {
  std::vector<std::pair<std::size_t, uint32_t>> w;
  for (std::size_t a = 0; mask >> a; ++a)
    if (mask >> a & 1) w.push_back({theta[a], 1});
  w.push_back({gen, 1});
  return w;
}

}  // namespace

OddSourceLift odd_source_lift(const Derivation& Q0, const ConstantSymplecticForm& omega,
                              std::size_t m) {
  if (m < 1 || m > 2) throw kernel_error("odd_source_lift supports m in {1,2}");
  const ContextPtr target = Q0.context();
  if (omega.phase() != target) throw kernel_error("omega lives on a different context");
  if (!squares_to_zero(Q0)) throw kernel_error("Q0 is not a Q-structure");

  OddSourceLift lift;
  lift.m = m;
  lift.target = target;

  SlotSignature sig = target->signature();
  const std::size_t extra0 = sig.z2_count;
  for (std::size_t a = 0; a < m; ++a) {
    std::string name = "s" + std::to_string(a + 1);
    auto taken = [&](const std::string& n) {
      for (const auto& s : sig.slot_names)
        if (s == n) return true;
      return false;
    };
    while (taken(name)) name = "s" + name;
    sig.z2_count += 1;
    sig.slot_names.insert(sig.slot_names.begin() + (sig.z2_count - 1), name);
  }
  const std::size_t masks = std::size_t(1) << m;

  std::vector<GeneratorInfo> comp_gens;
  lift.comp_index.assign(target->size(), std::vector<std::size_t>(masks, 0));
  for (std::size_t i = 0; i < target->size(); ++i) {
    for (std::size_t mask = 0; mask < masks; ++mask) {
      MultiDegree d = target->gen(i).degree.padded(target->signature(), sig);
      for (std::size_t a = 0; a < m; ++a)
        if (mask >> a & 1) d += MultiDegree::unit(sig, extra0 + a);
      lift.comp_index[i][mask] = comp_gens.size();
      comp_gens.push_back({target->gen(i).name + "_" + mask_suffix(mask), std::move(d)});
    }
  }
  lift.components = GradedContext::make(sig, target->convention(), comp_gens);

  std::vector<GeneratorInfo> big_gens;
  for (std::size_t a = 0; a < m; ++a) {
    MultiDegree d = MultiDegree::unit(sig, extra0 + a);
    big_gens.push_back({"th" + std::to_string(a + 1), std::move(d)});
    lift.theta.push_back(a);
  }
  for (const auto& g : comp_gens) big_gens.push_back(g);
  lift.big = GradedContext::make(sig, target->convention(), std::move(big_gens));

  // ev*: q -> sum_S theta_S q_S
  lift.ev.from = target;
  lift.ev.to = lift.big;
  for (std::size_t i = 0; i < target->size(); ++i) {
    Polynomial img = Polynomial::zero(lift.big);
    for (std::size_t mask = 0; mask < masks; ++mask)
      img += normal_form(lift.big, theta_word(lift.theta, mask, m + lift.comp_index[i][mask]));
    lift.ev.images.push_back(std::move(img));
  }
  lift.ev.validate();

  // transported Q: theta_S-components of ev*(Q0 q), with the sign of moving
  // the odd lift past theta_S
  std::vector<Polynomial> qvals(lift.components->size(), Polynomial::zero(lift.components));
  for (std::size_t i = 0; i < target->size(); ++i) {
    const Polynomial E = substitute(Q0.value(i), lift.ev);
    std::vector<Polynomial> per_mask(masks, Polynomial::zero(lift.components));
    for (const auto& [mono, c] : E.terms()) {
      std::size_t mask = 0;
      std::vector<Monomial::Factor> rest;
      for (const auto& [g, e] : mono.factors()) {
        if (g < m)
          mask |= std::size_t(1) << g;
        else
          rest.push_back({uint32_t(g - m), e});
      }
      per_mask[mask].add_term(Monomial(std::move(rest)), c);
    }
    for (std::size_t mask = 0; mask < masks; ++mask) {
      const bool neg = std::popcount(mask) % 2;
      qvals[lift.comp_index[i][mask]] = neg ? -per_mask[mask] : per_mask[mask];
    }
  }
  lift.Q_ext = Derivation::make(lift.components,
                                Q0.degree().padded(target->signature(), sig),
                                std::move(qvals));
  if (!squares_to_zero(lift.Q_ext))
    throw kernel_error("transported Q-structure fails to square to zero");

  // transported symplectic form: expand each shifted generator with the
  // components' own partners and integrate the thetas out
  auto [comp_shift, dc] = shift_tangent(lift.components, SlotPolicy::fresh("frm"));
  auto [big_shift, db] = shift_tangent(lift.big, SlotPolicy::fresh("frm"));
  lift.comp_shift = comp_shift;

  const ShiftedContext& tsh = omega.shift();
  Substitution evs;
  evs.from = tsh.full;
  evs.to = big_shift.full;
  evs.check_degrees = false;  // form slots of source and image differ
  evs.images.assign(tsh.full->size(), Polynomial::zero(big_shift.full));
  for (std::size_t i = 0; i < target->size(); ++i) {
    evs.images[i] = embed(lift.ev.images[i], big_shift.full);
    Polynomial img = Polynomial::zero(big_shift.full);
    for (std::size_t mask = 0; mask < masks; ++mask) {
      const std::size_t dcomp = big_shift.partner_of(m + lift.comp_index[i][mask]);
      img += normal_form(big_shift.full, theta_word(lift.theta, mask, dcomp));
    }
    evs.images[tsh.partner_of(i)] = std::move(img);
  }
  const Polynomial W = substitute(omega.function(), evs);
  const Polynomial wfn =
      berezin(W, BerezinianMeasure::make(big_shift.full, lift.theta));

  // read the coefficient matrix back off the integrated function
  const std::size_t N = lift.components->size();
  Matrix mat(N, std::vector<Rational>(N, Rational(0)));
  for (const auto& [mono, c] : wfn.terms()) {
    std::vector<std::pair<std::size_t, uint32_t>> ds;
    for (const auto& [g, e] : mono.factors()) {
      if (g < m || !big_shift.is_partner(g) || big_shift.full->gen(g).name.rfind("dth", 0) == 0)
        throw kernel_error("transported form has unexpected factors");
      ds.push_back({g - big_shift.base_size() - m, e});  // component index of the partner
    }
    if (ds.size() == 1 && ds[0].second == 2) {
      mat[ds[0].first][ds[0].first] = c * Rational(2);
    } else if (ds.size() == 2 && ds[0].second == 1 && ds[1].second == 1) {
      const std::size_t a = ds[0].first, b = ds[1].first;
      mat[a][b] = c;
      const int s = koszul_sign(comp_shift.full->gen(comp_shift.partner_of(a)).degree,
                                comp_shift.full->gen(comp_shift.partner_of(b)).degree,
                                comp_shift.full->convention());
      mat[b][a] = c * Rational(s);
    } else {
      throw kernel_error("transported form is not quadratic in the shifted generators");
    }
  }
  MultiDegree wdeg = [&] {
    Polynomial probe(comp_shift.full);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b)
        if (!is_zero(mat[a][b]))
          probe += normal_form(comp_shift.full,
                               {{comp_shift.partner_of(a), 1}, {comp_shift.partner_of(b), 1}},
                               mat[a][b]);
    auto d = probe.degree();
    if (!d) throw kernel_error("transported form is degenerate or inhomogeneous");
    return *d;
  }();
  lift.omega_ext = ConstantSymplecticForm::make(comp_shift, std::move(mat), std::move(wdeg));
  return lift;
}

SusyExpansion susy_expand(const PoissonBivector& pi, std::size_t m) {
  if (m < 1 || m > 2) throw kernel_error("susy_expand supports m in {1,2}");
  const ContextPtr& base = pi.base();
  const std::size_t n = pi.dim();
  const std::size_t masks = std::size_t(1) << m;

  SlotSignature sig = base->signature();
  const std::size_t extra0 = sig.z2_count;
  for (std::size_t a = 0; a < m; ++a) {
    sig.z2_count += 1;
    sig.slot_names.insert(sig.slot_names.begin() + (sig.z2_count - 1),
                          "s" + std::to_string(a + 1));
  }
  sig.z_count += 1;
  sig.slot_names.push_back("gh");
  const std::size_t gh_slot = sig.z2_count + sig.z_count - 1;
  const MultiDegree gh1 = MultiDegree::unit(sig, gh_slot);

  SusyExpansion ex;
  ex.m = m;
  std::vector<GeneratorInfo> gens;
  for (std::size_t a = 0; a < m; ++a) {
    gens.push_back({"th" + std::to_string(a + 1), MultiDegree::unit(sig, extra0 + a)});
    ex.theta.push_back(a);
  }
  ex.X.assign(n, std::vector<std::size_t>(masks, 0));
  ex.A.assign(n, std::vector<std::size_t>(masks, 0));
  ex.dX = ex.X;
  ex.dA = ex.A;
  auto comp_degree = [&](std::size_t i, std::size_t mask) {
    MultiDegree d = base->gen(i).degree.padded(base->signature(), sig);
    for (std::size_t a = 0; a < m; ++a)
      if (mask >> a & 1) d += MultiDegree::unit(sig, extra0 + a);
    return d;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t mask = 0; mask < masks; ++mask) {
      ex.X[i][mask] = gens.size();
      gens.push_back({"X" + std::to_string(i + 1) + "_" + mask_suffix(mask),
                      comp_degree(i, mask)});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t mask = 0; mask < masks; ++mask) {
      ex.A[i][mask] = gens.size();
      gens.push_back({"A" + std::to_string(i + 1) + "_" + mask_suffix(mask),
                      comp_degree(i, mask) + gh1});
    }
  const std::size_t field_count = gens.size();
  for (std::size_t k = m; k < field_count; ++k)
    gens.push_back({"d" + gens[k].name, gens[k].degree + gh1});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t mask = 0; mask < masks; ++mask) {
      ex.dX[i][mask] = field_count + (ex.X[i][mask] - m);
      ex.dA[i][mask] = field_count + (ex.A[i][mask] - m);
    }
  ex.ws = GradedContext::make(sig, base->convention(), std::move(gens));

  // worldsheet differential: theta -> 0, field -> d-partner, d-partner -> 0
  std::vector<Polynomial> dvals(ex.ws->size(), Polynomial::zero(ex.ws));
  for (std::size_t k = m; k < field_count; ++k)
    dvals[k] = Polynomial::generator(ex.ws, field_count + (k - m));
  ex.d = Derivation::make(ex.ws, gh1, std::move(dvals));

  auto superfield = [&](const std::vector<std::vector<std::size_t>>& table, std::size_t i) {
    Polynomial f = Polynomial::zero(ex.ws);
    for (std::size_t mask = 0; mask < masks; ++mask)
      f += normal_form(ex.ws, theta_word(ex.theta, mask, table[i][mask]));
    return f;
  };

  Substitution to_super;
  to_super.from = base;
  to_super.to = ex.ws;
  for (std::size_t i = 0; i < n; ++i) to_super.images.push_back(superfield(ex.X, i));
  to_super.validate();

  Polynomial integrand = Polynomial::zero(ex.ws);
  const Rational half(Integer(1), Integer(2));
  for (std::size_t i = 0; i < n; ++i)
    integrand += superfield(ex.A, i) * ex.d.apply(superfield(ex.X, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (pi.comp(i, j).is_zero()) continue;
      integrand += substitute(pi.comp(i, j), to_super) * superfield(ex.A, i) *
                   superfield(ex.A, j) * half;
    }
  ex.integrand = integrand;
  ex.result = berezin(integrand, BerezinianMeasure::make(ex.ws, ex.theta));
  return ex;
}

}  // namespace koszul
