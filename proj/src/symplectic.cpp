#include "koszul/symplectic.hpp"

namespace koszul {

std::optional<Matrix> invert(const Matrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw kernel_error("invert: matrix not square");
  Matrix a = m;
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a[piv][col])) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a[r][col])) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

ConstantSymplecticForm ConstantSymplecticForm::make(ShiftedContext sctx, Matrix omega,
                                                    MultiDegree declared_degree) {
  const ContextPtr& full = sctx.full;
  const std::size_t n = sctx.base_size();
  if (omega.size() != n) throw kernel_error("omega matrix has wrong size");
  for (const auto& row : omega)
    if (row.size() != n) throw kernel_error("omega matrix has wrong size");

  // graded symmetry of the coefficients under reordering dq^a dq^b
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      const int s = koszul_sign(full->gen(sctx.partner_of(a)).degree,
                                full->gen(sctx.partner_of(b)).degree, full->convention());
      Rational want = omega[a][b] * Rational(s);
      if (!(omega[b][a] == want))
        throw kernel_error("omega coefficients are not graded-symmetric consistent");
    }
  }

  Polynomial fn = Polynomial::zero(full);
  const Rational half(Integer(1), Integer(2));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (is_zero(omega[a][b])) continue;
      fn += normal_form(full, {{sctx.partner_of(a), 1}, {sctx.partner_of(b), 1}},
                        omega[a][b] * half);
    }

  if (!fn.is_zero()) {
    auto d = fn.degree();
    if (!d || !(*d == declared_degree))
      throw kernel_error("omega function is not homogeneous of the declared degree");
  }

  // closedness: constant coefficients, but assert anyway
  if (!partner_differential(sctx).apply(fn).is_zero())
    throw kernel_error("omega is not closed");

  Matrix mt(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mt[b][a] = omega[a][b];
  auto inv = invert(mt);
  if (!inv) throw kernel_error("omega is degenerate");

  ConstantSymplecticForm w;
  w.sctx_ = std::move(sctx);
  w.omega_ = std::move(omega);
  w.deg_ = std::move(declared_degree);
  w.fn_ = std::move(fn);
  w.solve_ = std::move(*inv);
  return w;
}

CotangentData canonical_cotangent(const ContextPtr& ctx, SlotPolicy momentum_slot,
                                  SlotPolicy form_slot) {
  SlotSignature sig = ctx->signature();
  std::size_t gh_slot;
  bool fresh = momentum_slot.kind == SlotPolicy::Fresh;
  if (fresh) {
    std::string name = momentum_slot.slot_name.empty() ? "gh" : momentum_slot.slot_name;
    int k = 1;
    auto taken = [&](const std::string& n) {
      for (const auto& s : sig.slot_names)
        if (s == n) return true;
      return false;
    };
    std::string nm = name;
    while (taken(nm)) nm = name + std::to_string(k++);
    sig.z_count += 1;
    sig.slot_names.push_back(nm);
    gh_slot = sig.z2_count + sig.z_count - 1;
  } else {
    gh_slot = momentum_slot.slot;
    if (gh_slot < sig.z2_count || gh_slot >= sig.z2_count + sig.z_count)
      throw kernel_error("momentum slot must be a Z slot");
  }

  const MultiDegree unit = MultiDegree::unit(sig, gh_slot);
  std::vector<GeneratorInfo> gens;
  for (const auto& g : ctx->gens()) {
    MultiDegree d = fresh ? g.degree.padded(ctx->signature(), sig) : g.degree;
    gens.push_back({g.name, std::move(d)});
  }
  const std::size_t n = ctx->size();
  for (const auto& g : ctx->gens()) {
    MultiDegree base = fresh ? g.degree.padded(ctx->signature(), sig) : g.degree;
    MultiDegree d = unit + (-base);
    std::string nm = "p_" + g.name;
    while (true) {
      bool clash = false;
      for (const auto& h : gens)
        if (h.name == nm) clash = true;
      if (!clash) break;
      nm = "_" + nm;
    }
    gens.push_back({nm, std::move(d)});
  }

  CotangentData cot;
  cot.phase = GradedContext::make(sig, ctx->convention(), std::move(gens));
  for (std::size_t i = 0; i < n; ++i) cot.momentum.push_back(n + i);
  cot.gh_slot = gh_slot;

  auto [sctx, d] = shift_tangent(cot.phase, form_slot);
  cot.sctx = sctx;

  const std::size_t N = cot.phase->size();
  Matrix omega(N, std::vector<Rational>(N, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = cot.momentum[i];
    omega[p][i] = Rational(1);
    const int s = koszul_sign(sctx.full->gen(sctx.partner_of(p)).degree,
                              sctx.full->gen(sctx.partner_of(i)).degree,
                              sctx.full->convention());
    omega[i][p] = Rational(s);
  }
  // slots are only ever appended, so gh_slot keeps its index in the
  // shifted signature
  MultiDegree deg = MultiDegree::unit(sctx.full->signature(), gh_slot) +
                    sctx.shift_degree + sctx.shift_degree;
  cot.omega = ConstantSymplecticForm::make(std::move(sctx), std::move(omega), std::move(deg));
  return cot;
}

namespace {

// df written as sum_b u_b dq^b with coefficients on the left; every monomial
// must contain exactly one partner factor.
std::vector<Polynomial> dq_coefficients(const ShiftedContext& s, const Polynomial& df) {
  std::vector<Polynomial> u(s.base_size(), Polynomial::zero(s.full));
  for (const auto& [m, c] : df.terms()) {
    int which = -1;
    std::vector<Monomial::Factor> rest;
    for (const auto& [g, e] : m.factors()) {
      if (s.is_partner(g)) {
        if (which >= 0 || e != 1)
          throw kernel_error("expected a form linear in the dq generators");
        which = int(g - s.base_size());
      } else {
        rest.push_back({g, e});
      }
    }
    if (which < 0) throw kernel_error("expected a form linear in the dq generators");
    // partners sit after all base generators in the normal order, so the
    // remaining factors already stand to the left of dq^b.
    Polynomial t(s.full);
    t.add_term(Monomial(std::move(rest)), c);
    u[which] += t;
  }
  return u;
}

Polynomial restrict_to_base(const ShiftedContext& s, const Polynomial& f) {
  Polynomial r(s.base);
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [g, e] : m.factors())
      if (s.is_partner(g)) throw kernel_error("polynomial is not basic");
    r.add_term(m, c);
  }
  return r;
}

}  // namespace

Derivation hamiltonian_vf(const ConstantSymplecticForm& omega, const Polynomial& f) {
  const ShiftedContext& s = omega.shift();
  if (f.context() != s.base) throw kernel_error("hamiltonian_vf: context mismatch");
  auto fdeg = f.degree();
  if (!f.is_zero() && !fdeg) throw kernel_error("hamiltonian_vf: f is inhomogeneous");

  const Derivation d = partner_differential(s);
  const Polynomial df = d.apply(embed(f, s.full));
  std::vector<Polynomial> u = dq_coefficients(s, df);

  const std::size_t n = s.base_size();
  std::vector<Polynomial> comp(n, Polynomial::zero(s.base));
  for (std::size_t a = 0; a < n; ++a) {
    Polynomial acc(s.full);
    for (std::size_t b = 0; b < n; ++b) {
      if (is_zero(omega.solve_matrix()[a][b])) continue;
      acc += u[b] * omega.solve_matrix()[a][b];
    }
    comp[a] = restrict_to_base(s, acc);
  }

  Derivation X = [&] {
    MultiDegree deg = f.is_zero() ? s.base->zero_degree() : *fdeg;
    MultiDegree full_deg = deg.padded(s.base->signature(), s.full->signature()) +
                           s.shift_degree + s.shift_degree - omega.declared_degree();
    // the derivation lives on the phase context; its degree uses the full
    // signature restricted back (the extra slot entries cancel)
    MultiDegree phase_deg = s.base->zero_degree();
    const auto& bs = s.base->signature();
    for (std::size_t i = 0; i < bs.z2_count; ++i) phase_deg.z2[i] = full_deg.z2[i];
    for (std::size_t i = 0; i < bs.z_count; ++i) phase_deg.z[i] = full_deg.z[i];
    // any residue in the shift slot would be a bookkeeping bug
    MultiDegree back = phase_deg.padded(bs, s.full->signature());
    if (!(back == full_deg)) throw kernel_error("hamiltonian degree bookkeeping failed");
    return Derivation::make(s.base, std::move(phase_deg), std::move(comp));
  }();
  // self-check of the defining equation
  if (!(interior_product(s, X).apply(omega.function()) == df))
    throw kernel_error("hamiltonian solve failed to satisfy iota_X omega = df");
  return X;
}

Polynomial poisson_bracket(const ConstantSymplecticForm& omega, const Polynomial& f,
                           const Polynomial& g) {
  const Derivation xf = hamiltonian_vf(omega, f);
  const Derivation xg = hamiltonian_vf(omega, g);
  const ShiftedContext& s = omega.shift();
  Polynomial inner = interior_product(s, xg).apply(omega.function());
  Polynomial outer = interior_product(s, xf).apply(inner);
  return restrict_to_base(s, outer);
}

bool master_equation(const ConstantSymplecticForm& omega, const Polynomial& S) {
  auto d = S.degree();
  if (!S.is_zero() && !d) throw kernel_error("master_equation: S is inhomogeneous");
  if (!S.is_zero() && par(*d) != 0)
    throw kernel_error("master_equation: S must be even-total");
  return poisson_bracket(omega, S, S).is_zero();
}

}  // namespace koszul
