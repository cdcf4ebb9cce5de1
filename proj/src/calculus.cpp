#include "koszul/calculus.hpp"

namespace koszul {

Derivation Derivation::make(ContextPtr ctx, MultiDegree degree,
                            std::vector<Polynomial> values) {
  if (!degree.conforms(ctx->signature()))
    throw kernel_error("derivation degree does not conform to the signature");
  if (values.size() != ctx->size())
    throw kernel_error("derivation needs one value per generator");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].context() != ctx)
      throw kernel_error("derivation value lives in the wrong context");
    if (values[i].is_zero()) continue;
    auto d = values[i].degree();
    if (!d || !(*d == degree + ctx->gen(i).degree))
      throw kernel_error("derivation value on '" + ctx->gen(i).name +
                         "' is not homogeneous of the right degree");
  }
  Derivation X;
  X.ctx_ = std::move(ctx);
  X.deg_ = std::move(degree);
  X.values_ = std::move(values);
  return X;
}

Derivation Derivation::zero(const ContextPtr& ctx, MultiDegree degree) {
  std::vector<Polynomial> vals(ctx->size(), Polynomial::zero(ctx));
  return make(ctx, std::move(degree), std::move(vals));
}

bool Derivation::is_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

bool Derivation::odd() const { return is_odd(deg_, ctx_->convention()); }

Polynomial Derivation::apply(const Polynomial& f) const {
  if (f.context() != ctx_) throw kernel_error("derivation applied across contexts");
  Polynomial r(ctx_);
  for (const auto& [m, c] : f.terms()) {
    const auto& fs = m.factors();
    int prefix = 0;  // parity of moving X past the processed prefix
    for (std::size_t t = 0; t < fs.size(); ++t) {
      const auto [g, e] = fs[t];
      const int sigma = koszul_exponent(deg_, ctx_->gen(g).degree, ctx_->convention());
      if (!values_[g].is_zero()) {
        // X(g^e) = sum_j sigma^j g^j X(g) g^(e-1-j); collapsing every term to
        // g^(e-1) X(g) costs tau per crossing, tau the exchange parity of
        // X(g) with g
        const int tau = sigma ^ ctx_->pair_exponent(uint32_t(g), uint32_t(g));
        long long msum = 0;
        for (uint32_t j = 0; j < e; ++j)
          msum += ((sigma * j + tau * (e - 1 - j)) & 1) ? -1 : 1;
        Rational mult((long long)msum);
        if (!koszul::is_zero(mult)) {
          std::vector<Monomial::Factor> pre(fs.begin(), fs.begin() + t);
          if (e > 1) pre.push_back({g, e - 1});
          std::vector<Monomial::Factor> post(fs.begin() + t + 1, fs.end());
          Polynomial term(ctx_);
          Rational coeff = c * mult;
          if (prefix) coeff = -coeff;
          term.add_term(Monomial(std::move(pre)), coeff);
          term = term * values_[g];
          Polynomial tail(ctx_);
          tail.add_term(Monomial(std::move(post)), Rational(1));
          r += term * tail;
        }
      }
      prefix ^= int((uint64_t(e) * sigma) & 1);
    }
  }
  return r;
}

Derivation Derivation::operator+(const Derivation& o) const {
  if (ctx_ != o.ctx_) throw kernel_error("context mismatch");
  if (!(deg_ == o.deg_)) throw kernel_error("cannot add derivations of different degrees");
  std::vector<Polynomial> vals;
  vals.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) vals.push_back(values_[i] + o.values_[i]);
  return make(ctx_, deg_, std::move(vals));
}

Derivation Derivation::operator-() const {
  std::vector<Polynomial> vals;
  vals.reserve(values_.size());
  for (const auto& v : values_) vals.push_back(-v);
  return make(ctx_, deg_, std::move(vals));
}

bool Derivation::operator==(const Derivation& o) const {
  return ctx_ == o.ctx_ && deg_ == o.deg_ && values_ == o.values_;
}

Derivation commutator(const Derivation& X, const Derivation& Y) {
  if (X.context() != Y.context()) throw kernel_error("context mismatch");
  const ContextPtr& ctx = X.context();
  const int sign = koszul_sign(X.degree(), Y.degree(), ctx->convention());
  std::vector<Polynomial> vals;
  vals.reserve(ctx->size());
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    Polynomial v = X.apply(Y.value(i));
    Polynomial w = Y.apply(X.value(i));
    vals.push_back(sign > 0 ? v - w : v + w);
  }
  return Derivation::make(ctx, X.degree() + Y.degree(), std::move(vals));
}

bool squares_to_zero(const Derivation& X) {
  if (!X.odd()) throw kernel_error("squares_to_zero requires an odd-total derivation");
  for (std::size_t i = 0; i < X.context()->size(); ++i)
    if (!X.apply(X.value(i)).is_zero()) return false;
  return true;
}

Derivation partial_derivation(const ContextPtr& ctx, std::size_t gen) {
  if (gen >= ctx->size()) throw kernel_error("unknown generator");
  std::vector<Polynomial> vals(ctx->size(), Polynomial::zero(ctx));
  vals[gen] = Polynomial::constant(ctx, Rational(1));
  return Derivation::make(ctx, -ctx->gen(gen).degree, std::move(vals));
}

namespace {

std::string unique_name(const ContextPtr& ctx, const std::vector<GeneratorInfo>& pending,
                        std::string base) {
  auto taken = [&](const std::string& n) {
    if (ctx->find(n)) return true;
    for (const auto& g : pending)
      if (g.name == n) return true;
    return false;
  };
  std::string n = base;
  while (taken(n)) n = "_" + n;
  return n;
}

std::string unique_slot_name(const SlotSignature& sig, std::string base) {
  auto taken = [&](const std::string& n) {
    for (const auto& s : sig.slot_names)
      if (s == n) return true;
    return false;
  };
  std::string n = base;
  int k = 1;
  while (taken(n)) n = base + std::to_string(k++);
  return n;
}

ShiftedContext shift_impl(const ContextPtr& ctx, SlotPolicy policy, bool z_slot,
                          const char* prefix, const char* default_slot_name) {
  SlotSignature sig = ctx->signature();
  std::size_t slot;
  if (policy.kind == SlotPolicy::Fresh) {
    std::string name = policy.slot_name.empty() ? default_slot_name : policy.slot_name;
    name = unique_slot_name(sig, name);
    if (z_slot) {
      sig.z_count += 1;
      sig.slot_names.push_back(name);
      slot = sig.z2_count + sig.z_count - 1;
    } else {
      // z2 slots precede z slots; append just after the existing z2 block
      sig.z2_count += 1;
      sig.slot_names.insert(sig.slot_names.begin() + (sig.z2_count - 1), name);
      slot = sig.z2_count - 1;
    }
  } else {
    slot = policy.slot;
    const bool is_z = slot >= sig.z2_count && slot < sig.z2_count + sig.z_count;
    if (z_slot && !is_z) throw kernel_error("slot policy must select a Z slot");
    if (!z_slot && slot >= sig.z2_count) throw kernel_error("slot policy must select a Z2 slot");
  }

  const bool fresh = policy.kind == SlotPolicy::Fresh;
  std::vector<GeneratorInfo> gens;
  gens.reserve(ctx->size() * 2);
  for (const auto& g : ctx->gens()) {
    MultiDegree d = fresh ? g.degree.padded(ctx->signature(), sig) : g.degree;
    gens.push_back({g.name, std::move(d)});
  }
  MultiDegree unit = MultiDegree::unit(sig, slot);
  std::vector<GeneratorInfo> partners;
  for (const auto& g : ctx->gens()) {
    MultiDegree d = (fresh ? g.degree.padded(ctx->signature(), sig) : g.degree) + unit;
    partners.push_back({unique_name(ctx, partners, prefix + g.name), std::move(d)});
  }

  ShiftedContext s;
  s.base = ctx;
  const std::size_t n = ctx->size();
  for (auto& p : partners) gens.push_back(std::move(p));
  s.full = GradedContext::make(sig, ctx->convention(), std::move(gens));
  for (std::size_t i = 0; i < n; ++i) s.partner.push_back(n + i);
  s.shift_degree = unit;
  s.slot = slot;
  return s;
}

}  // namespace

std::pair<ShiftedContext, Derivation> shift_tangent(const ContextPtr& ctx, SlotPolicy policy) {
  ShiftedContext s = shift_impl(ctx, policy, /*z_slot=*/true, "d", "frm");
  return {s, partner_differential(s)};
}

ShiftedContext shift_parity(const ContextPtr& ctx, SlotPolicy policy) {
  return shift_impl(ctx, policy, /*z_slot=*/false, "v", "pi");
}

Derivation partner_differential(const ShiftedContext& s) {
  std::vector<Polynomial> vals(s.full->size(), Polynomial::zero(s.full));
  for (std::size_t i = 0; i < s.base_size(); ++i)
    vals[i] = Polynomial::generator(s.full, s.partner_of(i));
  return Derivation::make(s.full, s.shift_degree, std::move(vals));
}

Derivation interior_product(const ShiftedContext& s, const Derivation& X) {
  if (X.context() != s.base) throw kernel_error("interior_product: base mismatch");
  std::vector<Polynomial> vals(s.full->size(), Polynomial::zero(s.full));
  for (std::size_t i = 0; i < s.base_size(); ++i)
    vals[s.partner_of(i)] = embed(X.value(i), s.full);
  MultiDegree deg = X.degree().padded(s.base->signature(), s.full->signature());
  return Derivation::make(s.full, deg - s.shift_degree, std::move(vals));
}

Derivation lie_derivative(const ShiftedContext& s, const Derivation& X) {
  if (X.context() != s.base) throw kernel_error("lie_derivative: base mismatch");
  const Derivation d = partner_differential(s);
  const Derivation ix = interior_product(s, X);
  const int sign =
      koszul_sign(ix.degree(), d.degree(), s.full->convention());
  std::vector<Polynomial> vals(s.full->size(), Polynomial::zero(s.full));
  for (std::size_t i = 0; i < s.base_size(); ++i) {
    Polynomial xi = embed(X.value(i), s.full);
    vals[i] = xi;
    Polynomial dv = d.apply(xi);
    vals[s.partner_of(i)] = (sign > 0) ? -dv : dv;  // -sign(iota,d) * d(X(g))
  }
  MultiDegree deg = X.degree().padded(s.base->signature(), s.full->signature());
  return Derivation::make(s.full, deg, std::move(vals));
}

Derivation euler_field(const ContextPtr& ctx, std::size_t slot) {
  const SlotSignature& sig = ctx->signature();
  if (slot < sig.z2_count || slot >= sig.z2_count + sig.z_count)
    throw kernel_error("euler_field requires a Z slot");
  const std::size_t zi = slot - sig.z2_count;
  std::vector<Polynomial> vals;
  vals.reserve(ctx->size());
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    long long w = ctx->gen(i).degree.z[zi];
    vals.push_back(Polynomial::generator(ctx, i) * Rational(w));
  }
  return Derivation::make(ctx, ctx->zero_degree(), std::move(vals));
}

}  // namespace koszul
