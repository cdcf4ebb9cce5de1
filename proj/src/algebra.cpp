#include "koszul/algebra.hpp"

#include <algorithm>
#include <set>

namespace koszul {

ContextPtr GradedContext::make(SlotSignature sig, SignConvention conv,
                               std::vector<GeneratorInfo> gens) {
  std::set<std::string> names;
  for (const auto& g : gens) {
    if (!g.degree.conforms(sig))
      throw kernel_error("generator '" + g.name + "' does not conform to the signature");
    if (!names.insert(g.name).second)
      throw kernel_error("duplicate generator name '" + g.name + "'");
  }
  auto ctx = std::shared_ptr<GradedContext>(new GradedContext());
  ctx->sig_ = std::move(sig);
  ctx->conv_ = conv;
  ctx->gens_ = std::move(gens);
  const std::size_t n = ctx->gens_.size();
  ctx->pair_exp_.assign(n, std::vector<int>(n, 0));
  ctx->odd_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      ctx->pair_exp_[i][j] =
          koszul_exponent(ctx->gens_[i].degree, ctx->gens_[j].degree, conv);
    ctx->odd_[i] = uint8_t(ctx->pair_exp_[i][i]);
  }
  return ctx;
}

ContextPtr GradedContext::extended(std::vector<GeneratorInfo> extra) const {
  std::vector<GeneratorInfo> all = gens_;
  for (auto& g : extra) all.push_back(std::move(g));
  return make(sig_, conv_, std::move(all));
}

std::optional<std::size_t> GradedContext::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

std::size_t GradedContext::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw kernel_error("unknown generator '" + name + "'");
}

uint32_t Monomial::exponent_of(uint32_t g) const {
  for (const auto& [i, e] : f_)
    if (i == g) return e;
  return 0;
}

long long Monomial::total_exponent() const {
  long long t = 0;
  for (const auto& [i, e] : f_) t += e;
  return t;
}

MultiDegree Monomial::degree(const GradedContext& ctx) const {
  MultiDegree d = ctx.zero_degree();
  for (const auto& [i, e] : f_) {
    const MultiDegree& g = ctx.gen(i).degree;
    for (uint32_t k = 0; k < e; ++k) d += g;
  }
  return d;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
  const long long ta = a.total_exponent(), tb = b.total_exponent();
  if (ta != tb) return ta > tb ? -1 : 1;
  auto ia = a.f_.begin(), ib = b.f_.begin();
  while (ia != a.f_.end() && ib != b.f_.end()) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (ia->second != ib->second) return ia->second > ib->second ? -1 : 1;
    ++ia, ++ib;
  }
  if (ia != a.f_.end()) return -1;
  if (ib != b.f_.end()) return 1;
  return 0;
}

namespace {

// Multiplies two normal-ordered monomials. Returns false when the product
// vanishes (odd generator squared); otherwise writes the merged monomial and
// adds the reordering exponent parity into `parity`.
bool mul_monomials(const GradedContext& ctx, const Monomial& a, const Monomial& b,
                   Monomial& out, int& parity) {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::vector<Monomial::Factor> merged;
  merged.reserve(fa.size() + fb.size());
  // Every factor of b crossing a higher-indexed factor of a contributes
  // exp_a*exp_b copies of the pair exponent.
  for (const auto& [gb, eb] : fb) {
    for (const auto& [ga, ea] : fa) {
      if (ga > gb) parity ^= int((uint64_t(ea) * eb * ctx.pair_exponent(ga, gb)) & 1);
    }
  }
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
      merged.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].first < fa[i].first) {
      merged.push_back(fb[j++]);
    } else {
      const uint32_t g = fa[i].first;
      const uint32_t e = fa[i].second + fb[j].second;
      if (ctx.odd(g) && e > 1) return false;
      merged.push_back({g, e});
      ++i, ++j;
    }
  }
  for (const auto& [g, e] : merged)
    if (ctx.odd(g) && e > 1) return false;
  out = Monomial(std::move(merged));
  return true;
}

void require_same_context(const Polynomial& a, const Polynomial& b) {
  if (a.context() != b.context()) throw kernel_error("context mismatch");
}

}  // namespace

Polynomial Polynomial::constant(ContextPtr ctx, const Rational& c) {
  Polynomial p(std::move(ctx));
  p.add_term(Monomial::one(), c);
  return p;
}

Polynomial Polynomial::generator(ContextPtr ctx, std::size_t i) {
  if (i >= ctx->size()) throw kernel_error("generator index out of range");
  Polynomial p(std::move(ctx));
  p.add_term(Monomial::gen(uint32_t(i)), Rational(1));
  return p;
}

Polynomial Polynomial::generator(ContextPtr ctx, const std::string& name) {
  auto i = ctx->index_of(name);
  return generator(std::move(ctx), i);
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (koszul::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (koszul::is_zero(it->second)) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_context(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_context(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ctx_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_context(*this, o);
  Polynomial r(ctx_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m;
      int parity = 0;
      if (!mul_monomials(*ctx_, ma, mb, m, parity)) continue;
      Rational c = ca * cb;
      if (parity) c = -c;
      r.add_term(m, c);
    }
  }
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r(ctx_);
  if (koszul::is_zero(c)) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return ctx_ == o.ctx_ && terms_ == o.terms_;
}

std::optional<MultiDegree> Polynomial::degree() const {
  std::optional<MultiDegree> d;
  for (const auto& [m, c] : terms_) {
    MultiDegree md = m.degree(*ctx_);
    if (!d)
      d = md;
    else if (!(*d == md))
      return std::nullopt;
  }
  return d;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < Rational(0)) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < Rational(0)) ? " - " : " + ";
      if (a < Rational(0)) a = -a;
    }
    first = false;
    std::string mono;
    for (const auto& [g, e] : m.factors()) {
      if (!mono.empty()) mono += "*";
      mono += ctx_->gen(g).name;
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += koszul::to_string(a);
    } else if (a == Rational(1)) {
      out += mono;
    } else {
      out += koszul::to_string(a) + "*" + mono;
    }
  }
  return out;
}

Polynomial normal_form(const ContextPtr& ctx,
                       const std::vector<std::pair<std::size_t, uint32_t>>& word,
                       const Rational& coeff) {
  Polynomial r = Polynomial::constant(ctx, coeff);
  for (const auto& [g, e] : word) {
    if (g >= ctx->size()) throw kernel_error("unknown generator in word");
    if (e == 0) continue;
    if (ctx->odd(g) && e > 1) return Polynomial::zero(ctx);
    Polynomial f(ctx);
    f.add_term(Monomial::gen(uint32_t(g), e), Rational(1));
    r = r * f;
  }
  return r;
}

Polynomial left_partial(const Polynomial& f, std::size_t gen) {
  const ContextPtr& ctx = f.context();
  if (gen >= ctx->size()) throw kernel_error("unknown generator");
  const MultiDegree dg = ctx->gen(gen).degree;
  Polynomial r(ctx);
  for (const auto& [m, c] : f.terms()) {
    int prefix = 0;  // parity of moving d/dg past the factors left of gen
    const auto& fs = m.factors();
    for (std::size_t t = 0; t < fs.size(); ++t) {
      const auto [g, e] = fs[t];
      if (g < gen) {
        prefix ^= int((uint64_t(e) * ctx->pair_exponent(gen, g)) & 1);
        continue;
      }
      if (g > gen) break;
      // sum of sigma^j over the e copies, sigma the self-exchange sign
      Rational mult = ctx->pair_exponent(gen, gen) ? Rational(e % 2) : Rational(e);
      std::vector<Monomial::Factor> rest;
      rest.reserve(fs.size());
      for (std::size_t u = 0; u < fs.size(); ++u) {
        if (u == t) {
          if (e > 1) rest.push_back({uint32_t(g), e - 1});
        } else {
          rest.push_back(fs[u]);
        }
      }
      Rational coeff = c * mult;
      if (prefix) coeff = -coeff;
      r.add_term(Monomial(std::move(rest)), coeff);
      break;
    }
  }
  return r;
}

Substitution Substitution::identity(const ContextPtr& ctx) {
  Substitution s;
  s.from = ctx;
  s.to = ctx;
  for (std::size_t i = 0; i < ctx->size(); ++i)
    s.images.push_back(Polynomial::generator(ctx, i));
  return s;
}

void Substitution::validate() const {
  if (!from || !to) throw kernel_error("substitution lacks a context");
  if (images.size() != from->size())
    throw kernel_error("substitution must provide an image for every generator");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].context() != to) throw kernel_error("image lives in the wrong context");
    if (!check_degrees || images[i].is_zero()) continue;
    auto d = images[i].degree();
    if (!d)
      throw kernel_error("image of '" + from->gen(i).name + "' is inhomogeneous");
    MultiDegree want = from->gen(i).degree.padded(from->signature(), to->signature());
    if (!(*d == want))
      throw kernel_error("degree mismatch in image of '" + from->gen(i).name + "'");
  }
}

Polynomial substitute(const Polynomial& f, const Substitution& s) {
  if (f.context() != s.from) throw kernel_error("substitute: context mismatch");
  s.validate();
  Polynomial r = Polynomial::zero(s.to);
  for (const auto& [m, c] : f.terms()) {
    Polynomial t = Polynomial::constant(s.to, c);
    for (const auto& [g, e] : m.factors())
      for (uint32_t k = 0; k < e; ++k) t = t * s.images[g];
    r += t;
  }
  return r;
}

Polynomial embed(const Polynomial& f, const ContextPtr& into) {
  if (f.context() == into) return f;
  const GradedContext& from = *f.context();
  // map only the generators that occur; other names need not exist over there
  std::vector<std::optional<std::size_t>> map(from.size());
  auto lookup = [&](std::size_t g) {
    if (!map[g]) {
      const auto& info = from.gen(g);
      auto i = into->find(info.name);
      if (!i) throw kernel_error("embed: generator '" + info.name + "' missing from target");
      MultiDegree want = info.degree.padded(from.signature(), into->signature());
      if (!(into->gen(*i).degree == want))
        throw kernel_error("embed: degree of '" + info.name + "' differs");
      map[g] = *i;
    }
    return *map[g];
  };
  Polynomial r(into);
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::pair<std::size_t, uint32_t>> word;
    for (const auto& [g, e] : m.factors()) word.push_back({lookup(g), e});
    r += normal_form(into, word, c);
  }
  return r;
}

}  // namespace koszul
