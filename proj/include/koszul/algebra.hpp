#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/grading.hpp"
#include "koszul/rational.hpp"

namespace koszul {

class GradedContext;
using ContextPtr = std::shared_ptr<const GradedContext>;

struct GeneratorInfo {
  std::string name;
  MultiDegree degree;
};

/// Ordered generator list over a fixed signature and sign convention.
/// The list order is the canonical normal-ordering order; contexts are
/// immutable and shared by pointer.
class GradedContext : public std::enable_shared_from_this<GradedContext> {
 public:
  static ContextPtr make(SlotSignature sig, SignConvention conv,
                         std::vector<GeneratorInfo> gens);

  /// New context with extra generators appended (same signature).
  ContextPtr extended(std::vector<GeneratorInfo> extra) const;

  const SlotSignature& signature() const { return sig_; }
  SignConvention convention() const { return conv_; }
  std::size_t size() const { return gens_.size(); }
  const GeneratorInfo& gen(std::size_t i) const { return gens_.at(i); }
  const std::vector<GeneratorInfo>& gens() const { return gens_; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // throws if absent

  /// parity of the exchange-sign exponent between generators i and j
  int pair_exponent(std::size_t i, std::size_t j) const { return pair_exp_[i][j]; }
  bool odd(std::size_t i) const { return odd_[i] != 0; }

  MultiDegree zero_degree() const { return MultiDegree::zero(sig_); }

 private:
  GradedContext() = default;
  SlotSignature sig_;
  SignConvention conv_ = SignConvention::BernsteinLeites;
  std::vector<GeneratorInfo> gens_;
  std::vector<std::vector<int>> pair_exp_;
  std::vector<uint8_t> odd_;
};

/// Normal form of a product of generators: exponents sorted by generator
/// index, odd generators with exponent at most 1.
class Monomial {
 public:
  using Factor = std::pair<uint32_t, uint32_t>;  // (generator index, exponent)

  Monomial() = default;
  explicit Monomial(std::vector<Factor> sorted_factors) : f_(std::move(sorted_factors)) {}

  static Monomial one() { return Monomial{}; }
  static Monomial gen(uint32_t i, uint32_t e = 1) { return Monomial({{i, e}}); }

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  uint32_t exponent_of(uint32_t g) const;
  long long total_exponent() const;
  MultiDegree degree(const GradedContext& ctx) const;

  bool operator==(const Monomial&) const = default;

  /// graded-lex: higher total exponent first, ties broken lexicographically
  /// on the exponent vector in generator order.
  static int cmp(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> f_;
};

struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::cmp(a, b) < 0;  // leading monomials iterate first
  }
};

/// Element of the free graded-commutative algebra over a context, kept in
/// canonical form (no zero coefficients; map order fixed by MonomialOrder).
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  Polynomial() = default;
  explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Polynomial zero(ContextPtr ctx) { return Polynomial(std::move(ctx)); }
  static Polynomial constant(ContextPtr ctx, const Rational& c);
  static Polynomial generator(ContextPtr ctx, std::size_t i);
  static Polynomial generator(ContextPtr ctx, const std::string& name);

  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  friend Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }
  bool operator==(const Polynomial& o) const;

  /// common degree of all terms, or nullopt for 0 / inhomogeneous input
  std::optional<MultiDegree> degree() const;
  bool is_homogeneous() const { return is_zero() || degree().has_value(); }

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  TermMap terms_;
};

/// Canonical reordering of an arbitrarily ordered word of generator powers,
/// with the product of pairwise Koszul signs applied; zero when an odd
/// generator repeats.
Polynomial normal_form(const ContextPtr& ctx,
                       const std::vector<std::pair<std::size_t, uint32_t>>& word,
                       const Rational& coeff = Rational(1));

/// Left derivative along one generator, extended by graded Leibniz.
Polynomial left_partial(const Polynomial& f, std::size_t gen);

/// Generator images defining an algebra map into (possibly) another context.
/// With check_degrees set, each nonzero image must be homogeneous of the
/// generator's degree zero-padded into the target signature; disabling the
/// check gives the Hom-style maps that preserve only part of the grading.
struct Substitution {
  ContextPtr from;
  ContextPtr to;
  std::vector<Polynomial> images;  // one per generator of `from`
  bool check_degrees = true;

  static Substitution identity(const ContextPtr& ctx);
  void validate() const;
};

Polynomial substitute(const Polynomial& f, const Substitution& s);

/// Renames f into a context that contains all of f's generators by name,
/// with equal degrees up to zero-padding.
Polynomial embed(const Polynomial& f, const ContextPtr& into);

}  // namespace koszul
