#pragma once

#include "koszul/algebra.hpp"

namespace koszul {

/// Graded vector field: one homogeneous value per generator, extended to the
/// whole algebra by graded Leibniz.
class Derivation {
 public:
  Derivation() = default;

  /// Validates that every value is zero or homogeneous of degree
  /// `degree + deg(gen)`.
  static Derivation make(ContextPtr ctx, MultiDegree degree,
                         std::vector<Polynomial> values);
  static Derivation zero(const ContextPtr& ctx, MultiDegree degree);

  const ContextPtr& context() const { return ctx_; }
  const MultiDegree& degree() const { return deg_; }
  const Polynomial& value(std::size_t gen) const { return values_.at(gen); }
  const std::vector<Polynomial>& values() const { return values_; }
  bool is_zero() const;
  bool odd() const;

  Polynomial apply(const Polynomial& f) const;

  Derivation operator+(const Derivation& o) const;  // requires equal degrees
  Derivation operator-() const;
  bool operator==(const Derivation& o) const;

 private:
  ContextPtr ctx_;
  MultiDegree deg_;
  std::vector<Polynomial> values_;
};

/// [X,Y] = X.Y - koszul_sign(X,Y) Y.X, again a derivation.
Derivation commutator(const Derivation& X, const Derivation& Y);

/// X odd-total only: true iff X(X(g)) = 0 for every generator.
bool squares_to_zero(const Derivation& X);

/// d/d(gen) as a Derivation of degree -deg(gen).
Derivation partial_derivation(const ContextPtr& ctx, std::size_t gen);

struct SlotPolicy {
  enum Kind { Fresh, Existing } kind = Fresh;
  std::size_t slot = 0;     // full slot index, for Existing
  std::string slot_name;    // for Fresh (default chosen if empty)

  static SlotPolicy fresh(std::string name = "") { return {Fresh, 0, std::move(name)}; }
  static SlotPolicy existing(std::size_t slot) { return {Existing, slot, ""}; }
};

/// A context extended by one partner generator per base generator, with
/// deg(partner) = deg(base) + shift_degree. Base generators come first and
/// keep their names; partner order mirrors base order.
struct ShiftedContext {
  ContextPtr base;
  ContextPtr full;
  std::vector<std::size_t> partner;  // base index -> partner index in full
  MultiDegree shift_degree;          // over full signature
  std::size_t slot = 0;              // full slot index carrying the shift

  std::size_t base_size() const { return partner.size(); }
  bool is_partner(std::size_t i) const { return i >= base_size(); }
  std::size_t partner_of(std::size_t base_gen) const { return partner.at(base_gen); }
};

/// T[1]-style shift: partners "d<name>" in a Z slot (fresh by default),
/// together with the de Rham derivation g -> dg, dg -> 0.
std::pair<ShiftedContext, Derivation> shift_tangent(const ContextPtr& ctx,
                                                    SlotPolicy policy = SlotPolicy::fresh());

/// Parity shift: partners "v<name>" in a fresh Z2 slot; no differential is
/// attached (the partner map is still available below).
ShiftedContext shift_parity(const ContextPtr& ctx, SlotPolicy policy = SlotPolicy::fresh());

/// The odd map g -> partner(g), partner -> 0; equals the de Rham derivation
/// on tangent shifts.
Derivation partner_differential(const ShiftedContext& s);

/// iota_X: g -> 0, dg -> X(g); degree deg(X) - shift_degree.
Derivation interior_product(const ShiftedContext& s, const Derivation& X);

/// L_X = [iota_X, d] computed in closed form: g -> X(g),
/// dg -> sign * d(X(g)).
Derivation lie_derivative(const ShiftedContext& s, const Derivation& X);

/// g -> (slot entry of deg g) * g for a Z slot.
Derivation euler_field(const ContextPtr& ctx, std::size_t slot);

}  // namespace koszul
