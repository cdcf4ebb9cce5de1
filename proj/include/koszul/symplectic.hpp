#pragma once

#include "koszul/calculus.hpp"

namespace koszul {

using Matrix = std::vector<std::vector<Rational>>;

/// Gauss-Jordan inverse; nullopt when singular.
std::optional<Matrix> invert(const Matrix& m);

/// Constant-coefficient symplectic form, kept as the quadratic function
/// (1/2) sum_{a,b} omega_{ab} dq^a dq^b on a tangent shift of the phase
/// context. Construction checks graded symmetry of the coefficients,
/// homogeneity of the declared degree, closedness and nondegeneracy.
class ConstantSymplecticForm {
 public:
  static ConstantSymplecticForm make(ShiftedContext sctx, Matrix omega,
                                     MultiDegree declared_degree);

  const ShiftedContext& shift() const { return sctx_; }
  const ContextPtr& phase() const { return sctx_.base; }
  const Matrix& matrix() const { return omega_; }
  const Polynomial& function() const { return fn_; }
  const MultiDegree& declared_degree() const { return deg_; }
  const Matrix& solve_matrix() const { return solve_; }  // (omega^T)^{-1}

 private:
  ShiftedContext sctx_;
  Matrix omega_;
  MultiDegree deg_;
  Polynomial fn_;
  Matrix solve_;
};

struct CotangentData {
  ContextPtr phase;                    // base generators followed by momenta
  std::vector<std::size_t> momentum;   // base gen index -> momentum index
  std::size_t gh_slot = 0;             // full slot index of the shift grading
  ShiftedContext sctx;                 // tangent shift of `phase`
  ConstantSymplecticForm omega;        // sum_g dp_g dg
};

/// Adds momenta p_<name> with deg(p_g) = e_gh - deg(g) and builds the
/// canonical form omega = sum_g dp_g dg of shift ghost degree 1.
CotangentData canonical_cotangent(const ContextPtr& ctx,
                                  SlotPolicy momentum_slot = SlotPolicy::fresh("gh"),
                                  SlotPolicy form_slot = SlotPolicy::fresh("frm"));

/// Unique derivation X_f on the phase context with iota_{X_f}(omega) = df.
/// f must be homogeneous.
Derivation hamiltonian_vf(const ConstantSymplecticForm& omega, const Polynomial& f);

/// (f,g) = iota_{X_f} iota_{X_g} (omega function), returned on the phase
/// context.
Polynomial poisson_bracket(const ConstantSymplecticForm& omega, const Polynomial& f,
                           const Polynomial& g);

/// (S,S) = 0 for even-total homogeneous S; equivalent to
/// squares_to_zero(hamiltonian_vf(omega, S)).
bool master_equation(const ConstantSymplecticForm& omega, const Polynomial& S);

}  // namespace koszul
