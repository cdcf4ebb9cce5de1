#pragma once

#include "koszul/symplectic.hpp"

namespace koszul {

/// Structure constants C^a_{bc} of a (super) Lie algebra, stored densely with
/// graded antisymmetry C^a_{bc} = -(-1)^{|b||c|} C^a_{cb} enforced at
/// construction, together with parity consistency |a| = |b|+|c| mod 2.
class SuperLieAlgebra {
 public:
  struct Entry {
    std::size_t a, b, c;
    Rational value;
  };

  static SuperLieAlgebra make(std::size_t dim, std::vector<int> parities,
                              const std::vector<Entry>& entries);
  static SuperLieAlgebra abelian(std::size_t dim, std::vector<int> parities = {});

  std::size_t dim() const { return dim_; }
  int parity(std::size_t a) const { return par_.at(a); }
  const std::vector<int>& parities() const { return par_; }
  const Rational& c(std::size_t a, std::size_t b, std::size_t cc) const {
    return C_.at(((a * dim_) + b) * dim_ + cc);
  }

  /// components of [e_b, e_c]
  std::vector<Rational> bracket(std::size_t b, std::size_t c) const;

 private:
  std::size_t dim_ = 0;
  std::vector<int> par_;
  std::vector<Rational> C_;
  Rational& at(std::size_t a, std::size_t b, std::size_t c) {
    return C_[((a * dim_) + b) * dim_ + c];
  }
};

struct JacobiatorEntry {
  std::size_t a, b, c, d;  // component a of Jac(e_b, e_c, e_d)
  Rational value;
};

/// Brute-force graded Jacobi sums over all triples, straight from the C
/// tables; the independent oracle for squares_to_zero on CE differentials.
/// Returns the nonzero entries (empty iff Lie algebra).
std::vector<JacobiatorEntry> jacobiator_oracle(const SuperLieAlgebra& g);

struct CeData {
  SuperLieAlgebra algebra;
  ContextPtr ctx;  // xi^a of degree (z2 = |a| | gh = 1)
  Derivation Q;    // Q(xi^a) = 1/2 C^a_{bc} xi^b xi^c
};

CeData ce_differential(const SuperLieAlgebra& g,
                       SignConvention conv = SignConvention::BernsteinLeites);

/// Poisson bivector with polynomial components over a base of coordinates
/// x^I; validates graded antisymmetry (per the context convention) and the
/// parity rule par(pi^{IJ}) = |I| + |J|.
class PoissonBivector {
 public:
  static PoissonBivector make(ContextPtr base, std::vector<std::vector<Polynomial>> comp);
  static PoissonBivector zero(ContextPtr base);

  const ContextPtr& base() const { return base_; }
  const Polynomial& comp(std::size_t i, std::size_t j) const { return comp_.at(i).at(j); }
  std::size_t dim() const { return comp_.size(); }
  PoissonBivector negated() const;

  /// graded-Schouten cyclic expansion with Bernstein-Leites weights; empty
  /// iff pi satisfies the graded Jacobi identity.
  std::vector<Polynomial> schouten_obstruction() const;

 private:
  ContextPtr base_;
  std::vector<std::vector<Polynomial>> comp_;
};

struct PsmLift {
  PoissonBivector pi;
  CotangentData cot;
  Polynomial hamiltonian;  // Pi = 1/2 p_i pi^{ij} p_j
  Derivation Q;            // hamiltonian_vf(omega, Pi)
};

/// Builds T*[1]M with its canonical form, Pi and Q = X_Pi. No Jacobi
/// assumption is made; squares_to_zero(Q) iff pi is graded Poisson.
PsmLift psm_lift(const PoissonBivector& pi,
                 SlotPolicy momentum_slot = SlotPolicy::fresh("gh"),
                 SlotPolicy form_slot = SlotPolicy::fresh("frm"));

/// The alternative ordering Pi = 1/2 p_i p_j pi^{ji} (left-module
/// conventions); equals -Pi in the purely even case.
Polynomial psm_hamiltonian_alt(const PsmLift& lift);

/// F(q) = Q1(phi(q)) - phi(Q2(q)) per generator of phi's source context;
/// all zero iff phi is a Q-morphism.
std::vector<Polynomial> q_morphism_defect(const Substitution& phi, const Derivation& Q1,
                                          const Derivation& Q2);

/// Vertical gauge parameter: component polynomials attached to fiber
/// generators of a total context.
struct GaugeParameter {
  ContextPtr ctx;
  std::vector<std::pair<std::size_t, Polynomial>> components;

  Derivation vertical_derivation(const MultiDegree& degree) const;
};

/// [Qtotal, eps_hat]; checks that eps_hat has total ghost degree -1.
Derivation gauge_variation(const Derivation& Qtotal, const GaugeParameter& eps);

/// (G tensor Lambda R^m)[1]: basis e_a eta_S over subsets S, parity
/// |a|+|S| mod 2, bracket [e_a eta_S, e_b eta_T] =
/// (-1)^{|a||T|} sgn(S,T) C^c_{ab} e_c eta_{S u T}, zero on overlap.
SuperLieAlgebra cs_extend_algebra(const SuperLieAlgebra& g, std::size_t m);

// ---------------------------------------------------------------------------
// Worldsheet scenarios: abstract source contexts with free field generators,
// the degree-preserving field map, and the displayed equations.

struct PsmScenario {
  PsmLift lift;
  ContextPtr source;                 // X^i, A_i, eps_i and their d-partners
  Derivation d_source;               // worldsheet differential
  Substitution field_map;            // x -> X, p -> A
  std::vector<std::size_t> X, A, E;  // generator indices in source
  std::vector<std::size_t> dX, dA, dE;
};

PsmScenario psm_scenario(const PoissonBivector& pi, bool with_gauge_params = true);

/// Defect of the field map against the equations-of-motion orientation of
/// the lift (the negated hamiltonian vector field); component I is
/// dX^I + pi^{IJ}(X) A_J, the next block is the dA_I equation.
std::vector<Polynomial> psm_eom_defect(const PsmScenario& sc);

/// [Q1 + Q2, eps_hat] on the product of worldsheet and target; the returned
/// derivation evaluates on x^i / p_i to the gauge transformations.
struct PsmGaugeData {
  ContextPtr total;
  Derivation variation;
  std::vector<std::size_t> x, p;  // target coordinates inside `total`
  Substitution to_fields;         // substitutes x -> X, p -> A for display
};
PsmGaugeData psm_gauge_variation(const PsmScenario& sc);

struct CsScenario {
  CeData ce;
  ContextPtr source;  // A^a, eps^a and d-partners
  Derivation d_source;
  Substitution field_map;
  std::vector<std::size_t> A, E, dA, dE;
};

CsScenario cs_scenario(const SuperLieAlgebra& g);

/// Defect against the EOM orientation: dA^a + 1/2 C^a_{bc} A^b A^c.
std::vector<Polynomial> cs_eom_defect(const CsScenario& sc);

struct CsGaugeData {
  ContextPtr total;
  Derivation variation;
  std::vector<std::size_t> xi;
};
CsGaugeData cs_gauge_variation(const CsScenario& sc);

/// Constant invertible pi only: returns eps~_J with X~^I = pi^{IJ} eps~_J and
/// the residual -A~_I - d eps~_I reduced modulo the EOM ideal
/// (A~ -> -pi^{-1} dX~), which must vanish.
struct GaugeFixResult {
  ContextPtr ctx;  // X~, A~ and d-partners
  std::vector<Polynomial> epsilon;
  std::vector<Polynomial> residual;
  bool residual_zero = false;
};

GaugeFixResult source_susy_gauge_fix(const Matrix& pi_const);

}  // namespace koszul
