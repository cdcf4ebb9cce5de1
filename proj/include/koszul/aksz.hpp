#pragma once

#include "koszul/models.hpp"

namespace koszul {

/// Berezin integration data: an ordered list of odd generators; the list
/// order fixes the orientation. The ghost deficit is the total ghost number
/// of the listed generators.
struct BerezinianMeasure {
  ContextPtr ctx;
  std::vector<std::size_t> gens;

  static BerezinianMeasure make(ContextPtr ctx, std::vector<std::size_t> gens);
  long long deficit() const;
};

/// Coefficient of the normal-ordered top monomial (measure-order, moved to
/// the front of each term with the induced Koszul sign); linear, vanishes on
/// terms missing any measure generator.
Polynomial berezin(const Polynomial& f, const BerezinianMeasure& mu);

struct AdmissibleResult {
  bool admissible = false;
  std::string reason;                 // set when rejected
  std::optional<Polynomial> witness;  // sub-top monomial with berezin(Qf) != 0
};

/// Two-stage check: (a) structural - any non-nilpotent generator of positive
/// ghost degree rules the measure out; (b) invariance - berezin(Q f) = 0 for
/// every proper divisor f of the top monomial.
AdmissibleResult measure_admissible(const Derivation& Q, const BerezinianMeasure& mu);

/// For an even Lie algebra on R^{0|n}: true iff the top exterior power is
/// not in the image of the CE differential; must agree with the invariance
/// stage of measure_admissible.
bool top_cohomology_is_line(const SuperLieAlgebra& g);

/// Mapping-space data for source R^{0|m}: superfield components q_S over
/// subsets S of the odd directions, the evaluation substitution, the
/// transported Q-structure and the transported symplectic form.
struct OddSourceLift {
  std::size_t m = 0;
  ContextPtr target;
  ContextPtr components;                             // q_S, grouped per target generator
  ContextPtr big;                                    // theta generators then components
  std::vector<std::size_t> theta;                    // indices in big
  std::vector<std::vector<std::size_t>> comp_index;  // [target gen][mask] -> components idx
  Substitution ev;                                   // target -> big
  Derivation Q_ext;                                  // on components
  ShiftedContext comp_shift;
  ConstantSymplecticForm omega_ext;                  // on comp_shift
};

OddSourceLift odd_source_lift(const Derivation& Q0, const ConstantSymplecticForm& omega,
                              std::size_t m);

/// Component-field integrand of the superfield action
/// int dtheta ( A_i dX^i + 1/2 pi^{ij}(X) A_i A_j ).
struct SusyExpansion {
  std::size_t m = 0;
  ContextPtr ws;  // theta's, then X/A components, then their d-partners
  std::vector<std::size_t> theta;
  std::vector<std::vector<std::size_t>> X, A, dX, dA;  // [i][mask]
  Derivation d;                                        // annihilates theta's
  Polynomial integrand;                                // before integration
  Polynomial result;                                   // after Berezin integration
};

SusyExpansion susy_expand(const PoissonBivector& pi, std::size_t m);

}  // namespace koszul
