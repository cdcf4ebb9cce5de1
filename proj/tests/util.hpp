#pragma once

// Shared helpers for randomized algebra tests. All randomness is seeded, so
// failures reproduce.

#include <random>

#include "koszul/calculus.hpp"

namespace koszul::testing {

using Rng = std::mt19937_64;

inline long long rand_int(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline MultiDegree random_degree(Rng& rng, const SlotSignature& sig, long long lo = -2,
                                 long long hi = 2) {
  MultiDegree d = MultiDegree::zero(sig);
  for (auto& b : d.z2) b = uint8_t(rand_int(rng, 0, 1));
  for (auto& n : d.z) n = rand_int(rng, lo, hi);
  return d;
}

inline SlotSignature random_signature(Rng& rng, std::size_t max_z2 = 2,
                                      std::size_t max_z = 2) {
  return SlotSignature::make(std::size_t(rand_int(rng, 0, (long long)max_z2)),
                             std::size_t(rand_int(rng, 0, (long long)max_z)));
}

inline SignConvention random_convention(Rng& rng) {
  return rand_int(rng, 0, 1) ? SignConvention::Deligne : SignConvention::BernsteinLeites;
}

inline ContextPtr random_context(Rng& rng, std::size_t max_gens = 6) {
  SlotSignature sig = random_signature(rng);
  const std::size_t n = std::size_t(rand_int(rng, 1, (long long)max_gens));
  std::vector<GeneratorInfo> gens;
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back({"q" + std::to_string(i + 1), random_degree(rng, sig, -1, 2)});
  return GradedContext::make(sig, random_convention(rng), std::move(gens));
}

/// Random polynomial of total exponent <= max_exp (not necessarily
/// homogeneous).
inline Polynomial random_polynomial(Rng& rng, const ContextPtr& ctx, int terms = 3,
                                    uint32_t max_exp = 3) {
  Polynomial p = Polynomial::zero(ctx);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::pair<std::size_t, uint32_t>> word;
    uint32_t budget = max_exp;
    for (std::size_t g = 0; g < ctx->size() && budget; ++g) {
      uint32_t cap = ctx->odd(g) ? 1 : budget;
      uint32_t e = uint32_t(rand_int(rng, 0, cap));
      if (e) {
        word.push_back({g, e});
        budget -= std::min(budget, e);
      }
    }
    p += normal_form(ctx, word, Rational(Integer(rand_int(rng, -4, 4)), Integer(1)));
  }
  return p;
}

/// Random homogeneous polynomial; may come back zero when no monomial of the
/// requested degree exists within the exponent budget.
inline Polynomial random_homogeneous(Rng& rng, const ContextPtr& ctx,
                                     const MultiDegree& degree, int tries = 40,
                                     uint32_t max_exp = 3) {
  Polynomial p = Polynomial::zero(ctx);
  for (int t = 0; t < tries; ++t) {
    std::vector<std::pair<std::size_t, uint32_t>> word;
    MultiDegree acc = ctx->zero_degree();
    uint32_t budget = max_exp;
    for (std::size_t g = 0; g < ctx->size() && budget; ++g) {
      uint32_t cap = ctx->odd(g) ? 1 : budget;
      uint32_t e = uint32_t(rand_int(rng, 0, cap));
      if (e) {
        word.push_back({g, e});
        budget -= std::min(budget, e);
        for (uint32_t k = 0; k < e; ++k) acc += ctx->gen(g).degree;
      }
    }
    if (acc == degree)
      p += normal_form(ctx, word, Rational(Integer(rand_int(rng, 1, 4)), Integer(1)));
  }
  return p;
}

/// Random derivation with homogeneous values of a random degree.
inline Derivation random_derivation(Rng& rng, const ContextPtr& ctx, int tries = 12,
                                    uint32_t max_exp = 3) {
  for (int t = 0; t < tries; ++t) {
    MultiDegree deg = random_degree(rng, ctx->signature(), -1, 1);
    std::vector<Polynomial> vals;
    bool any = false;
    for (std::size_t g = 0; g < ctx->size(); ++g) {
      Polynomial v = random_homogeneous(rng, ctx, deg + ctx->gen(g).degree, 20, max_exp);
      any = any || !v.is_zero();
      vals.push_back(std::move(v));
    }
    if (any) return Derivation::make(ctx, deg, std::move(vals));
  }
  return Derivation::zero(ctx, ctx->zero_degree());
}

}  // namespace koszul::testing
