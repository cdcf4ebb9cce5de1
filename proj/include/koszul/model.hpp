#pragma once

#include <map>

#include "koszul/aksz.hpp"

namespace koszul {

/// Parse diagnostic with 1-based position.
struct parse_error : std::runtime_error {
  int line, col;
  parse_error(int l, int c, const std::string& msg)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
        line(l),
        col(c) {}
};

struct ConstTable {
  std::size_t dim = 0;
  std::vector<int> parities;  // empty = all even
  std::vector<SuperLieAlgebra::Entry> entries;

  SuperLieAlgebra algebra() const;
};

struct BivecSpec {
  // 0-based generator pairs with expression components
  std::vector<std::tuple<std::size_t, std::size_t, Polynomial>> entries;

  PoissonBivector bivector(const ContextPtr& ctx) const;
};

struct FormSpec {
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
  MultiDegree declared;  // over the model signature; +2 in the form slot is implicit

  /// builds the form on a fresh tangent shift of the model context
  ConstantSymplecticForm form(const ContextPtr& ctx) const;
};

/// A parsed model file: one context plus named derivations, structure
/// constant tables, bivectors, forms and polynomials.
struct ModelFile {
  SlotSignature sig;
  SignConvention conv = SignConvention::BernsteinLeites;
  ContextPtr ctx;
  std::map<std::string, Derivation> derivations;
  std::map<std::string, ConstTable> consts;
  std::map<std::string, BivecSpec> bivecs;
  std::map<std::string, FormSpec> forms;
  std::map<std::string, Polynomial> polys;
};

ModelFile parse_model(const std::string& text);

/// Canonical rendering; parse(print(parse(t))) == parse(t) and printing a
/// printed model is a fixed point.
std::string print_model(const ModelFile& m);

/// Expression parser over a context (the grammar shared with polynomial
/// printing). Exposed for tests and the CLI.
Polynomial parse_expression(const std::string& text, const ContextPtr& ctx);

}  // namespace koszul
