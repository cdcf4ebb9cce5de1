#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace koszul {

/// Raised on every contract violation in the kernel (signature mismatch,
/// unknown generator, degree check failure, ...).
struct kernel_error : std::runtime_error {
  explicit kernel_error(const std::string& what) : std::runtime_error(what) {}
};

enum class SignConvention : uint8_t { BernsteinLeites, Deligne };

std::string to_string(SignConvention c);

/// Index set for the Z2^k x Z^l grading lattice. Slot names are used by the
/// model-file syntax and canonical printing only.
struct SlotSignature {
  std::size_t z2_count = 0;
  std::size_t z_count = 0;
  std::vector<std::string> slot_names;  // z2 slots first, then z slots

  static SlotSignature make(std::size_t z2, std::size_t z,
                            std::vector<std::string> names = {});
  bool operator==(const SlotSignature&) const = default;

  /// true when `prefix` can be obtained from this signature by dropping
  /// trailing z2 slots and trailing z slots.
  bool extends(const SlotSignature& prefix) const;
};

/// A point of Z2^k x Z^l. z2 entries are stored as 0/1; z entries may be
/// negative (measures of ghost degree -(n+1) and friends).
struct MultiDegree {
  std::vector<uint8_t> z2;
  std::vector<long long> z;

  static MultiDegree zero(const SlotSignature& sig);
  /// unit degree in one slot of sig; slot indexes z2 slots then z slots.
  static MultiDegree unit(const SlotSignature& sig, std::size_t slot);

  bool conforms(const SlotSignature& sig) const;
  bool is_zero() const;
  bool operator==(const MultiDegree&) const = default;

  MultiDegree& operator+=(const MultiDegree& o);
  friend MultiDegree operator+(MultiDegree a, const MultiDegree& b) { return a += b; }
  MultiDegree operator-() const;
  friend MultiDegree operator-(MultiDegree a, const MultiDegree& b) { return a += -b; }

  /// zero-pads to a larger signature (this one's slots must be a prefix).
  MultiDegree padded(const SlotSignature& from, const SlotSignature& to) const;

  std::string to_string() const;  // "(1,0|2,-1)"
};

/// total parity: sum of all entries mod 2
int par(const MultiDegree& d);

/// ghost number: sum of Z-slot entries
long long gh(const MultiDegree& d);

/// Parity of the exponent in the exchange sign for degrees a, b.
/// BernsteinLeites: par(a)*par(b); Deligne: slot-wise scalar product mod 2.
int koszul_exponent(const MultiDegree& a, const MultiDegree& b, SignConvention c);

/// The exchange sign itself, +1 or -1.
int koszul_sign(const MultiDegree& a, const MultiDegree& b, SignConvention c);

/// A generator of degree d is odd iff exchanging it with itself costs a sign.
inline bool is_odd(const MultiDegree& d, SignConvention c) {
  return koszul_exponent(d, d, c) != 0;
}

}  // namespace koszul
