#include "koszul/grading.hpp"

#include <set>

namespace koszul {

std::string to_string(SignConvention c) {
  return c == SignConvention::BernsteinLeites ? "bl" : "deligne";
}

SlotSignature SlotSignature::make(std::size_t z2, std::size_t z,
                                  std::vector<std::string> names) {
  SlotSignature sig;
  sig.z2_count = z2;
  sig.z_count = z;
  if (names.empty()) {
    for (std::size_t i = 0; i < z2; ++i) names.push_back("p" + std::to_string(i + 1));
    for (std::size_t i = 0; i < z; ++i) names.push_back("g" + std::to_string(i + 1));
  }
  if (names.size() != z2 + z)
    throw kernel_error("slot name list must have one entry per slot");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw kernel_error("duplicate slot name");
  sig.slot_names = std::move(names);
  return sig;
}

bool SlotSignature::extends(const SlotSignature& prefix) const {
  if (prefix.z2_count > z2_count || prefix.z_count > z_count) return false;
  for (std::size_t i = 0; i < prefix.z2_count; ++i)
    if (slot_names[i] != prefix.slot_names[i]) return false;
  for (std::size_t i = 0; i < prefix.z_count; ++i)
    if (slot_names[z2_count + i] != prefix.slot_names[prefix.z2_count + i]) return false;
  return true;
}

MultiDegree MultiDegree::zero(const SlotSignature& sig) {
  MultiDegree d;
  d.z2.assign(sig.z2_count, 0);
  d.z.assign(sig.z_count, 0);
  return d;
}

MultiDegree MultiDegree::unit(const SlotSignature& sig, std::size_t slot) {
  MultiDegree d = zero(sig);
  if (slot < sig.z2_count)
    d.z2[slot] = 1;
  else if (slot < sig.z2_count + sig.z_count)
    d.z[slot - sig.z2_count] = 1;
  else
    throw kernel_error("slot index out of range");
  return d;
}

bool MultiDegree::conforms(const SlotSignature& sig) const {
  return z2.size() == sig.z2_count && z.size() == sig.z_count;
}

bool MultiDegree::is_zero() const {
  for (auto b : z2)
    if (b) return false;
  for (auto n : z)
    if (n) return false;
  return true;
}

MultiDegree& MultiDegree::operator+=(const MultiDegree& o) {
  if (z2.size() != o.z2.size() || z.size() != o.z.size())
    throw kernel_error("degree signature mismatch");
  for (std::size_t i = 0; i < z2.size(); ++i) z2[i] = uint8_t((z2[i] + o.z2[i]) & 1);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += o.z[i];
  return *this;
}

MultiDegree MultiDegree::operator-() const {
  MultiDegree d = *this;  // z2 negation is the identity mod 2
  for (auto& n : d.z) n = -n;
  return d;
}

MultiDegree MultiDegree::padded(const SlotSignature& from, const SlotSignature& to) const {
  if (!conforms(from)) throw kernel_error("degree does not conform to its signature");
  if (!to.extends(from)) throw kernel_error("signature is not an extension");
  MultiDegree d = zero(to);
  for (std::size_t i = 0; i < z2.size(); ++i) d.z2[i] = z2[i];
  for (std::size_t i = 0; i < z.size(); ++i) d.z[i] = z[i];
  return d;
}

std::string MultiDegree::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < z2.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(int(z2[i]));
  }
  s += "|";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(z[i]);
  }
  return s + ")";
}

int par(const MultiDegree& d) {
  long long t = 0;
  for (auto b : d.z2) t += b;
  for (auto n : d.z) t += n;
  return int(((t % 2) + 2) % 2);
}

long long gh(const MultiDegree& d) {
  long long t = 0;
  for (auto n : d.z) t += n;
  return t;
}

int koszul_exponent(const MultiDegree& a, const MultiDegree& b, SignConvention c) {
  if (a.z2.size() != b.z2.size() || a.z.size() != b.z.size())
    throw kernel_error("koszul_sign: signature mismatch");
  if (c == SignConvention::BernsteinLeites) return par(a) * par(b);
  long long e = 0;
  for (std::size_t i = 0; i < a.z2.size(); ++i) e += (long long)a.z2[i] * b.z2[i];
  for (std::size_t i = 0; i < a.z.size(); ++i) e += a.z[i] * b.z[i];
  return int(((e % 2) + 2) % 2);
}

int koszul_sign(const MultiDegree& a, const MultiDegree& b, SignConvention c) {
  return koszul_exponent(a, b, c) ? -1 : 1;
}

}  // namespace koszul
