#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace raabe {

/// Binary working precision shared by every extended-precision evaluation.
/// Identical (inputs, context) pairs give bit-identical results.
struct PrecisionContext {
  int bits = 128;

  constexpr PrecisionContext() = default;
  constexpr explicit PrecisionContext(int b) : bits(b) {
    if (b < 53) throw std::invalid_argument("PrecisionContext: bits must be >= 53");
  }

  /// Same context widened by `extra` guard bits.
  constexpr PrecisionContext widened(int extra) const { return PrecisionContext(bits + extra); }

  friend constexpr auto operator<=>(const PrecisionContext&, const PrecisionContext&) = default;
};

}  // namespace raabe
