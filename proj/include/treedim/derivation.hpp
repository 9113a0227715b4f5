#pragma once

#include <string>

#include "treedim/family.hpp"
#include "treedim/sequences.hpp"

namespace treedim {

enum class GrowthKind { constant, linear, quadratic, affine };

/// Lower-bound schedule evaluated at a level index, clamped to >= 1:
///   constant: c      linear: c*i      quadratic: c*i^2      affine: i + c
/// Text form "kind:coeff", e.g. "quadratic:1".
struct GrowthSpec {
  GrowthKind kind = GrowthKind::constant;
  Int coeff = 1;

  Int eval(std::size_t i) const;
  static GrowthSpec parse(const std::string& text);
  std::string str() const;
};

struct GrowthPolicy {
  GrowthSpec min_ell;    // ell_i >= min_ell(i)
  GrowthSpec min_ratio;  // ell_{i+1} >= min_ratio(i) * ell_i

  static GrowthPolicy trivial();   // both constant 1
  static GrowthPolicy defaults();  // min_ell(i) = i^2, min_ratio(i) = i + 1
};

/// Output of one derivation step: the transition plus the verified successor
/// level.
struct LevelDelta {
  Transition step;
  Int k_next;
  Int ell_next;
};

/// One step of the parameter derivation. Writes q_next/q = a/b in lowest
/// terms, multiplies both by `scale`, and solves:
///   q > q_next:  r = a,           p = b - a,      kappa = 0, singleton
///   q < q_next:  r = b*ell - a*k, p = (a - b)*k,  kappa = p, full
/// The successor satisfies ell' = (r+p)*ell, k' = r*k + kappa*ell and
/// k'/ell' = q_next exactly (re-verified before returning).
LevelDelta derive_level(const Rat& q, const Rat& q_next, const Int& k,
                        const Int& ell, const Int& scale);

/// Derives the whole family: ell_0 is the smallest multiple of q_0's reduced
/// denominator meeting min_ell(0); each step uses the smallest scale with
/// ell_{i+1} >= max(min_ell(i+1), min_ratio(i) * ell_i).
TreeFamily derive_family(const QSequence& seq, std::size_t n_levels,
                         const GrowthPolicy& policy, T0Variant t0,
                         unsigned alphabet_size = 2);

}  // namespace treedim
