#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "treedim/family.hpp"

namespace treedim {

/// The structure function in log form: e(ell) with |pref F . X^ell| =
/// |X|^e(ell). Counts are kept as exponents only; the raw counts overflow
/// everything past a few levels. Queries are pure; the memo cache is
/// internal and concurrent use is safe.
class ExponentFn {
 public:
  explicit ExponentFn(TreeFamily fam);

  ExponentFn(const ExponentFn&) = delete;
  ExponentFn& operator=(const ExponentFn&) = delete;

  const TreeFamily& family() const { return fam_; }

  /// e(ell) for 0 <= ell <= ell_last.
  Int exponent(const Int& ell) const;

  /// e(ell)/ell as an exact rational; requires ell >= 1.
  Rat density(const Int& ell) const;

 private:
  Int compute(const Int& ell) const;

  TreeFamily fam_;
  mutable std::mutex mu_;
  mutable std::map<Int, Int> cache_;
};

enum class BoundRegime { copy, appendix };

struct BoundSegment {
  Int lo;
  Int hi;
  Rat lower;
  Rat upper;
  BoundRegime regime;
};

struct BoundViolation {
  Int ell;
  Rat density;
  Rat bound;
  bool below;  // density fell below the lower bound (else above the upper)
};

/// Density bounds on [ell_i, ell_{i+1}], verified pointwise with exact
/// rational comparisons. Violations mean an implementation bug.
struct DensityCertificate {
  std::size_t level;
  std::vector<BoundSegment> segments;
  std::vector<BoundViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Certifies the copy-regime and appendix-regime density bounds for the
/// segment [ell_i, ell_{i+1}]. Exhaustive when the segment is short
/// (<= 10^5), endpoints plus 1000 evenly spaced interior points otherwise.
/// Requires level i+1 materialized.
DensityCertificate check_bounds(const ExponentFn& fn, std::size_t i);

struct BlockDensity {
  std::size_t level;
  Int ell;
  Rat density;
};

struct DimEstimate {
  Rat empirical_min_density;
  std::vector<BlockDensity> block_densities;
  Rat certified_lower;
};

/// Block-boundary densities (each equal to q_i) up to `up_to`, their minimum,
/// and the certified segment lower bound
/// min over i >= 1 of (1 - ell_{i-1}/ell_i) * min{q_{i-1}, q_i, q_{i+1}}.
DimEstimate dim_estimate(const ExponentFn& fn, const Int& up_to);

enum class Direction { decreasing, increasing };

struct MonotoneReport {
  std::vector<Int> violating_ells;
  Int checked_up_to;
  bool ok() const { return violating_ells.empty(); }
};

/// For a monotone family with the matching T_0 variant, verifies the global
/// exponent bound: decreasing => e(ell) >= alpha_hat*ell, increasing =>
/// e(ell) <= alpha_hat*ell, exhaustively for all ell <= up_to.
MonotoneReport monotone_check(const ExponentFn& fn, Direction direction,
                              const Rat& alpha_hat, const Int& up_to);

}  // namespace treedim
