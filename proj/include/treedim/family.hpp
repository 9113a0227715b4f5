#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treedim/rat.hpp"

namespace treedim {

/// Shape of the base tree T_0 over block length ell_0 with k_0 free letters:
/// suffix_pad puts the free letters first and pads with 0, prefix_pad the
/// reverse.
enum class T0Variant { suffix_pad, prefix_pad };

/// Appendix U of a construction step: the full cube X^(p*ell) or the single
/// word 0^(p*ell).
enum class AppendixKind { full, singleton };

std::string to_string(T0Variant v);
std::string to_string(AppendixKind k);
T0Variant t0_variant_from_string(const std::string& s);
AppendixKind appendix_from_string(const std::string& s);

/// Step from one level to the next: T' = T^r . U with |U| = p*ell letters.
/// kappa is 0 on a decreasing step (singleton appendix) and p on an
/// increasing one (full appendix).
struct Transition {
  Int r;
  Int p;
  Int kappa;
  AppendixKind appendix = AppendixKind::singleton;
};

/// One level of the construction: block length ell, count exponent k
/// (|T| = |X|^k, density k/ell), plus the step to the next level when one
/// has been materialized.
struct LevelParams {
  Int k;
  Int ell;
  std::optional<Transition> next;
};

/// Symbolic description of the whole tree family. Words are never stored;
/// membership and counting are answered recursively from these parameters.
struct TreeFamily {
  unsigned alphabet_size = 2;
  T0Variant t0_variant = T0Variant::suffix_pad;
  std::vector<LevelParams> levels;

  std::size_t level_count() const { return levels.size(); }
  const Int& ell_last() const;
  Rat level_q(std::size_t i) const;
};

struct FamilyIssue {
  std::size_t level;
  std::string what;
};

/// Exact consistency of the stored parameters: ranges, the ell/k recurrences,
/// the kappa case split and the appendix kind. Empty iff well-formed.
std::vector<FamilyIssue> validate_family(const TreeFamily& fam);

/// As validate_family, additionally pinning each level density k_i/ell_i to
/// the given rational sequence.
std::vector<FamilyIssue> validate_family_against(const TreeFamily& fam,
                                                 const std::vector<Rat>& qs);

}  // namespace treedim
