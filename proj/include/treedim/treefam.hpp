#pragma once

#include <vector>

#include "treedim/family.hpp"
#include "treedim/words.hpp"

namespace treedim {

/// w in T_level. Requires |w| == ell_level exactly.
bool member_full(const TreeFamily& fam, std::size_t level, WordView w);

/// w in pref(T_level). Requires |w| <= ell_level.
bool member_pref_at(const TreeFamily& fam, std::size_t level, WordView w);

/// w in pref(F), answered at the shallowest materialized level covering |w|.
/// Words longer than the deepest level raise Error.
bool member_pref(const TreeFamily& fam, WordView w);

/// { x : w.x in pref(F) } for w in pref(F) with |w| < ell_last. The result is
/// either a single letter or the whole alphabet; anything else trips an
/// internal check.
std::vector<Letter> successors(const TreeFamily& fam, WordView w);

/// All of T_level in lexicographic order. Refuses when |X|^k_level exceeds
/// `cap` or the words are too long to materialize.
std::vector<Word> enumerate_level(const TreeFamily& fam, std::size_t level,
                                  const Int& cap);

}  // namespace treedim
