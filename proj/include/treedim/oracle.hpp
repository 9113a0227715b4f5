#pragma once

#include <map>
#include <vector>

#include "treedim/family.hpp"
#include "treedim/rat.hpp"
#include "treedim/words.hpp"

namespace treedim {

/// An explicitly materialized uniform-length language. Reference counterpart
/// of the symbolic tree levels; deliberately built by literal set products,
/// sharing no logic with the recursive membership code.
struct ExplicitLanguage {
  unsigned alphabet_size = 2;
  std::size_t word_length = 0;
  std::vector<Word> words;  // sorted, distinct
};

/// T_level by literal concatenation products, bottom-up from the base
/// pattern. Refuses when |X|^k_level exceeds `cap`.
ExplicitLanguage brute_trees(const TreeFamily& fam, std::size_t level, const Int& cap);

/// length -> number of distinct prefixes of that length.
std::map<std::size_t, Int> brute_structure(const ExplicitLanguage& lang);

/// True iff all same-length prefixes have the same number of length-k
/// extensions, for every k. Exhaustive.
bool brute_balance(const ExplicitLanguage& lang);

/// The prefix-tree martingale by its literal recursion: V(e) = 1,
/// V(wx) = |X| / (branching at w) * V(w) on the tree, 0 off it.
std::map<Word, Rat> brute_martingale(const ExplicitLanguage& lang);

}  // namespace treedim
