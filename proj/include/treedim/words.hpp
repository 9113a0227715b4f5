#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace treedim {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

/// Digit string for alphabets up to 10 letters ("101"), comma-separated
/// decimal letters beyond that ("0,11,3"). "" is the empty word.
Word parse_word(const std::string& text, unsigned alphabet_size);
std::string format_word(WordView w, unsigned alphabet_size);

bool all_zero(WordView w);

}  // namespace treedim
