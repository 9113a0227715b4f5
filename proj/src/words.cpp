#include "treedim/words.hpp"

#include <algorithm>

#include "treedim/error.hpp"

namespace treedim {

Word parse_word(const std::string& text, unsigned alphabet_size) {
  Word w;
  if (text.empty()) return w;
  if (alphabet_size <= 10) {
    w.reserve(text.size());
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw Error(std::string("bad letter '") + ch + "' in word");
      Letter x = static_cast<Letter>(ch - '0');
      if (x >= alphabet_size)
        throw Error("letter " + std::to_string(x) + " outside alphabet of size " +
                    std::to_string(alphabet_size));
      w.push_back(x);
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty()) throw Error("empty letter in comma-separated word");
    unsigned long x = 0;
    try {
      x = std::stoul(part);
    } catch (...) {
      throw Error("bad letter '" + part + "' in word");
    }
    if (x >= alphabet_size)
      throw Error("letter " + std::to_string(x) + " outside alphabet of size " +
                  std::to_string(alphabet_size));
    w.push_back(static_cast<Letter>(x));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return w;
}

std::string format_word(WordView w, unsigned alphabet_size) {
  std::string out;
  if (alphabet_size <= 10) {
    out.reserve(w.size());
    for (Letter x : w) out += static_cast<char>('0' + x);
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

bool all_zero(WordView w) {
  return std::all_of(w.begin(), w.end(), [](Letter x) { return x == 0; });
}

}  // namespace treedim
