#include "treedim/oracle.hpp"

#include <algorithm>

#include "treedim/error.hpp"

namespace treedim {

namespace {

// All words of `length` letters in lexicographic order.
std::vector<Word> full_cube(unsigned alphabet_size, std::size_t length, const Int& cap) {
  Int count = ipow(Int(alphabet_size), static_cast<unsigned long>(length));
  if (count > cap) throw Error("brute_trees: appendix cube exceeds cap");
  std::vector<Word> out;
  out.reserve(count.get_ui());
  Word cur(length, 0);
  while (true) {
    out.push_back(cur);
    std::size_t pos = length;
    while (pos > 0) {
      --pos;
      if (++cur[pos] < alphabet_size) break;
      cur[pos] = 0;
      if (pos == 0) return out;
    }
    if (length == 0) return out;
  }
}

std::vector<Word> concat_product(const std::vector<Word>& left,
                                 const std::vector<Word>& right) {
  std::vector<Word> out;
  out.reserve(left.size() * right.size());
  for (const auto& a : left)
    for (const auto& b : right) {
      Word w = a;
      w.insert(w.end(), b.begin(), b.end());
      out.push_back(std::move(w));
    }
  return out;
}

std::size_t small(const Int& v, const char* what) {
  if (!fits_ulong(v) || v > 1000000)
    throw Error(std::string("brute_trees: ") + what + " too large to materialize");
  return static_cast<std::size_t>(v.get_ui());
}

}  // namespace

ExplicitLanguage brute_trees(const TreeFamily& fam, std::size_t level, const Int& cap) {
  if (level >= fam.level_count()) throw Error("brute_trees: level out of range");
  const auto& target = fam.levels[level];
  if (!fits_ulong(target.k) || target.k > 62)
    throw Error("brute_trees: |X|^k exceeds cap at level " + std::to_string(level));
  if (ipow(Int(fam.alphabet_size), target.k.get_ui()) > cap)
    throw Error("brute_trees: size exceeds cap at level " + std::to_string(level));

  const std::size_t ell0 = small(fam.levels[0].ell, "base length");
  const std::size_t k0 = small(fam.levels[0].k, "base free-letter count");

  // T_0: free block of k0 letters, zero padding on the other side.
  std::vector<Word> cur;
  {
    std::vector<Word> frees = full_cube(fam.alphabet_size, k0, cap);
    Word pad(ell0 - k0, 0);
    cur.reserve(frees.size());
    for (const auto& f : frees) {
      Word w;
      if (fam.t0_variant == T0Variant::suffix_pad) {
        w = f;
        w.insert(w.end(), pad.begin(), pad.end());
      } else {
        w = pad;
        w.insert(w.end(), f.begin(), f.end());
      }
      cur.push_back(std::move(w));
    }
  }

  for (std::size_t i = 0; i < level; ++i) {
    const Transition& t = *fam.levels[i].next;
    const std::size_t reps = small(t.r, "repetition factor");
    const std::size_t app_len = small(t.p * fam.levels[i].ell, "appendix length");

    std::vector<Word> next = cur;
    for (std::size_t c = 1; c < reps; ++c) next = concat_product(next, cur);
    std::vector<Word> appendix =
        t.appendix == AppendixKind::singleton
            ? std::vector<Word>{Word(app_len, 0)}
            : full_cube(fam.alphabet_size, app_len, cap);
    next = concat_product(next, appendix);
    if (Int(static_cast<unsigned long>(next.size())) > cap)
      throw Error("brute_trees: intermediate size exceeds cap");
    cur = std::move(next);
  }

  ExplicitLanguage lang;
  lang.alphabet_size = fam.alphabet_size;
  lang.word_length = small(target.ell, "word length");
  lang.words = std::move(cur);
  std::sort(lang.words.begin(), lang.words.end());
  return lang;
}

namespace {

// Distinct prefixes of the given length, sorted. Input must be sorted.
std::vector<Word> prefix_set(const std::vector<Word>& words, std::size_t len) {
  std::vector<Word> out;
  for (const auto& w : words) {
    Word p(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
    if (out.empty() || out.back() != p) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::map<std::size_t, Int> brute_structure(const ExplicitLanguage& lang) {
  std::map<std::size_t, Int> counts;
  for (std::size_t len = 0; len <= lang.word_length; ++len)
    counts[len] = Int(static_cast<unsigned long>(prefix_set(lang.words, len).size()));
  return counts;
}

bool brute_balance(const ExplicitLanguage& lang) {
  for (std::size_t m = 0; m < lang.word_length; ++m) {
    std::vector<Word> base = prefix_set(lang.words, m);
    for (std::size_t k = 1; m + k <= lang.word_length; ++k) {
      std::vector<Word> ext = prefix_set(lang.words, m + k);
      // Group the extensions by their length-m prefix; groups are contiguous
      // because the set is sorted.
      std::vector<std::size_t> group_sizes;
      for (std::size_t idx = 0; idx < ext.size(); ++idx) {
        bool new_group = idx == 0 || !std::equal(ext[idx].begin(),
                                                 ext[idx].begin() + static_cast<std::ptrdiff_t>(m),
                                                 ext[idx - 1].begin());
        if (new_group) group_sizes.push_back(0);
        ++group_sizes.back();
      }
      if (group_sizes.size() != base.size()) return false;
      for (std::size_t g : group_sizes)
        if (g != group_sizes.front()) return false;
    }
  }
  return true;
}

std::map<Word, Rat> brute_martingale(const ExplicitLanguage& lang) {
  std::map<Word, Rat> values;
  values[Word{}] = Rat(1);
  for (std::size_t m = 0; m < lang.word_length; ++m) {
    std::vector<Word> here = prefix_set(lang.words, m);
    std::vector<Word> there = prefix_set(lang.words, m + 1);
    std::size_t idx = 0;
    for (const auto& w : here) {
      std::vector<Word> children;
      while (idx < there.size() &&
             std::equal(w.begin(), w.end(), there[idx].begin())) {
        children.push_back(there[idx]);
        ++idx;
      }
      Rat vw = values.at(w);
      Rat each = Rat(Int(lang.alphabet_size), Int(static_cast<unsigned long>(children.size()))) * vw;
      for (auto& c : children) values[std::move(c)] = each;
    }
  }
  return values;
}

}  // namespace treedim
