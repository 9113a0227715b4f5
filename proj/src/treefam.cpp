#include "treedim/treefam.hpp"

#include <algorithm>
#include <limits>

#include "treedim/error.hpp"

namespace treedim {

namespace {

Int to_int(std::size_t n) { return Int(static_cast<unsigned long>(n)); }

// Clamp for position comparisons; values beyond any materializable word
// length compare as "larger than every position".
std::size_t clamp_size(const Int& v) {
  return fits_ulong(v) ? static_cast<std::size_t>(v.get_ui())
                       : std::numeric_limits<std::size_t>::max();
}

// Prefix of the base pattern: padding positions must hold letter 0, free
// positions are unconstrained.
bool base_prefix_ok(const TreeFamily& fam, WordView w) {
  const auto& lv = fam.levels.front();
  if (fam.t0_variant == T0Variant::suffix_pad) {
    std::size_t k0 = clamp_size(lv.k);
    for (std::size_t pos = k0; pos < w.size(); ++pos)
      if (w[pos] != 0) return false;
    return true;
  }
  std::size_t pad = clamp_size(lv.ell - lv.k);
  for (std::size_t pos = 0; pos < w.size() && pos < pad; ++pos)
    if (w[pos] != 0) return false;
  return true;
}

bool pref_at(const TreeFamily& fam, std::size_t level, WordView w);

bool full_at(const TreeFamily& fam, std::size_t level, WordView w) {
  return pref_at(fam, level, w);  // callers guarantee |w| == ell_level
}

bool pref_at(const TreeFamily& fam, std::size_t level, WordView w) {
  if (level == 0) return base_prefix_ok(fam, w);

  const auto& prev = fam.levels[level - 1];
  const Transition& t = *prev.next;
  const Int m = to_int(w.size());
  const Int body = t.r * prev.ell;

  if (m <= body) {
    if (m < prev.ell) return pref_at(fam, level - 1, w);
    unsigned long chunk = prev.ell.get_ui();  // chunk <= |w| so it fits
    std::size_t full_chunks = w.size() / chunk;
    for (std::size_t c = 0; c < full_chunks; ++c)
      if (!full_at(fam, level - 1, w.subspan(c * chunk, chunk))) return false;
    std::size_t tail = w.size() % chunk;
    if (tail > 0 && !pref_at(fam, level - 1, w.subspan(full_chunks * chunk, tail)))
      return false;
    return true;
  }

  // Body complete, remainder lies in the appendix.
  unsigned long chunk = prev.ell.get_ui();
  unsigned long reps = t.r.get_ui();
  for (unsigned long c = 0; c < reps; ++c)
    if (!full_at(fam, level - 1, w.subspan(c * chunk, chunk))) return false;
  WordView tail = w.subspan(reps * chunk);
  return t.appendix == AppendixKind::full || all_zero(tail);
}

}  // namespace

bool member_full(const TreeFamily& fam, std::size_t level, WordView w) {
  if (level >= fam.level_count()) throw Error("level index out of range");
  if (to_int(w.size()) != fam.levels[level].ell)
    throw Error("member_full: word length " + std::to_string(w.size()) +
                " != ell_" + std::to_string(level) + " = " +
                fam.levels[level].ell.get_str());
  return full_at(fam, level, w);
}

bool member_pref_at(const TreeFamily& fam, std::size_t level, WordView w) {
  if (level >= fam.level_count()) throw Error("level index out of range");
  if (to_int(w.size()) > fam.levels[level].ell)
    throw Error("member_pref_at: word longer than ell_" + std::to_string(level));
  return pref_at(fam, level, w);
}

bool member_pref(const TreeFamily& fam, WordView w) {
  if (fam.levels.empty()) throw Error("family has no levels");
  const Int m = to_int(w.size());
  for (std::size_t i = 0; i < fam.level_count(); ++i)
    if (m <= fam.levels[i].ell) return pref_at(fam, i, w);
  throw Error("word of length " + std::to_string(w.size()) +
              " exceeds deepest materialized level (ell_last = " +
              fam.ell_last().get_str() + "); materialize more levels");
}

std::vector<Letter> successors(const TreeFamily& fam, WordView w) {
  if (!member_pref(fam, w)) throw Error("successors: word not in pref F");
  if (to_int(w.size()) >= fam.ell_last())
    throw Error("successors: word already at the deepest materialized length");
  Word probe(w.begin(), w.end());
  probe.push_back(0);
  std::vector<Letter> out;
  for (Letter x = 0; x < fam.alphabet_size; ++x) {
    probe.back() = x;
    if (member_pref(fam, probe)) out.push_back(x);
  }
  if (out.size() != 1 && out.size() != fam.alphabet_size)
    throw InternalCheckError("successor set of size " + std::to_string(out.size()) +
                             " violates the full-or-singleton dichotomy");
  return out;
}

std::vector<Word> enumerate_level(const TreeFamily& fam, std::size_t level,
                                  const Int& cap) {
  if (level >= fam.level_count()) throw Error("level index out of range");
  const auto& lv = fam.levels[level];
  if (!fits_ulong(lv.k) || lv.k > 62)
    throw Error("enumerate_level: |X|^k with k = " + lv.k.get_str() + " exceeds cap " +
                cap.get_str());
  Int count = ipow(Int(fam.alphabet_size), lv.k.get_ui());
  if (count > cap)
    throw Error("enumerate_level: size " + count.get_str() + " exceeds cap " +
                cap.get_str());
  if (lv.ell > 1000000 || count * lv.ell > 50000000)
    throw Error("enumerate_level: words too long to materialize (ell = " +
                lv.ell.get_str() + ")");

  const std::size_t target_len = lv.ell.get_ui();
  const Letter B = static_cast<Letter>(fam.alphabet_size);
  std::vector<Word> out;
  Word cur;
  cur.reserve(target_len);
  Letter next = 0;

  // Lexicographic backtracking over pref(T_level).
  while (true) {
    if (cur.size() == target_len) {
      out.push_back(cur);
      next = B;  // force a backtrack
    } else {
      bool advanced = false;
      for (Letter x = next; x < B; ++x) {
        cur.push_back(x);
        if (member_pref_at(fam, level, cur)) {
          advanced = true;
          break;
        }
        cur.pop_back();
      }
      if (advanced) {
        next = 0;
        continue;
      }
    }
    while (true) {
      if (cur.empty()) return out;
      next = cur.back() + 1;
      cur.pop_back();
      if (next < B) break;
    }
  }
}

}  // namespace treedim
