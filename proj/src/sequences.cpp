#include "treedim/sequences.hpp"

#include <algorithm>

#include "treedim/error.hpp"

namespace treedim {

namespace {

Rat raw_term(const QSequence& seq, std::size_t i) {
  if (const auto* ex = std::get_if<ExplicitSeq>(&seq)) {
    if (i >= ex->terms.size())
      throw Error("index " + std::to_string(i) + " out of range for explicit sequence of " +
                  std::to_string(ex->terms.size()) + " terms");
    return ex->terms[i];
  }
  if (const auto* alt = std::get_if<AlternatingSeq>(&seq)) {
    Rat delta = alt->d / Rat(Int(i + alt->m));
    return (i % 2 == 0) ? alt->c + delta : alt->c - delta;
  }
  if (const auto* geo = std::get_if<GeometricSeq>(&seq)) {
    return geo->target + geo->delta0 * rat_pow(geo->ratio, i);
  }
  const auto& osc = std::get<SlowOscSeq>(seq);
  Rat denom(Int(i + osc.m));
  if (i % 2 == 0) return osc.c + osc.shallow / denom;
  return (i % 4 == 1) ? osc.c - osc.deep / denom : osc.c - osc.shallow / denom;
}

bool in_unit_interval(const Rat& q) { return q > Rat(0) && q < Rat(1); }

}  // namespace

Rat q_at(const QSequence& seq, std::size_t i) {
  Rat q = raw_term(seq, i);
  if (!std::holds_alternative<ExplicitSeq>(seq) && !in_unit_interval(q))
    throw Error("builtin family produced q_" + std::to_string(i) + " = " + q.str() +
                " outside (0,1)");
  return q;
}

ValidationReport validate_sequence(const QSequence& seq, std::size_t n) {
  ValidationReport report;
  if (n == 0) throw Error("validate_sequence requires n >= 1");
  for (std::size_t i = 0; i < n; ++i) {
    Rat q = raw_term(seq, i);
    if (!in_unit_interval(q))
      report.violations.push_back({i, "term " + q.str() + " outside (0,1)"});
    if (i + 1 < n && q == raw_term(seq, i + 1))
      report.violations.push_back({i + 1, "consecutive terms equal (" + q.str() + ")"});
  }
  return report;
}

Rat liminf_window(const QSequence& seq, std::size_t from, std::size_t to) {
  if (from > to) throw Error("liminf_window: empty window");
  Rat best = q_at(seq, from);
  for (std::size_t i = from + 1; i <= to; ++i) best = std::min(best, q_at(seq, i));
  return best;
}

}  // namespace treedim
