#pragma once

#include <string>
#include <variant>
#include <vector>

#include "treedim/rat.hpp"

namespace treedim {

struct ExplicitSeq {
  std::vector<Rat> terms;
};

/// q_i = c + (-1)^i * d / (i + m)
struct AlternatingSeq {
  Rat c;
  Rat d;
  unsigned long m = 1;
};

/// q_i = target + delta0 * ratio^i
struct GeometricSeq {
  Rat target;
  Rat delta0;
  Rat ratio;
};

/// Two-scale oscillation around c:
///   even i:          c + shallow / (i + m)
///   i % 4 == 1:      c - deep / (i + m)
///   i % 4 == 3:      c - shallow / (i + m)
/// Deep and shallow dips interleave, so sliding-window minima are
/// non-monotone while the terms still converge to c.
struct SlowOscSeq {
  Rat c;
  Rat deep;
  Rat shallow;
  unsigned long m = 1;
};

using QSequence = std::variant<ExplicitSeq, AlternatingSeq, GeometricSeq, SlowOscSeq>;

/// Exact i-th term. Out-of-range indices of explicit lists and builtin terms
/// falling outside (0,1) raise Error.
Rat q_at(const QSequence& seq, std::size_t i);

struct SeqViolation {
  std::size_t index;
  std::string what;
};

struct ValidationReport {
  std::vector<SeqViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the first n terms: each in (0,1), consecutive terms distinct.
/// Violations are report entries, not exceptions.
ValidationReport validate_sequence(const QSequence& seq, std::size_t n);

/// min{q_i : from <= i <= to}. A finite stand-in for the liminf; callers pick
/// the window explicitly.
Rat liminf_window(const QSequence& seq, std::size_t from, std::size_t to);

}  // namespace treedim
