#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treedim/structure.hpp"
#include "treedim/words.hpp"

namespace treedim {

/// Zero or |X|^exponent. The martingale values arising from the construction
/// are always of this shape, so keeping them symbolic avoids any irrational
/// arithmetic.
struct PowerValue {
  bool zero = true;
  Rat exponent;

  static PowerValue zero_value() { return PowerValue{}; }
  static PowerValue power(Rat e) { return PowerValue{false, std::move(e)}; }

  bool operator==(const PowerValue& o) const {
    return zero == o.zero && (zero || exponent == o.exponent);
  }

  /// Exact rational value; requires an integral exponent (or zero).
  Rat to_rat(unsigned base) const;
  std::string str(unsigned base) const;
};

/// V_F(w): 0 off the tree, |X|^(|w| - e(|w|)) on it.
PowerValue vf_value(const ExponentFn& fn, WordView w);
/// Convenience overload constructing a transient ExponentFn.
PowerValue vf_value(const TreeFamily& fam, WordView w);

struct MartingaleCheckOptions {
  Int node_budget = 1000000;
  unsigned samples_per_length = 32;
  std::uint64_t seed = 0x5eedf00dULL;
};

struct MartingaleViolation {
  Word where;
  std::string what;
};

struct MartingaleReport {
  bool exhaustive = true;
  Int nodes_checked = 0;
  Int depth_walked = 0;
  std::vector<MartingaleViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Verifies sum_x V_F(wx) = |X| * V_F(w) over the on-tree prefixes with
/// |w| <= depth (off-tree children enter the sums as zeros). Exhaustive while
/// the planned on-tree node count fits the budget; beyond that one
/// lexicographic representative plus seeded random descents per length.
/// Requires depth < ell_last so the children are materialized.
MartingaleReport martingale_defect(const ExponentFn& fn, const Int& depth,
                                   const MartingaleCheckOptions& opt = {});

/// coeff * |X|^exponent with rational coeff >= 0; after normalization the
/// exponent lies in [0,1), so the value is rational iff the exponent is 0.
class GaleValue {
 public:
  GaleValue() : coeff_(0), exp_(0) {}

  static GaleValue zero() { return GaleValue(); }
  static GaleValue from_rat(const Rat& v);
  static GaleValue make(const Rat& coeff, const Rat& exponent, unsigned base);
  static GaleValue from_power(const PowerValue& pv, unsigned base);

  bool is_zero() const { return coeff_.is_zero(); }
  bool is_rational() const { return exp_.is_zero(); }
  const Rat& coeff() const { return coeff_; }
  const Rat& frac_exponent() const { return exp_; }

  Rat rat_value() const;
  /// Full |X|-logarithm, when the value is a pure power of the base.
  std::optional<Rat> log_value(unsigned base) const;

  /// This value times base^delta.
  GaleValue scaled_by_power(const Rat& delta, unsigned base) const;
  GaleValue divided_by(const GaleValue& o, unsigned base) const;

  std::string str(unsigned base) const;
  static GaleValue parse(const std::string& text, unsigned base);

  bool equals(const GaleValue& o) const {
    return coeff_ == o.coeff_ && exp_ == o.exp_;
  }

 private:
  friend class GaleSum;
  GaleValue(Rat coeff, Rat exp) : coeff_(std::move(coeff)), exp_(std::move(exp)) {}

  Rat coeff_;
  Rat exp_;
};

/// Exact three-way comparison (-1, 0, 1): single values always compare
/// exactly via cross-multiplied integer powers.
int compare(const GaleValue& a, const GaleValue& b, unsigned base);

/// Sum of gale values, grouped by exponent class mod 1. Sums with a single
/// class compare exactly; genuinely mixed sums fall back to rational
/// interval refinement and may come back undecided.
class GaleSum {
 public:
  void add(const GaleValue& v);
  bool is_zero() const { return classes_.empty(); }
  std::size_t class_count() const { return classes_.size(); }
  std::optional<GaleValue> as_single() const;

  /// sign(sum - target), or nullopt if undecided after `max_bits` refinement.
  std::optional<int> compare_with(const GaleValue& target, unsigned base,
                                  unsigned max_bits = 256) const;

  /// Exact rational enclosure of the sum at the given dyadic precision.
  std::pair<Rat, Rat> bracket(unsigned base, unsigned long prec) const;

 private:
  std::map<Rat, Rat> classes_;  // fractional exponent -> coefficient sum
};

/// Finite tabulated strategy: optional parameter sigma plus word -> value on
/// a prefix-closed domain.
struct GaleTable {
  std::optional<Rat> sigma;
  unsigned alphabet_size = 2;
  std::map<Word, GaleValue> values;
};

/// d(w) = V(w) / |X|^((1-sigma)*|w|) tabulated over `domain` (must be
/// prefix-closed). Entries with integral exponents come out rational, the
/// rest stay symbolic powers.
GaleTable gale_from_martingale(const std::function<PowerValue(const Word&)>& V,
                               const Rat& sigma, const std::vector<Word>& domain,
                               unsigned alphabet_size);

/// The table of the sigma-gale obtained from V_F over all on-tree words of
/// length <= depth.
GaleTable gale_table_from_family(const ExponentFn& fn, const Rat& sigma,
                                 const Int& depth, const Int& node_budget = 1000000);

struct GaleViolation {
  Word where;
  std::string detail;
  std::optional<Rat> slack;  // exact when everything in sight is rational
  bool undecided = false;
};

struct SupergaleReport {
  std::vector<GaleViolation> violations;
  std::vector<Word> defaulted_children_at;  // nodes with absent children taken as 0
  bool ok() const { return violations.empty(); }
};

/// Checks |X|^sigma * d(w) >= sum_x d(wx) at every non-leaf of the table.
SupergaleReport supergale_check(const GaleTable& table);

struct CutPointResult {
  enum class Kind { exact, bracket, unbounded_below, infinite };
  Kind kind = Kind::exact;
  Rat value;  // exact
  Rat lo, hi; // bracket endpoints, hi - lo <= 2^-precision
  std::string str() const;
};

/// chi_d = max over non-leaves with d(w) > 0 of log_|X|(sum_x d(wx) / d(w)).
/// Exact when that ratio is a rational power of |X|, otherwise a bisection
/// bracket of width <= 2^-precision_bits. Nodes with d(w) = 0 but positive
/// child mass force the infinite sentinel; tables whose non-leaves all have
/// zero child mass yield unbounded_below.
CutPointResult cut_point(const GaleTable& table, unsigned precision_bits = 32);

struct WitnessRecord {
  std::size_t level;
  Rat q;
  Int ell;
  Rat thm2_exp;        // (sigma - q_i) * ell_i
  Rat borderline_exp;  // alpha_hat * ell_i - e(ell_i)
  bool scan_flag;      // alpha_hat - q_i > 1/i (false at level 0)
  bool ell_ge_i2;
  bool bound_ok;       // flagged && ell >= i^2 => borderline_exp >= ell/i
};

/// Per-level witness computations for the dimension arguments, all exact.
std::vector<WitnessRecord> witness_exponents(const ExponentFn& fn, const Rat& sigma,
                                             const Rat& alpha_hat,
                                             std::size_t from_level,
                                             std::size_t to_level);

}  // namespace treedim
