#include "treedim/gales.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "treedim/error.hpp"
#include "treedim/treefam.hpp"

namespace treedim {

namespace {

Int to_int(std::size_t n) { return Int(static_cast<unsigned long>(n)); }

std::string trim_word(const Word& w, unsigned base) {
  std::string s = format_word(w, base);
  if (s.size() > 48) s = s.substr(0, 48) + "...";
  return s.empty() ? "(empty)" : s;
}

}  // namespace

// ---------------------------------------------------------------------------
// PowerValue / V_F

Rat PowerValue::to_rat(unsigned base) const {
  if (zero) return Rat(0);
  if (!exponent.is_integer())
    throw Error("PowerValue with fractional exponent " + exponent.str() +
                " has no rational value");
  return rat_pow_int(Rat(Int(base)), exponent.num());
}

std::string PowerValue::str(unsigned base) const {
  if (zero) return "0";
  return std::to_string(base) + "^" + exponent.str_plain();
}

PowerValue vf_value(const ExponentFn& fn, WordView w) {
  const TreeFamily& fam = fn.family();
  if (to_int(w.size()) > fam.ell_last())
    throw Error("vf_value: word longer than the materialized depth");
  if (!member_pref(fam, w)) return PowerValue::zero_value();
  Int m = to_int(w.size());
  return PowerValue::power(Rat(m - fn.exponent(m)));
}

PowerValue vf_value(const TreeFamily& fam, WordView w) {
  ExponentFn fn(fam);
  return vf_value(fn, w);
}

// ---------------------------------------------------------------------------
// Martingale identity

namespace {

// Sum over m <= depth of |X|^e(m); nullopt once it exceeds the budget.
std::optional<Int> planned_on_tree_nodes(const ExponentFn& fn, const Int& depth,
                                         const Int& budget) {
  if (depth >= budget) return std::nullopt;
  Int total = 0;
  for (Int m = 0; m <= depth; ++m) {
    Int e = fn.exponent(m);
    if (e > 62) return std::nullopt;
    total += ipow(Int(fn.family().alphabet_size), e.get_ui());
    if (total > budget) return std::nullopt;
  }
  return total;
}

// sum_x V(wx) == |X| * V(w) at one node, both sides as integers.
void check_identity_at(const ExponentFn& fn, const Word& w,
                       std::vector<MartingaleViolation>& out) {
  const TreeFamily& fam = fn.family();
  const unsigned B = fam.alphabet_size;
  const Int m = to_int(w.size());
  Int em = fn.exponent(m);
  Int em1 = fn.exponent(m + 1);

  Word probe = w;
  probe.push_back(0);
  unsigned long on_children = 0;
  for (Letter x = 0; x < B; ++x) {
    probe.back() = x;
    if (member_pref(fam, probe)) ++on_children;
  }

  // V(w) = B^(m - e(m)), on-tree children all carry B^(m+1 - e(m+1)).
  Int lhs = Int(on_children) * ipow(Int(B), Int(m + 1 - em1));
  Int rhs = ipow(Int(B), Int(m + 1 - em));
  if (lhs != rhs)
    out.push_back({w, "children sum " + lhs.get_str() + " != " + rhs.get_str() +
                          " * 1 at '" + trim_word(w, B) + "'"});
}

}  // namespace

MartingaleReport martingale_defect(const ExponentFn& fn, const Int& depth,
                                   const MartingaleCheckOptions& opt) {
  const TreeFamily& fam = fn.family();
  if (sgn(depth) < 0) throw Error("martingale_defect: negative depth");
  if (depth >= fam.ell_last())
    throw Error("martingale_defect: depth must stay below ell_last = " +
                fam.ell_last().get_str() + " so the children are materialized");

  MartingaleReport report;
  auto planned = planned_on_tree_nodes(fn, depth, opt.node_budget);

  if (planned) {
    report.exhaustive = true;
    report.depth_walked = depth;
    const unsigned long target = depth.get_ui();
    // Preorder walk of the on-tree prefixes.
    Word cur;
    Letter next = 0;
    const Letter B = static_cast<Letter>(fam.alphabet_size);
    check_identity_at(fn, cur, report.violations);
    ++report.nodes_checked;
    while (true) {
      if (cur.size() < target) {
        bool advanced = false;
        for (Letter x = next; x < B; ++x) {
          cur.push_back(x);
          if (member_pref(fam, cur)) {
            check_identity_at(fn, cur, report.violations);
            ++report.nodes_checked;
            advanced = true;
            break;
          }
          cur.pop_back();
        }
        if (advanced) {
          next = 0;
          continue;
        }
      } else if (cur.size() == target && target > 0) {
        // leaf of the walk; fall through to backtracking
      }
      while (true) {
        if (cur.empty()) return report;
        next = cur.back() + 1;
        cur.pop_back();
        if (next < B) break;
      }
    }
  }

  // Too many nodes: one lexicographic representative per length plus seeded
  // random descents. Same-length on-tree nodes are interchangeable here by
  // the balance property, which the oracle verifies exhaustively at small
  // scale.
  report.exhaustive = false;
  report.depth_walked = std::min(depth, Int(100000));  // walk-length budget
  std::mt19937_64 rng(opt.seed);
  const unsigned walks = 1 + opt.samples_per_length;
  const unsigned long target = report.depth_walked.get_ui();
  for (unsigned s = 0; s < walks; ++s) {
    Word cur;
    for (unsigned long m = 0;; ++m) {
      check_identity_at(fn, cur, report.violations);
      ++report.nodes_checked;
      if (m == target) break;
      std::vector<Letter> options;
      Word probe = cur;
      probe.push_back(0);
      for (Letter x = 0; x < fam.alphabet_size; ++x) {
        probe.back() = x;
        if (member_pref(fam, probe)) options.push_back(x);
      }
      if (options.empty()) {
        report.violations.push_back({cur, "on-tree node with no extension at '" +
                                              trim_word(cur, fam.alphabet_size) + "'"});
        break;
      }
      Letter pick = s == 0 ? options.front()
                           : options[rng() % options.size()];
      cur.push_back(pick);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// GaleValue

GaleValue GaleValue::from_rat(const Rat& v) {
  if (v.sign() < 0) throw Error("gale values must be nonnegative");
  return GaleValue(v, Rat(0));
}

GaleValue GaleValue::make(const Rat& coeff, const Rat& exponent, unsigned base) {
  if (coeff.sign() < 0) throw Error("gale values must be nonnegative");
  if (coeff.is_zero()) return zero();
  Int whole = exponent.floor();
  Rat frac = exponent - Rat(whole);
  return GaleValue(coeff * rat_pow_int(Rat(Int(base)), whole), frac);
}

GaleValue GaleValue::from_power(const PowerValue& pv, unsigned base) {
  if (pv.zero) return zero();
  return make(Rat(1), pv.exponent, base);
}

Rat GaleValue::rat_value() const {
  if (!is_rational())
    throw Error("gale value " + coeff_.str() + "*B^" + exp_.str() + " is not rational");
  return coeff_;
}

std::optional<Rat> GaleValue::log_value(unsigned base) const {
  if (is_zero()) return std::nullopt;
  auto lg = log_in_base(base, coeff_);
  if (!lg) return std::nullopt;
  return *lg + exp_;
}

GaleValue GaleValue::scaled_by_power(const Rat& delta, unsigned base) const {
  if (is_zero()) return zero();
  return make(coeff_, exp_ + delta, base);
}

GaleValue GaleValue::divided_by(const GaleValue& o, unsigned base) const {
  if (o.is_zero()) throw Error("gale value division by zero");
  if (is_zero()) return zero();
  return make(coeff_ / o.coeff_, exp_ - o.exp_, base);
}

std::string GaleValue::str(unsigned base) const {
  (void)base;
  if (is_rational()) return coeff_.str();
  return coeff_.str() + "*B^" + exp_.str();
}

GaleValue GaleValue::parse(const std::string& text, unsigned base) {
  auto pos = text.find("*B^");
  if (pos == std::string::npos) return from_rat(Rat::parse(text));
  Rat coeff = Rat::parse(text.substr(0, pos));
  Rat exp = Rat::parse(text.substr(pos + 3));
  return make(coeff, exp, base);
}

namespace {

// [m, m+1]/2^P bracket of base^(p/q) with p/q in [0,1), via an integer root.
std::pair<Rat, Rat> bracket_power(const Rat& frac, unsigned base, unsigned long prec) {
  if (frac.is_zero()) return {Rat(1), Rat(1)};
  if (!fits_ulong(frac.den()) || frac.den() > 4096)
    throw Error("gale exponent denominator too large for interval refinement");
  unsigned long q = frac.den().get_ui();
  unsigned long p = frac.num().get_ui();
  // floor( (B^p * 2^(P*q))^(1/q) )
  Int t = ipow(Int(base), p) * ipow(Int(2), prec * q);
  Int root;
  mpz_root(root.get_mpz_t(), t.get_mpz_t(), q);
  Int scale = ipow(Int(2), prec);
  return {Rat(root, scale), Rat(root + 1, scale)};
}

std::pair<Rat, Rat> bracket_value(const GaleValue& v, unsigned base, unsigned long prec) {
  if (v.is_zero()) return {Rat(0), Rat(0)};
  auto [lo, hi] = bracket_power(v.frac_exponent(), base, prec);
  return {v.coeff() * lo, v.coeff() * hi};
}

// Exact-endpoint bracket of log_base(c) of width <= 2^-bits for c > 0.
// Digit-recurrence on dyadic intervals; pure powers short-circuit exactly.
std::pair<Rat, Rat> log_bracket(const Rat& c, unsigned base, unsigned bits) {
  if (c.sign() <= 0) throw Error("log_bracket: nonpositive argument");
  if (auto exact = log_in_base(base, c)) return {*exact, *exact};

  // Normalize c = B^n * c0 with c0 in [1, B).
  Int n = 0;
  Rat c0 = c;
  const Rat rb{Int(base)};
  while (c0 >= rb) {
    c0 /= rb;
    n += 1;
  }
  while (c0 < Rat(1)) {
    c0 *= rb;
    n -= 1;
  }

  for (unsigned long prec = bits + 48; prec <= 16384; prec *= 2) {
    const Int one = ipow(Int(2), prec);
    const Int cap = one * base;
    // Dyadic mantissas: value ~= m / 2^prec.
    Int lo = (c0.num() * one) / c0.den();
    Int hi = lo + 1;
    Rat acc(0);
    Rat step(Int(1), Int(2));
    bool stuck = false;
    for (unsigned b = 0; b < bits + 1; ++b) {
      lo = (lo * lo) / one;         // round down
      hi = ceil_div(hi * hi, one);  // round up
      if (lo >= cap) {
        acc += step;
        lo /= base;
        hi = ceil_div(hi, Int(base));
      } else if (hi <= cap) {
        // digit 0: nothing to do
      } else {
        stuck = true;
        break;
      }
      step /= Rat(2);
    }
    if (!stuck) {
      Rat lo_log = Rat(n) + acc;
      return {lo_log, lo_log + step * Rat(2)};
    }
  }
  throw Error("log_bracket: failed to separate digits at maximal precision");
}

}  // namespace

int compare(const GaleValue& a, const GaleValue& b, unsigned base) {
  if (a.is_zero() && b.is_zero()) return 0;
  if (a.is_zero()) return -1;
  if (b.is_zero()) return 1;
  // a >= b iff log_B(a.coeff/b.coeff) >= b.exp - a.exp. The left side is
  // either exactly rational (pure power ratio) or irrational, in which case
  // a bracket of enough bits separates it from the rational right side.
  Rat c = a.coeff() / b.coeff();
  Rat delta = b.frac_exponent() - a.frac_exponent();
  if (auto exact = log_in_base(base, c)) {
    if (*exact == delta) return 0;
    return *exact < delta ? -1 : 1;
  }
  for (unsigned bits = 32; bits <= 16384; bits *= 2) {
    auto [lo, hi] = log_bracket(c, base, bits);
    if (lo > delta) return 1;
    if (hi < delta) return -1;
  }
  throw Error("gale value comparison undecided at maximal precision");
}

// ---------------------------------------------------------------------------
// GaleSum

void GaleSum::add(const GaleValue& v) {
  if (v.is_zero()) return;
  classes_[v.frac_exponent()] += v.coeff();
}

std::optional<GaleValue> GaleSum::as_single() const {
  if (classes_.empty()) return GaleValue::zero();
  if (classes_.size() > 1) return std::nullopt;
  const auto& [exp, coeff] = *classes_.begin();
  return GaleValue(coeff, exp);
}

std::pair<Rat, Rat> GaleSum::bracket(unsigned base, unsigned long prec) const {
  Rat lo(0), hi(0);
  for (const auto& [exp, coeff] : classes_) {
    auto [l, h] = bracket_power(exp, base, prec);
    lo += coeff * l;
    hi += coeff * h;
  }
  return {lo, hi};
}

std::optional<int> GaleSum::compare_with(const GaleValue& target, unsigned base,
                                         unsigned max_bits) const {
  if (classes_.empty()) return target.is_zero() ? 0 : -1;
  if (classes_.size() == 1) {
    const auto& [exp, coeff] = *classes_.begin();
    return compare(GaleValue(coeff, exp), target, base);
  }
  if (target.is_zero()) return 1;
  for (unsigned long prec = 32; prec <= max_bits; prec *= 2) {
    auto [sum_lo, sum_hi] = bracket(base, prec);
    auto [tlo, thi] = bracket_value(target, base, prec);
    if (sum_lo > thi) return 1;
    if (sum_hi < tlo) return -1;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tables

GaleTable gale_from_martingale(const std::function<PowerValue(const Word&)>& V,
                               const Rat& sigma, const std::vector<Word>& domain,
                               unsigned alphabet_size) {
  if (sigma < Rat(0) || sigma > Rat(1))
    throw Error("gale_from_martingale: sigma must lie in [0,1]");
  std::set<Word> seen(domain.begin(), domain.end());
  for (const auto& w : domain) {
    if (w.empty()) continue;
    Word parent(w.begin(), w.end() - 1);
    if (!seen.count(parent))
      throw Error("gale_from_martingale: domain is not prefix-closed at '" +
                  trim_word(w, alphabet_size) + "'");
  }

  GaleTable table;
  table.sigma = sigma;
  table.alphabet_size = alphabet_size;
  const Rat scale = Rat(1) - sigma;
  for (const auto& w : domain) {
    PowerValue pv = V(w);
    if (pv.zero) {
      table.values.emplace(w, GaleValue::zero());
      continue;
    }
    Rat exponent = pv.exponent - scale * Rat(to_int(w.size()));
    table.values.emplace(w, GaleValue::make(Rat(1), exponent, alphabet_size));
  }
  return table;
}

GaleTable gale_table_from_family(const ExponentFn& fn, const Rat& sigma,
                                 const Int& depth, const Int& node_budget) {
  const TreeFamily& fam = fn.family();
  if (depth > fam.ell_last()) throw Error("gale table depth beyond materialized levels");
  auto planned = planned_on_tree_nodes(fn, depth, node_budget);
  if (!planned)
    throw Error("gale table over depth " + depth.get_str() + " exceeds the node budget");

  std::vector<Word> domain;
  domain.emplace_back();
  Word cur;
  Letter next = 0;
  const Letter B = static_cast<Letter>(fam.alphabet_size);
  const unsigned long target = depth.get_ui();
  while (true) {
    if (cur.size() < target) {
      bool advanced = false;
      for (Letter x = next; x < B; ++x) {
        cur.push_back(x);
        if (member_pref(fam, cur)) {
          domain.push_back(cur);
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
      if (cur.empty()) {
        return gale_from_martingale(
            [&fn](const Word& w) { return vf_value(fn, w); }, sigma, domain,
            fam.alphabet_size);
      }
      next = cur.back() + 1;
      cur.pop_back();
      if (next < B) break;
    }
  }
}

// ---------------------------------------------------------------------------
// Supergale condition and cut points

SupergaleReport supergale_check(const GaleTable& table) {
  if (!table.sigma) throw Error("supergale_check: table carries no sigma");
  const unsigned B = table.alphabet_size;
  SupergaleReport report;

  for (const auto& [w, dw] : table.values) {
    GaleSum sum;
    unsigned present = 0;
    Word child = w;
    child.push_back(0);
    for (Letter x = 0; x < B; ++x) {
      child.back() = x;
      auto it = table.values.find(child);
      if (it == table.values.end()) continue;
      ++present;
      sum.add(it->second);
    }
    if (present == 0) continue;  // leaf
    if (present < B) report.defaulted_children_at.push_back(w);

    GaleValue target = dw.scaled_by_power(*table.sigma, B);
    auto cmp = sum.compare_with(target, B);
    if (!cmp) {
      report.violations.push_back({w, "comparison undecided at refinement limit",
                                   std::nullopt, true});
      continue;
    }
    if (*cmp > 0) {
      GaleViolation v;
      v.where = w;
      auto single = sum.as_single();
      if (target.is_rational() && single && single->is_rational())
        v.slack = target.rat_value() - single->rat_value();
      v.detail = "B^sigma*d(w) = " + target.str(B) + " < children sum at '" +
                 trim_word(w, B) + "'";
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

namespace {

struct Constraint {
  GaleValue d;
  GaleSum sum;
};

}  // namespace

std::string CutPointResult::str() const {
  switch (kind) {
    case Kind::exact: return "exact " + value.str();
    case Kind::bracket: return "bracket [" + lo.str() + ", " + hi.str() + "]";
    case Kind::unbounded_below: return "unbounded-below";
    case Kind::infinite: return "infinite";
  }
  return "?";
}

CutPointResult cut_point(const GaleTable& table, unsigned precision_bits) {
  const unsigned B = table.alphabet_size;
  if (table.values.empty()) throw Error("cut_point: empty table");

  std::vector<Constraint> constraints;
  bool positive_nonleaf = false;
  for (const auto& [w, dw] : table.values) {
    GaleSum sum;
    unsigned present = 0;
    Word child = w;
    child.push_back(0);
    for (Letter x = 0; x < B; ++x) {
      child.back() = x;
      auto it = table.values.find(child);
      if (it == table.values.end()) continue;
      ++present;
      sum.add(it->second);
    }
    if (present == 0) continue;
    if (dw.is_zero()) {
      if (!sum.is_zero()) return {CutPointResult::Kind::infinite, Rat(0), Rat(0), Rat(0)};
      continue;
    }
    positive_nonleaf = true;
    if (sum.is_zero()) continue;  // ratio 0, no constraint on sigma
    constraints.push_back({dw, std::move(sum)});
  }
  if (!positive_nonleaf)
    throw Error("cut_point: no non-leaf with a positive value");
  if (constraints.empty())
    return {CutPointResult::Kind::unbounded_below, Rat(0), Rat(0), Rat(0)};

  // Exact path: every child sum collapses to a single power class.
  bool all_single = true;
  GaleValue max_ratio;
  bool have_max = false;
  for (const auto& c : constraints) {
    auto single = c.sum.as_single();
    if (!single) {
      all_single = false;
      break;
    }
    GaleValue ratio = single->divided_by(c.d, B);
    if (!have_max || compare(ratio, max_ratio, B) > 0) {
      max_ratio = ratio;
      have_max = true;
    }
  }

  if (all_single) {
    if (auto lg = max_ratio.log_value(B))
      return {CutPointResult::Kind::exact, *lg, Rat(0), Rat(0)};
    auto [lo, hi] = log_bracket(max_ratio.coeff(), B, precision_bits + 1);
    Rat f = max_ratio.frac_exponent();
    return {CutPointResult::Kind::bracket, Rat(0), lo + f, hi + f};
  }

  // Mixed-exponent sums: interval evaluation of every node ratio, then the
  // log of the max. Not reachable from tables built by this library.
  const Rat width_goal = rat_pow_int(Rat(2), Int(-static_cast<long>(precision_bits)));
  for (unsigned long prec = 64; prec <= 16384; prec *= 2) {
    Rat glo, ghi;
    bool first = true;
    for (const auto& c : constraints) {
      auto [slo, shi] = c.sum.bracket(B, prec);
      auto [dlo, dhi] = bracket_value(c.d, B, prec);
      Rat rlo = slo / dhi;
      Rat rhi = shi / dlo;
      if (first) {
        glo = rlo;
        ghi = rhi;
        first = false;
      } else {
        glo = std::max(glo, rlo);
        ghi = std::max(ghi, rhi);
      }
    }
    if (glo.sign() <= 0) continue;
    Rat lo_log = log_bracket(glo, B, precision_bits + 2).first;
    Rat hi_log = log_bracket(ghi, B, precision_bits + 2).second;
    if (hi_log - lo_log <= width_goal)
      return {CutPointResult::Kind::bracket, Rat(0), lo_log, hi_log};
  }
  throw Error("cut_point: undecidable at configured precision");
}

// ---------------------------------------------------------------------------
// Witness computations

std::vector<WitnessRecord> witness_exponents(const ExponentFn& fn, const Rat& sigma,
                                             const Rat& alpha_hat,
                                             std::size_t from_level,
                                             std::size_t to_level) {
  const TreeFamily& fam = fn.family();
  if (!(sigma > Rat(0) && sigma < Rat(1) && alpha_hat > Rat(0) && alpha_hat < Rat(1)))
    throw Error("witness_exponents: sigma and alpha_hat must lie in (0,1)");
  if (from_level > to_level || to_level >= fam.level_count())
    throw Error("witness_exponents: level range out of bounds");

  std::vector<WitnessRecord> out;
  for (std::size_t i = from_level; i <= to_level; ++i) {
    WitnessRecord rec;
    rec.level = i;
    rec.q = fam.level_q(i);
    rec.ell = fam.levels[i].ell;
    Rat ell_rat{rec.ell};
    rec.thm2_exp = (sigma - rec.q) * ell_rat;
    rec.borderline_exp = alpha_hat * ell_rat - Rat(fn.exponent(rec.ell));
    Int i_sq = to_int(i) * to_int(i);
    rec.ell_ge_i2 = rec.ell >= i_sq;
    rec.scan_flag = i >= 1 && (alpha_hat - rec.q) > Rat(Int(1), to_int(i));
    rec.bound_ok = true;
    if (rec.scan_flag && rec.ell_ge_i2)
      rec.bound_ok = rec.borderline_exp >= ell_rat / Rat(to_int(i));
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace treedim
