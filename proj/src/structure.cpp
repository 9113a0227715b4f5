#include "treedim/structure.hpp"

#include <algorithm>

#include "treedim/error.hpp"

namespace treedim {

namespace {

constexpr std::size_t kCacheLimit = 100000;
const long kExhaustiveSegment = 100000;
const int kInteriorSamples = 1000;
const long kMonotoneBudget = 10000000;

}  // namespace

ExponentFn::ExponentFn(TreeFamily fam) : fam_(std::move(fam)) {
  auto issues = validate_family(fam_);
  if (!issues.empty())
    throw Error("ExponentFn over ill-formed family: " + issues.front().what);
}

Int ExponentFn::exponent(const Int& ell) const {
  if (sgn(ell) < 0) throw Error("exponent: negative length");
  if (ell > fam_.ell_last())
    throw Error("exponent: ell = " + ell.get_str() +
                " beyond materialized depth (ell_last = " +
                fam_.ell_last().get_str() + ")");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(ell);
    if (it != cache_.end()) return it->second;
  }
  Int value = compute(ell);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (cache_.size() < kCacheLimit) cache_.emplace(ell, value);
  }
  return value;
}

Int ExponentFn::compute(const Int& ell) const {
  if (sgn(ell) == 0) return 0;

  // Base pattern below the first block length.
  const auto& l0 = fam_.levels.front();
  if (ell < l0.ell) {
    if (fam_.t0_variant == T0Variant::suffix_pad) return std::min(ell, l0.k);
    Int free_part = ell - (l0.ell - l0.k);
    return std::max(Int(0), free_part);
  }

  // Largest materialized level with ell_i <= ell.
  std::size_t idx = 0;
  for (std::size_t i = fam_.level_count(); i-- > 0;) {
    if (fam_.levels[i].ell <= ell) {
      idx = i;
      break;
    }
  }
  const auto& lv = fam_.levels[idx];
  if (ell == lv.ell) return lv.k;

  // ell < ell_last guarantees a transition out of level idx.
  const Transition& t = *lv.next;
  const Int body = t.r * lv.ell;
  if (ell <= body) {
    Int j, tail;
    mpz_fdiv_qr(j.get_mpz_t(), tail.get_mpz_t(), ell.get_mpz_t(), lv.ell.get_mpz_t());
    return j * lv.k + exponent(tail);
  }
  Int tail = ell - body;
  return t.r * lv.k + (t.appendix == AppendixKind::full ? tail : Int(0));
}

Rat ExponentFn::density(const Int& ell) const {
  if (ell < 1) throw Error("density: requires ell >= 1");
  return Rat(exponent(ell), ell);
}

namespace {

void scan_segment(const ExponentFn& fn, const BoundSegment& seg,
                  std::vector<BoundViolation>& out) {
  auto probe = [&](const Int& ell) {
    Rat d = fn.density(ell);
    if (d < seg.lower) out.push_back({ell, d, seg.lower, true});
    if (d > seg.upper) out.push_back({ell, d, seg.upper, false});
  };
  Int width = seg.hi - seg.lo;
  if (width <= kExhaustiveSegment) {
    for (Int ell = seg.lo; ell <= seg.hi; ++ell) probe(ell);
    return;
  }
  probe(seg.lo);
  Int prev = seg.lo;
  for (int s = 1; s < kInteriorSamples; ++s) {
    Int ell = seg.lo + (width * s) / kInteriorSamples;
    if (ell == prev || ell == seg.hi) continue;
    probe(ell);
    prev = ell;
  }
  probe(seg.hi);
}

}  // namespace

DensityCertificate check_bounds(const ExponentFn& fn, std::size_t i) {
  const TreeFamily& fam = fn.family();
  if (i + 1 >= fam.level_count())
    throw Error("check_bounds: level " + std::to_string(i + 1) + " not materialized");

  const auto& lv = fam.levels[i];
  const Transition& t = *lv.next;
  const Rat qi = fam.level_q(i);
  const Rat qn = fam.level_q(i + 1);
  const Int body = t.r * lv.ell;

  DensityCertificate cert;
  cert.level = i;

  BoundSegment copy_seg;
  copy_seg.lo = lv.ell;
  copy_seg.hi = body;
  copy_seg.regime = BoundRegime::copy;
  if (i == 0) {
    // Bounds read off the T_0 pattern.
    if (fam.t0_variant == T0Variant::suffix_pad) {
      copy_seg.lower = qi;
      copy_seg.upper = std::min(Rat(1), qi + qi);
    } else {
      copy_seg.lower = qi / Rat(2);
      copy_seg.upper = qi;
    }
  } else {
    const Rat qp = fam.level_q(i - 1);
    const Rat shrink(fam.levels[i - 1].ell, lv.ell);
    copy_seg.lower = (Rat(1) - shrink) * std::min(qp, qi);
    copy_seg.upper = std::min(Rat(1), std::max(qp, qi) + shrink);
  }
  cert.segments.push_back(copy_seg);

  BoundSegment app_seg;
  app_seg.lo = body;
  app_seg.hi = fam.levels[i + 1].ell;
  app_seg.regime = BoundRegime::appendix;
  app_seg.lower = std::min(qi, qn);
  app_seg.upper = std::max(qi, qn);
  cert.segments.push_back(app_seg);

  for (const auto& seg : cert.segments) scan_segment(fn, seg, cert.violations);
  return cert;
}

DimEstimate dim_estimate(const ExponentFn& fn, const Int& up_to) {
  const TreeFamily& fam = fn.family();
  if (fam.level_count() < 2 || up_to < fam.levels[1].ell)
    throw Error("dim_estimate: up_to must reach at least ell_1");
  if (up_to > fam.ell_last())
    throw Error("dim_estimate: up_to beyond materialized depth");

  DimEstimate est;
  bool first = true;
  std::size_t covered = 0;
  for (std::size_t i = 0; i < fam.level_count() && fam.levels[i].ell <= up_to; ++i) {
    Rat d = fn.density(fam.levels[i].ell);
    est.block_densities.push_back({i, fam.levels[i].ell, d});
    est.empirical_min_density = first ? d : std::min(est.empirical_min_density, d);
    first = false;
    covered = i;
  }

  bool first_bound = true;
  for (std::size_t i = 1; i <= covered; ++i) {
    Rat mn = std::min(fam.level_q(i - 1), fam.level_q(i));
    if (i + 1 < fam.level_count()) mn = std::min(mn, fam.level_q(i + 1));
    Rat bound = (Rat(1) - Rat(fam.levels[i - 1].ell, fam.levels[i].ell)) * mn;
    est.certified_lower = first_bound ? bound : std::min(est.certified_lower, bound);
    first_bound = false;
  }
  return est;
}

MonotoneReport monotone_check(const ExponentFn& fn, Direction direction,
                              const Rat& alpha_hat, const Int& up_to) {
  const TreeFamily& fam = fn.family();
  const bool want_suffix = direction == Direction::decreasing;
  if ((fam.t0_variant == T0Variant::suffix_pad) != want_suffix)
    throw Error("monotone_check: T_0 variant does not match the direction "
                "(decreasing needs suffix-pad, increasing prefix-pad)");
  for (std::size_t i = 0; i + 1 < fam.level_count(); ++i) {
    Rat a = fam.level_q(i), b = fam.level_q(i + 1);
    if ((direction == Direction::decreasing && !(a > b)) ||
        (direction == Direction::increasing && !(a < b)))
      throw Error("monotone_check: level densities not monotone in the stated direction");
  }
  if (up_to > fam.ell_last()) throw Error("monotone_check: up_to beyond materialized depth");
  if (up_to > kMonotoneBudget)
    throw Error("monotone_check: exhaustive scan over " + up_to.get_str() +
                " lengths exceeds the budget");

  MonotoneReport report;
  report.checked_up_to = up_to;
  for (Int ell = 1; ell <= up_to; ++ell) {
    Int e = fn.exponent(ell);
    // e >= alpha*ell resp. e <= alpha*ell, cross-multiplied.
    bool ok = direction == Direction::decreasing
                  ? e * alpha_hat.den() >= alpha_hat.num() * ell
                  : e * alpha_hat.den() <= alpha_hat.num() * ell;
    if (!ok) report.violating_ells.push_back(ell);
  }
  return report;
}

}  // namespace treedim
