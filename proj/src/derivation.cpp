#include "treedim/derivation.hpp"

#include <algorithm>

#include "treedim/error.hpp"

namespace treedim {

Int GrowthSpec::eval(std::size_t i) const {
  Int idx(static_cast<unsigned long>(i));
  Int raw;
  switch (kind) {
    case GrowthKind::constant: raw = coeff; break;
    case GrowthKind::linear: raw = coeff * idx; break;
    case GrowthKind::quadratic: raw = coeff * idx * idx; break;
    case GrowthKind::affine: raw = idx + coeff; break;
  }
  return std::max(raw, Int(1));
}

GrowthSpec GrowthSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw Error("growth spec '" + text + "' must look like kind:coeff");
  std::string kind = text.substr(0, colon);
  GrowthSpec spec;
  if (kind == "constant") spec.kind = GrowthKind::constant;
  else if (kind == "linear") spec.kind = GrowthKind::linear;
  else if (kind == "quadratic") spec.kind = GrowthKind::quadratic;
  else if (kind == "affine") spec.kind = GrowthKind::affine;
  else throw Error("unknown growth spec kind '" + kind + "'");
  spec.coeff = parse_int(text.substr(colon + 1));
  if (spec.coeff < 1 && spec.kind != GrowthKind::affine)
    throw Error("growth spec coefficient must be >= 1");
  if (spec.kind == GrowthKind::affine && spec.coeff < 0)
    throw Error("affine growth spec offset must be >= 0");
  return spec;
}

std::string GrowthSpec::str() const {
  const char* name = nullptr;
  switch (kind) {
    case GrowthKind::constant: name = "constant"; break;
    case GrowthKind::linear: name = "linear"; break;
    case GrowthKind::quadratic: name = "quadratic"; break;
    case GrowthKind::affine: name = "affine"; break;
  }
  return std::string(name) + ":" + coeff.get_str();
}

GrowthPolicy GrowthPolicy::trivial() {
  return {GrowthSpec{GrowthKind::constant, 1}, GrowthSpec{GrowthKind::constant, 1}};
}

GrowthPolicy GrowthPolicy::defaults() {
  return {GrowthSpec{GrowthKind::quadratic, 1}, GrowthSpec{GrowthKind::affine, 1}};
}

LevelDelta derive_level(const Rat& q, const Rat& q_next, const Int& k,
                        const Int& ell, const Int& scale) {
  if (!(q > Rat(0) && q < Rat(1) && q_next > Rat(0) && q_next < Rat(1)))
    throw Error("derive_level: rationals must lie in (0,1)");
  if (q == q_next) throw Error("derive_level: consecutive terms equal (" + q.str() + ")");
  if (scale < 1) throw Error("derive_level: scale must be >= 1");
  if (Rat(k, ell) != q)
    throw Error("derive_level: k/ell does not equal q");

  Rat ratio = q_next / q;  // reduced a/b
  Int a = ratio.num() * scale;
  Int b = ratio.den() * scale;

  Transition t;
  if (q > q_next) {
    t.r = a;
    t.p = b - a;
    t.kappa = 0;
    t.appendix = AppendixKind::singleton;
  } else {
    t.r = b * ell - a * k;
    t.p = (a - b) * k;
    t.kappa = t.p;
    t.appendix = AppendixKind::full;
  }
  if (t.r < 1 || t.p < 1)
    throw InternalCheckError("derive_level produced r or p below 1");

  LevelDelta delta;
  delta.step = t;
  delta.ell_next = (t.r + t.p) * ell;
  delta.k_next = t.r * k + t.kappa * ell;
  // Exactness gate: a failure here is an arithmetic bug, catch it at the source.
  if (Rat(delta.k_next, delta.ell_next) != q_next)
    throw InternalCheckError("derive_level successor density mismatch");
  return delta;
}

TreeFamily derive_family(const QSequence& seq, std::size_t n_levels,
                         const GrowthPolicy& policy, T0Variant t0,
                         unsigned alphabet_size) {
  if (alphabet_size < 2) throw Error("alphabet size must be at least 2");
  auto report = validate_sequence(seq, n_levels + 1);
  if (!report.ok()) {
    std::string what = "sequence not admissible:";
    for (const auto& v : report.violations)
      what += " [index " + std::to_string(v.index) + ": " + v.what + "]";
    throw Error(what);
  }

  TreeFamily fam;
  fam.alphabet_size = alphabet_size;
  fam.t0_variant = t0;

  Rat q0 = q_at(seq, 0);
  Int mult = ceil_div(policy.min_ell.eval(0), q0.den());
  mult = std::max(mult, Int(1));
  fam.levels.push_back({q0.num() * mult, q0.den() * mult, std::nullopt});

  for (std::size_t i = 0; i < n_levels; ++i) {
    const Rat q = q_at(seq, i);
    const Rat qn = q_at(seq, i + 1);
    const Int& k = fam.levels[i].k;
    const Int& ell = fam.levels[i].ell;

    Int ratio_floor = policy.min_ratio.eval(i) * ell;
    Int target = std::max(policy.min_ell.eval(i + 1), ratio_floor);
    Int base = derive_level(q, qn, k, ell, 1).ell_next;
    Int scale = std::max(ceil_div(target, base), Int(1));

    LevelDelta delta = derive_level(q, qn, k, ell, scale);
    fam.levels[i].next = delta.step;
    fam.levels.push_back({delta.k_next, delta.ell_next, std::nullopt});
  }
  return fam;
}

}  // namespace treedim
