#include "treedim/family.hpp"

#include "treedim/error.hpp"

namespace treedim {

std::string to_string(T0Variant v) {
  return v == T0Variant::suffix_pad ? "suffix-pad" : "prefix-pad";
}

std::string to_string(AppendixKind k) {
  return k == AppendixKind::full ? "full" : "singleton";
}

T0Variant t0_variant_from_string(const std::string& s) {
  if (s == "suffix-pad") return T0Variant::suffix_pad;
  if (s == "prefix-pad") return T0Variant::prefix_pad;
  throw Error("unknown t0 variant '" + s + "' (expected suffix-pad or prefix-pad)");
}

AppendixKind appendix_from_string(const std::string& s) {
  if (s == "full") return AppendixKind::full;
  if (s == "singleton") return AppendixKind::singleton;
  throw Error("unknown appendix kind '" + s + "' (expected full or singleton)");
}

const Int& TreeFamily::ell_last() const {
  if (levels.empty()) throw Error("family has no levels");
  return levels.back().ell;
}

Rat TreeFamily::level_q(std::size_t i) const {
  if (i >= levels.size()) throw Error("level index out of range");
  return Rat(levels[i].k, levels[i].ell);
}

std::vector<FamilyIssue> validate_family(const TreeFamily& fam) {
  std::vector<FamilyIssue> issues;
  auto flag = [&](std::size_t i, std::string what) {
    issues.push_back({i, std::move(what)});
  };

  if (fam.alphabet_size < 2) flag(0, "alphabet size must be at least 2");
  if (fam.levels.empty()) {
    flag(0, "no levels");
    return issues;
  }

  for (std::size_t i = 0; i < fam.levels.size(); ++i) {
    const auto& lv = fam.levels[i];
    if (!(lv.k > 0 && lv.k < lv.ell))
      flag(i, "level parameters must satisfy 0 < k < ell (k=" + lv.k.get_str() +
                  ", ell=" + lv.ell.get_str() + ")");
    const bool last = i + 1 == fam.levels.size();
    if (last) {
      if (lv.next) flag(i, "last level must not carry a transition");
      continue;
    }
    if (!lv.next) {
      flag(i, "missing transition to next level");
      continue;
    }
    const Transition& t = *lv.next;
    const auto& nx = fam.levels[i + 1];
    if (t.r < 1) flag(i, "repetition factor r must be >= 1");
    if (t.p < 1) flag(i, "prolongation factor p must be >= 1");
    if (nx.ell != (t.r + t.p) * lv.ell)
      flag(i, "ell recurrence violated: ell' != (r+p)*ell");
    if (nx.k != t.r * lv.k + t.kappa * lv.ell)
      flag(i, "k recurrence violated: k' != r*k + kappa*ell");

    Rat q(lv.k, lv.ell), qn(nx.k, nx.ell);
    if (q == qn) flag(i, "consecutive level densities equal");
    if (q > qn) {
      if (t.kappa != 0) flag(i, "kappa must be 0 on a decreasing step");
      if (t.appendix != AppendixKind::singleton)
        flag(i, "appendix must be singleton on a decreasing step");
    } else if (q < qn) {
      if (t.kappa != t.p) flag(i, "kappa must equal p on an increasing step");
      if (t.appendix != AppendixKind::full)
        flag(i, "appendix must be full on an increasing step");
    }
  }
  return issues;
}

std::vector<FamilyIssue> validate_family_against(const TreeFamily& fam,
                                                 const std::vector<Rat>& qs) {
  auto issues = validate_family(fam);
  if (qs.size() < fam.levels.size()) {
    issues.push_back({fam.levels.size() - 1,
                      "fewer rational terms than materialized levels"});
    return issues;
  }
  for (std::size_t i = 0; i < fam.levels.size(); ++i) {
    if (Rat(fam.levels[i].k, fam.levels[i].ell) != qs[i])
      issues.push_back({i, "level density k/ell differs from q_" + std::to_string(i) +
                               " = " + qs[i].str()});
  }
  return issues;
}

}  // namespace treedim
