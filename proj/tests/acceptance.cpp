// Acceptance suite: runs the ten release criteria and prints one line each.
// Exit code 0 iff every criterion passes.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "treedim/derivation.hpp"
#include "treedim/error.hpp"
#include "treedim/gales.hpp"
#include "treedim/io.hpp"
#include "treedim/oracle.hpp"
#include "treedim/structure.hpp"
#include "treedim/treefam.hpp"
#include "treedim/verify.hpp"

using namespace treedim;
namespace fs = std::filesystem;

namespace {

struct Args {
  std::string cli;
  std::string configs;
  std::string tmp;
};

Rat rat(long n, long d) { return Rat(Int(n), Int(d)); }

QSequence explicit_terms(std::initializer_list<std::pair<long, long>> terms) {
  ExplicitSeq seq;
  for (auto [n, d] : terms) seq.terms.emplace_back(Int(n), Int(d));
  return seq;
}

TreeFamily make(std::initializer_list<std::pair<long, long>> terms, T0Variant v) {
  QSequence seq = explicit_terms(terms);
  return derive_family(seq, terms.size() - 1, GrowthPolicy::trivial(), v);
}

TreeFamily family_a() { return make({{1, 2}, {1, 3}}, T0Variant::suffix_pad); }
TreeFamily family_b() { return make({{1, 3}, {1, 2}}, T0Variant::prefix_pad); }
TreeFamily three_term() { return make({{1, 2}, {1, 3}, {2, 5}}, T0Variant::suffix_pad); }

SlowOscSeq oscillating() {
  SlowOscSeq seq;
  seq.c = rat(3, 5);
  seq.deep = Rat(2);
  seq.shallow = rat(1, 10);
  seq.m = 3;
  return seq;
}

TreeFamily oscillating6() {
  return derive_family(QSequence(oscillating()), 6, GrowthPolicy::defaults(),
                       T0Variant::suffix_pad);
}

// ---- criterion bodies: return "" on pass, a short reason otherwise --------

std::string crit_oracle_equivalence() {
  const Int cap(1000000);
  for (const TreeFamily& fam : {family_a(), family_b(), three_term()}) {
    ExponentFn fn(fam);
    std::size_t top = 0;
    bool any = false;
    for (std::size_t i = 0; i < fam.level_count(); ++i) {
      if (!fits_ulong(fam.levels[i].k) || fam.levels[i].k > 62) break;
      if (ipow(Int(fam.alphabet_size), fam.levels[i].k.get_ui()) > cap) break;
      top = i;
      any = true;
    }
    if (!any) return "no level fits the oracle cap";
    for (std::size_t i = 0; i <= top; ++i) {
      auto lang = brute_trees(fam, i, cap);
      if (lang.words != enumerate_level(fam, i, cap))
        return "explicit vs recursive enumeration mismatch";
      Int size(static_cast<unsigned long>(lang.words.size()));
      if (size != ipow(Int(fam.alphabet_size), fam.levels[i].k.get_ui()))
        return "|T_i| != |X|^k_i";
    }
    auto counts = brute_structure(brute_trees(fam, top, cap));
    for (const auto& [len, count] : counts)
      if (ipow(Int(fam.alphabet_size), fn.exponent(Int(static_cast<unsigned long>(len)))) != count)
        return "prefix count != |X|^exponent at length " + std::to_string(len);
  }
  return "";
}

std::string crit_lemma1_identities() {
  std::mt19937_64 rng(0x1ef7c0defa151ULL);
  auto rand_q = [&rng]() {
    long d = static_cast<long>(rng() % 49 + 2);  // 2..50
    long n = static_cast<long>(rng() % static_cast<unsigned long>(d - 1) + 1);
    return rat(n, d);
  };
  int done = 0;
  while (done < 200) {
    Rat q = rand_q(), qn = rand_q();
    if (q == qn) continue;
    long mult = static_cast<long>(rng() % 3 + 1);
    Int k = q.num() * mult, ell = q.den() * mult;
    Int scale(static_cast<long>(rng() % 3 + 1));
    auto delta = derive_level(q, qn, k, ell, scale);
    const Transition& t = delta.step;
    if (Rat(delta.k_next, delta.ell_next) != qn) return "k'/ell' != q_next";
    if (delta.ell_next != (t.r + t.p) * ell) return "ell recurrence broken";
    if (delta.k_next != t.r * k + t.kappa * ell) return "k recurrence broken";
    if (q > qn && (t.kappa != 0 || t.appendix != AppendixKind::singleton))
      return "kappa case split broken (decreasing)";
    if (q < qn && (t.kappa != t.p || t.appendix != AppendixKind::full))
      return "kappa case split broken (increasing)";
    Int t_hi = t.p * ell;
    for (const Int& tt : {Int(0), Int(t_hi / 2), t_hi}) {
      if (q > qn) {
        Rat mid(t.r * k, t.r * ell + tt);
        if (!(q >= mid && mid >= qn)) return "decreasing bound chain broken";
      } else {
        Rat mid(t.r * k + tt, t.r * ell + tt);
        if (!(q <= mid && mid <= qn)) return "increasing bound chain broken";
      }
    }
    ++done;
  }
  return "";
}

// Exhaustive successor scan while the on-tree node count fits the budget,
// seeded representative walks beyond it.
std::string dichotomy_scan(const TreeFamily& fam, const ExponentFn& fn) {
  const Int budget(1000000);
  Int max_depth = fam.ell_last() - 1;
  std::string why;

  auto node_ok = [&](const Word& w) {
    auto succ = successors(fam, w);
    if (succ.size() != 1 && succ.size() != fam.alphabet_size) {
      why = "successor dichotomy violated";
      return false;
    }
    Int m(static_cast<unsigned long>(w.size()));
    Int expected = ipow(Int(fam.alphabet_size), fn.exponent(m + 1) - fn.exponent(m));
    if (Int(static_cast<unsigned long>(succ.size())) != expected) {
      why = "successor count != |X|^(e(m+1)-e(m))";
      return false;
    }
    return true;
  };

  Int exhaustive_depth(-1);
  Int planned = 0;
  for (Int m = 0; m <= max_depth; ++m) {
    Int e = fn.exponent(m);
    if (e > 62 || (planned += ipow(Int(fam.alphabet_size), e.get_ui())) > budget) break;
    exhaustive_depth = m;
  }

  if (exhaustive_depth >= 0) {
    std::function<bool(Word&)> dfs = [&](Word& cur) -> bool {
      if (!node_ok(cur)) return false;
      if (Int(static_cast<unsigned long>(cur.size())) == exhaustive_depth) return true;
      for (Letter x = 0; x < fam.alphabet_size; ++x) {
        cur.push_back(x);
        if (member_pref(fam, cur) && !dfs(cur)) return false;
        cur.pop_back();
      }
      return true;
    };
    Word root;
    if (!dfs(root)) return why;
  }

  if (exhaustive_depth < max_depth) {
    std::mt19937_64 rng(0xacce97edULL);
    unsigned long target = max_depth.get_ui();
    for (unsigned s = 0; s < 33; ++s) {
      Word cur;
      for (unsigned long m = 0;; ++m) {
        if (!node_ok(cur)) return why;
        if (m == target) break;
        auto succ = successors(fam, cur);
        cur.push_back(s == 0 ? succ.front() : succ[rng() % succ.size()]);
      }
    }
  }
  return "";
}

std::string crit_symmetry_balance() {
  for (const TreeFamily& fam : {family_a(), family_b(), three_term()}) {
    ExponentFn fn(fam);
    std::string why = dichotomy_scan(fam, fn);
    if (!why.empty()) return why;

    // Balance, exhaustively on the largest level under the cap.
    std::size_t top = 0;
    for (std::size_t i = 0; i < fam.level_count(); ++i) {
      if (!fits_ulong(fam.levels[i].k) || fam.levels[i].k > 16) break;
      top = i;
    }
    if (!brute_balance(brute_trees(fam, top, Int(1000000))))
      return "balance property violated";

    // Extension property, exhaustive over all words up to ell_1.
    unsigned long ell1 = fam.levels[1].ell.get_ui();
    for (std::size_t i = 0; i + 1 < fam.level_count(); ++i) {
      unsigned long cap_len =
          std::min(ell1, static_cast<unsigned long>(fam.levels[i].ell.get_ui()));
      for (unsigned long len = 0; len <= cap_len; ++len) {
        Word w(len, 0);
        while (true) {
          if (member_pref_at(fam, i, w) != member_pref_at(fam, i + 1, w))
            return "extension property violated";
          std::size_t pos = len;
          bool done = len == 0;
          while (pos > 0) {
            --pos;
            if (++w[pos] < fam.alphabet_size) break;
            w[pos] = 0;
            if (pos == 0) done = true;
          }
          if (done) break;
        }
      }
    }
  }
  return "";
}

std::string crit_martingale_identity() {
  for (const TreeFamily& fam : {family_a(), family_b(), three_term()}) {
    ExponentFn fn(fam);
    auto rep = martingale_defect(fn, fam.ell_last() - 1);
    if (!rep.ok()) return rep.violations.front().what;

    std::size_t top = 0;
    for (std::size_t i = 0; i < fam.level_count(); ++i) {
      if (!fits_ulong(fam.levels[i].k) || fam.levels[i].k > 16) break;
      top = i;
    }
    auto reference = brute_martingale(brute_trees(fam, top, Int(1000000)));
    for (const auto& [w, v] : reference) {
      PowerValue pv = vf_value(fn, w);
      if (pv.zero || pv.to_rat(fam.alphabet_size) != v)
        return "brute martingale disagrees with V_F";
    }
  }
  return "";
}

std::string crit_density_bounds() {
  for (const TreeFamily& fam : {family_a(), family_b(), three_term()}) {
    ExponentFn fn(fam);
    for (std::size_t i = 0; i + 1 < fam.level_count(); ++i)
      if (!check_bounds(fn, i).ok()) return "certificate violated";
    for (std::size_t i = 0; i < fam.level_count(); ++i)
      if (fn.density(fam.levels[i].ell) != fam.level_q(i))
        return "block-boundary density != q_i";
  }
  ExponentFn a(family_a());
  if (a.density(Int(6)) != rat(1, 3)) return "family A density(6) != 1/3";
  ExponentFn b(family_b());
  if (b.density(Int(12)) != rat(1, 2)) return "family B density(12) != 1/2";
  return "";
}

std::string crit_monotone_bounds() {
  TreeFamily dec = make({{1, 2}, {1, 3}, {1, 4}}, T0Variant::suffix_pad);
  ExponentFn dfn(dec);
  if (!monotone_check(dfn, Direction::decreasing, rat(1, 4), dec.ell_last()).ok())
    return "decreasing bound e(ell) >= ell/4 failed";

  TreeFamily inc = make({{1, 4}, {1, 3}, {1, 2}}, T0Variant::prefix_pad);
  ExponentFn ifn(inc);
  if (inc.ell_last() != 1728) return "unexpected increasing-family depth";
  if (!monotone_check(ifn, Direction::increasing, rat(1, 2), inc.ell_last()).ok())
    return "increasing bound e(ell) <= ell/2 failed";
  return "";
}

std::string crit_growth_policy() {
  TreeFamily fam = oscillating6();
  if (fam.level_count() != 7) return "expected 7 materialized levels";
  for (std::size_t i = 0; i < fam.level_count(); ++i) {
    Int floor(static_cast<unsigned long>(i * i));
    if (fam.levels[i].ell < floor)
      return "ell_" + std::to_string(i) + " below i^2";
  }
  for (std::size_t i = 0; i + 1 < fam.level_count(); ++i) {
    Int ratio_floor(static_cast<unsigned long>(i + 1));
    if (fam.levels[i + 1].ell < ratio_floor * fam.levels[i].ell)
      return "ratio ell_" + std::to_string(i + 1) + "/ell_" + std::to_string(i) +
             " below i+1";
  }
  return "";
}

std::string crit_cut_point() {
  GaleTable constant;
  constant.sigma = Rat(1);
  constant.alphabet_size = 2;
  for (const std::string& key : {"", "0", "1", "00", "01", "10", "11"})
    constant.values.emplace(parse_word(key, 2), GaleValue::from_rat(Rat(1)));
  auto chi_const = cut_point(constant);
  if (chi_const.kind != CutPointResult::Kind::exact || chi_const.value != Rat(1))
    return "constant martingale cut point != 1 (" + chi_const.str() + ")";
  if (!supergale_check(constant).ok()) return "constant martingale fails at sigma=1";

  ExponentFn fn(family_a());
  auto table = gale_table_from_family(fn, rat(1, 2), Int(6));
  auto chi = cut_point(table);
  if (chi.kind != CutPointResult::Kind::exact || chi.value != rat(1, 2))
    return "half-gale cut point != 1/2 (" + chi.str() + ")";
  if (!supergale_check(table).ok()) return "half-gale fails its own condition";
  return "";
}

std::string crit_witness_exponents() {
  TreeFamily fam = oscillating6();
  ExponentFn fn(fam);
  const Rat sigma = rat(3, 5);
  const Rat alpha = rat(3, 5);
  auto records = witness_exponents(fn, sigma, alpha, 0, 6);

  Rat prev(0);
  bool first = true;
  for (const auto& rec : records) {
    Rat formula = (alpha - rec.q) * Rat(rec.ell);
    if (rec.borderline_exp != formula) return "borderline exponent != formula route";
    bool expected_flag = rec.level == 5;
    if (rec.scan_flag != expected_flag) return "scan flag wrong at level " + std::to_string(rec.level);
    if (!rec.bound_ok) return "flagged level misses the ell/i bound";
    if (rec.q < sigma) {
      if (!(rec.thm2_exp > Rat(0))) return "non-positive witness exponent";
      if (!first && !(rec.thm2_exp > prev)) return "witness exponents not increasing";
      prev = rec.thm2_exp;
      first = false;
    }
  }
  if (first) return "no levels with q_i < sigma";
  return "";
}

int run_cli(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string crit_cli_end_to_end(const Args& args) {
  if (args.cli.empty() || args.configs.empty() || args.tmp.empty())
    return "missing --cli/--configs/--tmp";
  fs::create_directories(args.tmp);
  const std::string null_sink = " > " + args.tmp + "/cli_out.txt 2>&1";

  const std::vector<std::pair<std::string, std::string>> runs = {
      {"family_a.json", "6"},          {"family_b.json", "12"},
      {"three_term.json", "120"},      {"oscillating6.json", "300"},
      {"decreasing3.json", "24"},      {"increasing3.json", "1728"},
  };
  for (const auto& [name, depth] : runs) {
    std::string cmd = args.cli + " verify --config " + args.configs + "/" + name +
                      " --depth " + depth + null_sink;
    int code = run_cli(cmd);
    if (code != 0)
      return name + " verify exited with " + std::to_string(code);
  }

  // Derive a family document, then corrupt each parameter in turn.
  std::string doc_path = args.tmp + "/family_a_doc.json";
  if (run_cli(args.cli + " derive --config " + args.configs + "/family_a.json --out " +
              doc_path + null_sink) != 0)
    return "derive failed on family_a";
  if (run_cli(args.cli + " verify --config " + doc_path + " --depth 6" + null_sink) != 0)
    return "derived document fails verify";

  nlohmann::json doc = nlohmann::json::parse(read_text_file(doc_path));
  auto corrupt = [&](const std::function<void(nlohmann::json&)>& mutate,
                     const std::string& what) -> std::string {
    nlohmann::json broken = doc;
    mutate(broken);
    std::string path = args.tmp + "/family_a_broken.json";
    write_text_file(path, broken.dump(2));
    int code = run_cli(args.cli + " verify --config " + path + " --depth 6" + null_sink);
    if (code != 1) return what + " corruption gave exit " + std::to_string(code);
    return "";
  };

  auto bump = [](nlohmann::json& j, const char* field) {
    Int v = parse_int(j.at("levels")[0].at(field).get<std::string>());
    Int bumped = v + 1;
    j.at("levels")[0][field] = bumped.get_str();
  };
  std::string err;
  err = corrupt([&](nlohmann::json& j) { bump(j, "r"); }, "r");
  if (!err.empty()) return err;
  err = corrupt([&](nlohmann::json& j) { bump(j, "p"); }, "p");
  if (!err.empty()) return err;
  err = corrupt([&](nlohmann::json& j) { bump(j, "kappa"); }, "kappa");
  if (!err.empty()) return err;
  err = corrupt([&](nlohmann::json& j) { bump(j, "k"); }, "k");
  if (!err.empty()) return err;
  err = corrupt([&](nlohmann::json& j) { bump(j, "ell"); }, "ell");
  if (!err.empty()) return err;
  err = corrupt([&](nlohmann::json& j) { j.at("levels")[0]["appendix"] = "full"; },
                "appendix");
  if (!err.empty()) return err;
  err = corrupt(
      [&](nlohmann::json& j) {
        Int v = parse_int(j.at("levels")[1].at("k").get<std::string>());
        Int bumped = v + 1;
        j.at("levels")[1]["k"] = bumped.get_str();
      },
      "k_1");
  return err;
}

}  // namespace

int main(int argc, char** argv) {
  Args args;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string key = argv[i];
    if (key == "--cli") args.cli = argv[i + 1];
    else if (key == "--configs") args.configs = argv[i + 1];
    else if (key == "--tmp") args.tmp = argv[i + 1];
  }

  using Clock = std::chrono::steady_clock;
  const auto suite_start = Clock::now();
  int failures = 0;
  int index = 0;

  auto criterion = [&](const std::string& name, double budget_seconds,
                       const std::function<std::string()>& body) {
    ++index;
    const auto start = Clock::now();
    std::string detail;
    try {
      detail = body();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (detail.empty() && budget_seconds > 0 && secs > budget_seconds)
      detail = "over time budget (" + std::to_string(secs) + " s)";
    bool pass = detail.empty();
    if (!pass) ++failures;
    std::ostringstream line;
    line << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << index << ": " << name
         << " (" << secs << " s)";
    if (!pass) line << " -- " << detail;
    std::cout << line.str() << std::endl;
  };

  criterion("oracle equivalence on the three test families", 5.0, crit_oracle_equivalence);
  criterion("exact step identities on 200 random pairs", 0, crit_lemma1_identities);
  criterion("spherical symmetry, balance, extension property", 0, crit_symmetry_balance);
  criterion("martingale identity and brute cross-check", 0, crit_martingale_identity);
  criterion("density bound certificates", 0, crit_density_bounds);
  criterion("monotone exponent bounds", 0, crit_monotone_bounds);
  criterion("growth policy floors (i^2 and i+1)", 0, crit_growth_policy);
  criterion("cut points of the reference tables", 0, crit_cut_point);
  criterion("witness exponents on the oscillating family", 0, crit_witness_exponents);
  criterion("CLI verify end-to-end with corruption probes", 0,
            [&]() { return crit_cli_end_to_end(args); });

  double total = std::chrono::duration<double>(Clock::now() - suite_start).count();
  bool in_budget = total < 60.0;
  std::cout << (in_budget ? "[PASS]" : "[FAIL]") << " total runtime " << total
            << " s (budget 60 s)" << std::endl;
  if (!in_budget) ++failures;

  std::cout << (failures == 0 ? "acceptance suite passed"
                              : "acceptance suite FAILED (" + std::to_string(failures) +
                                    " criteria)")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
