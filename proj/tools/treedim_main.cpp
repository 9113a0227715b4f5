#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "treedim/error.hpp"
#include "treedim/gales.hpp"
#include "treedim/io.hpp"
#include "treedim/structure.hpp"
#include "treedim/treefam.hpp"
#include "treedim/verify.hpp"

namespace {

using namespace treedim;

// Family consistent enough to query. verify has its own reporting path and
// does not go through here.
TreeFamily build_checked(const FamilyConfig& cfg) {
  TreeFamily fam = build_family(cfg);
  auto issues = validate_family_against(fam, realized_terms(cfg));
  if (!issues.empty())
    throw Error("config describes an inconsistent family: [level " +
                std::to_string(issues.front().level) + "] " + issues.front().what);
  return fam;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

int cmd_derive(const std::string& config_path, const std::string& out_path) {
  FamilyConfig cfg = load_family_config(config_path);
  TreeFamily fam = build_checked(cfg);
  emit(family_doc_to_json(cfg, fam).dump(2) + "\n", out_path);
  return 0;
}

int cmd_structure(const std::string& config_path, const std::string& max_len,
                  const std::string& format, const std::string& out_path) {
  FamilyConfig cfg = load_family_config(config_path);
  ExponentFn fn(build_checked(cfg));
  Int n = parse_int(max_len);
  if (format == "csv")
    emit(structure_csv(fn, n), out_path);
  else if (format == "jsonlike")
    emit(structure_jsonlike(fn, n), out_path);
  else
    throw Error("unknown format '" + format + "' (expected csv or jsonlike)");
  return 0;
}

int cmd_member(const std::string& config_path, const std::string& word_text) {
  FamilyConfig cfg = load_family_config(config_path);
  TreeFamily fam = build_checked(cfg);
  Word w = parse_word(word_text, fam.alphabet_size);
  bool in = member_pref(fam, w);
  std::cout << "word: " << (word_text.empty() ? "(empty)" : word_text) << "\n";
  std::cout << "member_pref: " << (in ? "true" : "false") << "\n";
  if (in && Int(static_cast<unsigned long>(w.size())) < fam.ell_last()) {
    auto succ = successors(fam, w);
    std::cout << "successors: {";
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << succ[i];
    }
    std::cout << "}\n";
  }
  return 0;
}

int cmd_martingale(const std::string& config_path, const std::string& word_text,
                   const std::string& sigma_text) {
  FamilyConfig cfg = load_family_config(config_path);
  ExponentFn fn(build_checked(cfg));
  const unsigned B = fn.family().alphabet_size;
  Word w = parse_word(word_text, B);
  PowerValue v = vf_value(fn, w);
  std::cout << "V_F(w) = " << v.str(B);
  if (!v.zero && v.exponent.is_integer())
    std::cout << " = " << v.to_rat(B).str_plain();
  std::cout << "\n";
  if (!sigma_text.empty()) {
    Rat sigma = Rat::parse(sigma_text);
    if (sigma < Rat(0) || sigma > Rat(1)) throw Error("sigma must lie in [0,1]");
    if (v.zero) {
      std::cout << "d(w) = 0\n";
    } else {
      Rat exponent = v.exponent - (Rat(1) - sigma) * Rat(Int(static_cast<unsigned long>(w.size())));
      GaleValue d = GaleValue::make(Rat(1), exponent, B);
      std::cout << "d(w) = " << d.str(B) << "  (exponent " << exponent.str() << ")\n";
    }
  }
  return 0;
}

int cmd_verify(const std::string& config_path, const std::string& depth,
               const std::string& oracle_cap, unsigned samples, std::uint64_t seed) {
  FamilyConfig cfg = load_family_config(config_path);
  TreeFamily fam = build_family(cfg);
  VerifyOptions opt;
  opt.depth = parse_int(depth);
  if (!oracle_cap.empty()) opt.oracle_cap = parse_int(oracle_cap);
  opt.samples_per_length = samples;
  opt.seed = seed;
  opt.policy = cfg.policy;
  opt.qs = realized_terms(cfg);
  VerifyReport report = run_verification(fam, opt);
  for (const auto& c : report.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  std::cout << (report.all_pass() ? "verification passed\n" : "verification FAILED\n");
  return report.all_pass() ? 0 : 1;
}

int cmd_dimension(const std::string& config_path, std::size_t levels,
                  const std::string& sigma_text, const std::string& alpha_text) {
  FamilyConfig cfg = load_family_config(config_path);
  if (cfg.levels) {
    if (levels + 1 > cfg.levels->size())
      throw Error("config materializes only " + std::to_string(cfg.levels->size() - 1) +
                  " levels");
    cfg.levels->resize(levels + 1);
    cfg.levels->back().next.reset();
  }
  cfg.n_levels = levels;
  ExponentFn fn(build_checked(cfg));
  auto est = dim_estimate(fn, fn.family().ell_last());

  std::cout << "empirical_min_density: " << est.empirical_min_density.str() << "\n";
  std::cout << "certified_lower: " << est.certified_lower.str() << "\n";
  std::cout << "block_densities:\n";
  for (const auto& b : est.block_densities)
    std::cout << "  level " << b.level << "  ell " << b.ell.get_str() << "  density "
              << b.density.str() << "\n";

  Rat sigma = sigma_text.empty() ? est.empirical_min_density : Rat::parse(sigma_text);
  Rat alpha = alpha_text.empty() ? est.empirical_min_density : Rat::parse(alpha_text);
  auto records = witness_exponents(fn, sigma, alpha, 0, levels);
  std::cout << "witness (sigma " << sigma.str() << ", alpha_hat " << alpha.str() << "):\n";
  std::cout << witness_csv(records);
  return 0;
}

int cmd_cutpoint(const std::string& gale_path, unsigned precision) {
  GaleTable table = load_gale_table(gale_path);
  CutPointResult result = cut_point(table, precision);
  std::cout << "cut_point: " << result.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for iterated tree families on Cantor space"};
  app.require_subcommand(1);

  std::string config_path, out_path, word_text, sigma_text, alpha_text;
  std::string max_len = "64", depth = "64", oracle_cap, gale_path;
  std::string format = "csv";
  unsigned precision = 32, samples = 32;
  std::size_t levels = 1;
  std::uint64_t seed = 0x5eedf00dULL;

  auto* derive = app.add_subcommand("derive", "derive per-level parameters");
  derive->add_option("--config", config_path)->required();
  derive->add_option("--out", out_path);

  auto* structure = app.add_subcommand("structure", "emit the (ell, exponent, density) table");
  structure->add_option("--config", config_path)->required();
  structure->add_option("--max-len", max_len)->required();
  structure->add_option("--format", format)->check(CLI::IsMember({"csv", "jsonlike"}));
  structure->add_option("--out", out_path);

  auto* member = app.add_subcommand("member", "prefix membership and branching");
  member->add_option("--config", config_path)->required();
  member->add_option("--word", word_text);

  auto* martingale = app.add_subcommand("martingale", "V_F and sigma-gale values");
  martingale->add_option("--config", config_path)->required();
  martingale->add_option("--word", word_text);
  martingale->add_option("--sigma", sigma_text);

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--config", config_path)->required();
  verify->add_option("--depth", depth)->required();
  verify->add_option("--oracle-cap", oracle_cap);
  verify->add_option("--samples", samples);
  verify->add_option("--seed", seed);

  auto* dimension = app.add_subcommand("dimension", "density summary and witness table");
  dimension->add_option("--config", config_path)->required();
  dimension->add_option("--levels", levels)->required();
  dimension->add_option("--sigma", sigma_text);
  dimension->add_option("--alpha-hat", alpha_text);

  auto* cutpoint = app.add_subcommand("cutpoint", "cut point of a tabulated gale");
  cutpoint->add_option("--gale", gale_path)->required();
  cutpoint->add_option("--precision", precision);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (derive->parsed()) return cmd_derive(config_path, out_path);
    if (structure->parsed()) return cmd_structure(config_path, max_len, format, out_path);
    if (member->parsed()) return cmd_member(config_path, word_text);
    if (martingale->parsed()) return cmd_martingale(config_path, word_text, sigma_text);
    if (verify->parsed()) return cmd_verify(config_path, depth, oracle_cap, samples, seed);
    if (dimension->parsed()) return cmd_dimension(config_path, levels, sigma_text, alpha_text);
    if (cutpoint->parsed()) return cmd_cutpoint(gale_path, precision);
  } catch (const treedim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const treedim::InternalCheckError& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
