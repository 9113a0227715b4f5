#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "treedim/derivation.hpp"
#include "treedim/family.hpp"
#include "treedim/gales.hpp"
#include "treedim/sequences.hpp"
#include "treedim/structure.hpp"

namespace treedim {

/// Parsed family configuration. Hand-written configs describe the rational
/// source and the derivation inputs; documents emitted by `derive` carry the
/// realized terms and the per-level parameters as well, and those are used
/// verbatim when present.
struct FamilyConfig {
  unsigned alphabet_size = 2;
  T0Variant t0_variant = T0Variant::suffix_pad;
  std::optional<QSequence> seq;
  std::optional<std::vector<Rat>> q_terms;
  std::size_t n_levels = 1;
  GrowthPolicy policy = GrowthPolicy::defaults();
  std::optional<std::vector<LevelParams>> levels;
};

FamilyConfig family_config_from_json(const nlohmann::json& j);
FamilyConfig load_family_config(const std::string& path);

/// The q_0..q_n actually driving the family.
std::vector<Rat> realized_terms(const FamilyConfig& cfg);

/// Explicit levels when present, a fresh derivation otherwise. No validation
/// beyond what derivation itself enforces; `verify` owns the checking.
TreeFamily build_family(const FamilyConfig& cfg);

/// Self-contained family document: config fields plus realized terms and
/// all per-level parameters (integers as decimal strings).
nlohmann::json family_doc_to_json(const FamilyConfig& cfg, const TreeFamily& fam);

std::string structure_csv(const ExponentFn& fn, const Int& max_len);
std::string structure_jsonlike(const ExponentFn& fn, const Int& max_len);

std::string witness_csv(const std::vector<WitnessRecord>& records);

nlohmann::json gale_table_to_json(const GaleTable& table);
GaleTable gale_table_from_json(const nlohmann::json& j);
GaleTable load_gale_table(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace treedim
