#include "treedim/io.hpp"

#include <fstream>
#include <sstream>

#include "treedim/error.hpp"

namespace treedim {

namespace {

using nlohmann::json;

std::string need_string(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw Error(std::string("config: missing string field '") + key + "'");
  return j.at(key).get<std::string>();
}

QSequence seq_from_json(const json& j) {
  std::string kind = need_string(j, "kind");
  if (kind == "explicit") {
    if (!j.contains("terms") || !j.at("terms").is_array())
      throw Error("config: explicit sequence needs a 'terms' array");
    ExplicitSeq seq;
    for (const auto& t : j.at("terms")) seq.terms.push_back(Rat::parse(t.get<std::string>()));
    return seq;
  }
  if (kind == "alternating") {
    AlternatingSeq seq;
    seq.c = Rat::parse(need_string(j, "c"));
    seq.d = Rat::parse(need_string(j, "d"));
    seq.m = j.value("m", 1UL);
    return seq;
  }
  if (kind == "geometric") {
    GeometricSeq seq;
    seq.target = Rat::parse(need_string(j, "target"));
    seq.delta0 = Rat::parse(need_string(j, "delta0"));
    seq.ratio = Rat::parse(need_string(j, "ratio"));
    return seq;
  }
  if (kind == "slow_osc") {
    SlowOscSeq seq;
    seq.c = Rat::parse(need_string(j, "c"));
    seq.deep = Rat::parse(need_string(j, "deep"));
    seq.shallow = Rat::parse(need_string(j, "shallow"));
    seq.m = j.value("m", 1UL);
    return seq;
  }
  throw Error("config: unknown sequence kind '" + kind + "'");
}

json seq_to_json(const QSequence& seq) {
  json j;
  if (const auto* ex = std::get_if<ExplicitSeq>(&seq)) {
    j["kind"] = "explicit";
    json terms = json::array();
    for (const auto& t : ex->terms) terms.push_back(t.str());
    j["terms"] = terms;
  } else if (const auto* alt = std::get_if<AlternatingSeq>(&seq)) {
    j["kind"] = "alternating";
    j["c"] = alt->c.str();
    j["d"] = alt->d.str();
    j["m"] = alt->m;
  } else if (const auto* geo = std::get_if<GeometricSeq>(&seq)) {
    j["kind"] = "geometric";
    j["target"] = geo->target.str();
    j["delta0"] = geo->delta0.str();
    j["ratio"] = geo->ratio.str();
  } else {
    const auto& osc = std::get<SlowOscSeq>(seq);
    j["kind"] = "slow_osc";
    j["c"] = osc.c.str();
    j["deep"] = osc.deep.str();
    j["shallow"] = osc.shallow.str();
    j["m"] = osc.m;
  }
  return j;
}

std::vector<LevelParams> levels_from_json(const json& arr) {
  if (!arr.is_array() || arr.empty()) throw Error("config: 'levels' must be a non-empty array");
  std::vector<LevelParams> levels;
  for (const auto& e : arr) {
    LevelParams lv;
    lv.k = parse_int(need_string(e, "k"));
    lv.ell = parse_int(need_string(e, "ell"));
    if (e.contains("r")) {
      Transition t;
      t.r = parse_int(need_string(e, "r"));
      t.p = parse_int(need_string(e, "p"));
      t.kappa = parse_int(need_string(e, "kappa"));
      t.appendix = appendix_from_string(need_string(e, "appendix"));
      lv.next = t;
    }
    levels.push_back(std::move(lv));
  }
  return levels;
}

}  // namespace

FamilyConfig family_config_from_json(const nlohmann::json& j) {
  FamilyConfig cfg;
  if (!j.is_object()) throw Error("config: top level must be an object");
  cfg.alphabet_size = j.value("alphabet_size", 2U);
  if (cfg.alphabet_size < 2) throw Error("config: alphabet_size must be >= 2");
  cfg.t0_variant = t0_variant_from_string(need_string(j, "t0_variant"));

  if (j.contains("q")) cfg.seq = seq_from_json(j.at("q"));
  if (j.contains("q_terms")) {
    std::vector<Rat> terms;
    for (const auto& t : j.at("q_terms")) terms.push_back(Rat::parse(t.get<std::string>()));
    cfg.q_terms = std::move(terms);
  }
  if (!cfg.seq && !cfg.q_terms)
    throw Error("config: needs a 'q' source or explicit 'q_terms'");

  if (j.contains("growth")) {
    const auto& g = j.at("growth");
    cfg.policy.min_ell = GrowthSpec::parse(need_string(g, "min_ell"));
    cfg.policy.min_ratio = GrowthSpec::parse(need_string(g, "min_ratio"));
  }

  if (j.contains("levels")) cfg.levels = levels_from_json(j.at("levels"));

  if (j.contains("n_levels")) {
    cfg.n_levels = j.at("n_levels").get<std::size_t>();
  } else if (cfg.levels) {
    cfg.n_levels = cfg.levels->size() - 1;
  } else if (cfg.q_terms) {
    if (cfg.q_terms->empty()) throw Error("config: empty q_terms");
    cfg.n_levels = cfg.q_terms->size() - 1;
  } else if (const auto* ex = std::get_if<ExplicitSeq>(&*cfg.seq)) {
    if (ex->terms.empty()) throw Error("config: empty explicit sequence");
    cfg.n_levels = ex->terms.size() - 1;
  } else {
    throw Error("config: builtin sequences need an explicit n_levels");
  }
  if (cfg.levels && cfg.levels->size() != cfg.n_levels + 1)
    throw Error("config: levels array does not match n_levels + 1");
  return cfg;
}

FamilyConfig load_family_config(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw Error("config '" + path + "': " + e.what());
  }
  return family_config_from_json(j);
}

std::vector<Rat> realized_terms(const FamilyConfig& cfg) {
  if (cfg.q_terms) {
    if (cfg.q_terms->size() < cfg.n_levels + 1)
      throw Error("config: q_terms shorter than n_levels + 1");
    return std::vector<Rat>(cfg.q_terms->begin(),
                            cfg.q_terms->begin() + static_cast<std::ptrdiff_t>(cfg.n_levels + 1));
  }
  std::vector<Rat> terms;
  terms.reserve(cfg.n_levels + 1);
  for (std::size_t i = 0; i <= cfg.n_levels; ++i) terms.push_back(q_at(*cfg.seq, i));
  return terms;
}

TreeFamily build_family(const FamilyConfig& cfg) {
  if (cfg.levels) {
    TreeFamily fam;
    fam.alphabet_size = cfg.alphabet_size;
    fam.t0_variant = cfg.t0_variant;
    fam.levels = *cfg.levels;
    return fam;
  }
  QSequence seq = cfg.seq ? *cfg.seq : QSequence(ExplicitSeq{*cfg.q_terms});
  return derive_family(seq, cfg.n_levels, cfg.policy, cfg.t0_variant, cfg.alphabet_size);
}

nlohmann::json family_doc_to_json(const FamilyConfig& cfg, const TreeFamily& fam) {
  json doc;
  doc["alphabet_size"] = fam.alphabet_size;
  doc["t0_variant"] = to_string(fam.t0_variant);
  doc["growth"] = {{"min_ell", cfg.policy.min_ell.str()},
                   {"min_ratio", cfg.policy.min_ratio.str()}};
  if (cfg.seq) doc["q"] = seq_to_json(*cfg.seq);

  json terms = json::array();
  for (const auto& q : realized_terms(cfg)) terms.push_back(q.str());
  doc["q_terms"] = terms;

  json levels = json::array();
  for (std::size_t i = 0; i < fam.level_count(); ++i) {
    const auto& lv = fam.levels[i];
    json e;
    e["i"] = i;
    e["k"] = lv.k.get_str();
    e["ell"] = lv.ell.get_str();
    if (lv.next) {
      e["r"] = lv.next->r.get_str();
      e["p"] = lv.next->p.get_str();
      e["kappa"] = lv.next->kappa.get_str();
      e["appendix"] = to_string(lv.next->appendix);
    }
    levels.push_back(std::move(e));
  }
  doc["levels"] = levels;
  doc["n_levels"] = fam.level_count() - 1;
  return doc;
}

std::string structure_csv(const ExponentFn& fn, const Int& max_len) {
  if (max_len < 1) throw Error("structure table needs max_len >= 1");
  if (max_len > 1000000) throw Error("structure table with > 10^6 rows; pick a smaller max_len");
  std::ostringstream out;
  out << "ell,exponent,density_num,density_den\n";
  for (Int ell = 1; ell <= max_len; ++ell) {
    Int e = fn.exponent(ell);
    Rat d(e, ell);
    out << ell.get_str() << ',' << e.get_str() << ',' << d.num().get_str() << ','
        << d.den().get_str() << '\n';
  }
  return out.str();
}

std::string structure_jsonlike(const ExponentFn& fn, const Int& max_len) {
  if (max_len < 1) throw Error("structure table needs max_len >= 1");
  if (max_len > 1000000) throw Error("structure table with > 10^6 rows; pick a smaller max_len");
  json rows = json::array();
  for (Int ell = 1; ell <= max_len; ++ell) {
    Int e = fn.exponent(ell);
    Rat d(e, ell);
    rows.push_back({{"ell", ell.get_str()},
                    {"exponent", e.get_str()},
                    {"density_num", d.num().get_str()},
                    {"density_den", d.den().get_str()}});
  }
  return json{{"rows", rows}}.dump(2) + "\n";
}

std::string witness_csv(const std::vector<WitnessRecord>& records) {
  std::ostringstream out;
  out << "level,q,ell,thm2_exp_num,thm2_exp_den,borderline_exp_num,"
         "borderline_exp_den,scan_flag\n";
  for (const auto& r : records) {
    out << r.level << ',' << r.q.str() << ',' << r.ell.get_str() << ','
        << r.thm2_exp.num().get_str() << ',' << r.thm2_exp.den().get_str() << ','
        << r.borderline_exp.num().get_str() << ',' << r.borderline_exp.den().get_str()
        << ',' << (r.scan_flag ? 1 : 0) << '\n';
  }
  return out.str();
}

nlohmann::json gale_table_to_json(const GaleTable& table) {
  json j;
  if (table.sigma) j["sigma"] = table.sigma->str();
  j["alphabet_size"] = table.alphabet_size;
  json values = json::object();
  for (const auto& [w, v] : table.values)
    values[format_word(w, table.alphabet_size)] = v.str(table.alphabet_size);
  j["values"] = values;
  return j;
}

GaleTable gale_table_from_json(const nlohmann::json& j) {
  GaleTable table;
  if (!j.is_object()) throw Error("gale table: top level must be an object");
  table.alphabet_size = j.value("alphabet_size", 2U);
  if (table.alphabet_size < 2) throw Error("gale table: alphabet_size must be >= 2");
  if (j.contains("sigma")) table.sigma = Rat::parse(j.at("sigma").get<std::string>());
  if (!j.contains("values") || !j.at("values").is_object())
    throw Error("gale table: missing 'values' object");
  for (const auto& [key, val] : j.at("values").items()) {
    Word w = parse_word(key, table.alphabet_size);
    table.values.emplace(std::move(w),
                         GaleValue::parse(val.get<std::string>(), table.alphabet_size));
  }
  return table;
}

GaleTable load_gale_table(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("gale table '" + path + "': " + e.what());
  }
  return gale_table_from_json(j);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace treedim
