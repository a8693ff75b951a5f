#include "pact/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "pact/decomp.hpp"

namespace pact {

using nlohmann::json;

namespace {

[[noreturn]] void shape_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

std::string line_column(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string label_text(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  shape_error(path, "expected a point label (string or integer)");
}

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) shape_error(path, std::string("missing field '") + key + "'");
  return *it;
}

int element_key(const std::string& key, const std::string& path) {
  std::size_t used = 0;
  int g = -1;
  try {
    g = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) shape_error(path + "/" + key, "group element keys are decimal indices");
  return g;
}

FiniteGroup parse_group(const json& j) {
  if (!j.is_object()) shape_error("group", "expected an object");
  if (j.contains("table")) {
    const json& t = j["table"];
    if (!t.is_array()) shape_error("group/table", "expected a square matrix");
    FiniteGroup::Table table;
    for (std::size_t r = 0; r < t.size(); ++r) {
      const std::string path = "group/table/" + std::to_string(r);
      if (!t[r].is_array() || t[r].size() != t.size()) shape_error(path, "expected a row of length " + std::to_string(t.size()));
      std::vector<int> row;
      for (std::size_t c = 0; c < t[r].size(); ++c) {
        if (!t[r][c].is_number_integer()) shape_error(path + "/" + std::to_string(c), "expected an element index");
        row.push_back(t[r][c].get<int>());
      }
      table.push_back(std::move(row));
    }
    return FiniteGroup::from_table(std::move(table));
  }
  const json& fam = member(j, "family", "group");
  if (!fam.is_string()) shape_error("group/family", "expected a string");
  int n = 0;
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) shape_error("group/n", "expected an integer");
    n = j["n"].get<int>();
  }
  return FiniteGroup::named(fam.get<std::string>(), n);
}

PartialAction build(const json& j) {
  if (!j.is_object()) shape_error("(root)", "expected an object");
  FiniteGroup group = parse_group(member(j, "group", "(root)"));

  const json& carrier = member(j, "carrier", "(root)");
  if (!carrier.is_array()) shape_error("carrier", "expected a list of labels");
  PartialActionData data{group, static_cast<int>(carrier.size()), {}, {}, {}};
  std::map<std::string, int> point;
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    std::string label = label_text(carrier[i], "carrier/" + std::to_string(i));
    if (!point.emplace(label, static_cast<int>(i)).second)
      shape_error("carrier/" + std::to_string(i), "duplicate label '" + label + "'");
    data.labels.push_back(std::move(label));
  }
  auto lookup = [&](const json& v, const std::string& path) {
    const std::string label = label_text(v, path);
    auto it = point.find(label);
    if (it == point.end())
      throw InstanceInvalid(Error(ErrorCode::PointOutOfRange, path + ": unknown label '" + label + "'"));
    return it->second;
  };
  auto element = [&](const std::string& key, const std::string& path) {
    const int g = element_key(key, path);
    if (!group.contains(g))
      throw InstanceInvalid(Error(ErrorCode::ElementOutOfRange, path + "/" + key + ": no such element", {g}));
    return g;
  };

  data.domains.assign(group.order(), {});
  data.maps.assign(group.order(), {});
  const json& domains = member(j, "domains", "(root)");
  if (!domains.is_object()) shape_error("domains", "expected an object keyed by group element");
  for (const auto& [key, list] : domains.items()) {
    const int g = element(key, "domains");
    const std::string path = "domains/" + key;
    if (!list.is_array()) shape_error(path, "expected a list of labels");
    for (std::size_t i = 0; i < list.size(); ++i) data.domains[g].push_back(lookup(list[i], path + "/" + std::to_string(i)));
  }
  const json& maps = member(j, "maps", "(root)");
  if (!maps.is_object()) shape_error("maps", "expected an object keyed by group element");
  for (const auto& [key, list] : maps.items()) {
    const int g = element(key, "maps");
    const std::string path = "maps/" + key;
    if (!list.is_array()) shape_error(path, "expected a list of [source, target] pairs");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = path + "/" + std::to_string(i);
      if (!list[i].is_array() || list[i].size() != 2) shape_error(at, "malformed mapping pair, expected [source, target]");
      data.maps[g].emplace_back(lookup(list[i][0], at + "/0"), lookup(list[i][1], at + "/1"));
    }
  }
  return PartialAction::validate(data);
}

std::vector<std::string> fraction_strings(const Vector<Rational>& v) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_fraction_string(v[i]));
  return out;
}

RokhlinSection rokhlin_section(const PartialAction& pa, const SearchOptions& so) {
  RokhlinSection s;
  try {
    const RokhlinDimension rd = rokhlin_dimension(pa, so);
    s.value = rd.value;
    s.commuting = rd.commuting;
    if (rd.certificate) {
      s.certificate_d = rd.certificate->d;
      for (const auto& level : rd.certificate->levels) s.certificate_levels.push_back(fraction_strings(level));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SearchBudgetExceeded) throw;
    s.budget_exceeded = true;
    s.budget_note = e.what();
  }
  return s;
}

json rokhlin_json(const RokhlinSection& s) {
  json j;
  j["budgetExceeded"] = s.budget_exceeded;
  if (s.budget_exceeded) {
    j["budgetNote"] = s.budget_note;
    j["dimension"] = nullptr;
    j["commuting"] = nullptr;
  } else {
    j["dimension"] = dimension_json(s.value);
    j["commuting"] = dimension_json(s.commuting);
  }
  if (s.certificate_d >= 0)
    j["certificate"] = {{"d", s.certificate_d}, {"levels", s.certificate_levels}};
  else
    j["certificate"] = nullptr;
  return j;
}

std::optional<int> dimension_from(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "infinity") return std::nullopt;
  if (j.is_number_integer()) return j.get<int>();
  shape_error(path, "expected an integer or \"infinity\"");
}

RokhlinSection rokhlin_from(const json& j, const std::string& path) {
  RokhlinSection s;
  s.budget_exceeded = j.at("budgetExceeded").get<bool>();
  if (s.budget_exceeded) {
    s.budget_note = j.at("budgetNote").get<std::string>();
  } else {
    s.value = dimension_from(j.at("dimension"), path + "/dimension");
    s.commuting = dimension_from(j.at("commuting"), path + "/commuting");
  }
  const json& c = j.at("certificate");
  if (!c.is_null()) {
    s.certificate_d = c.at("d").get<int>();
    s.certificate_levels = c.at("levels").get<std::vector<std::vector<std::string>>>();
  }
  return s;
}

}  // namespace

PartialAction parse_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, line_column(text, e.byte) + ": " + e.what());
  }
  try {
    return build(j);
  } catch (const InstanceInvalid&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw InstanceInvalid(e);
  }
}

PartialAction read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

json serialize_instance(const PartialAction& pa) {
  const FiniteGroup& G = pa.group();
  json j;
  if (G.family() == "table")
    j["group"] = {{"table", G.table()}};
  else
    j["group"] = {{"family", G.family()}, {"n", G.family_parameter()}};
  j["carrier"] = pa.labels();
  json domains = json::object(), maps = json::object();
  for (int g = 0; g < G.order(); ++g) {
    json dom = json::array(), pairs = json::array();
    for (int x : pa.domain(g)) dom.push_back(pa.labels()[x]);
    for (int x = 0; x < pa.size(); ++x)
      if (pa.defined(g, x)) pairs.push_back({pa.labels()[x], pa.labels()[pa.apply(g, x)]});
    domains[std::to_string(g)] = dom;
    maps[std::to_string(g)] = pairs;
  }
  j["domains"] = domains;
  j["maps"] = maps;
  return j;
}

std::string instance_text(const PartialAction& pa) { return serialize_instance(pa).dump(); }

std::string instance_digest(const PartialAction& pa) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : instance_text(pa)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json dimension_json(const std::optional<int>& d) {
  if (d) return *d;
  return "infinity";
}

json certificate_json(const TowerCertificate& cert) {
  json levels = json::array();
  for (const auto& level : cert.levels) levels.push_back(fraction_strings(level));
  return {{"d", cert.d}, {"levels", levels}};
}

json nonexistence_json(const NonexistenceProof& proof) {
  return {{"d", proof.d},
          {"orbit", proof.orbit},
          {"maximalSupports", proof.maximal_supports},
          {"patterns", proof.patterns}};
}

Report analyze(const PartialAction& pa, const AnalyzeOptions& options) {
  Report r;
  r.digest = instance_digest(pa);
  r.seed = options.seed;
  r.budget = options.budget;
  r.group = pa.group().name();
  r.group_order = pa.group().order();
  r.carrier_size = pa.size();

  const FreenessResult fr = is_free(pa);
  r.free = fr.free;
  if (fr.witness) r.freeness_witness = {fr.witness->first, fr.witness->second};

  const TranslationGroupoid tg = translation_groupoid(pa);
  for (std::size_t k = 0; k < tg.orbits.size(); ++k) r.orbits.push_back({tg.orbits[k], tg.stabilizers[k].members});

  SearchOptions so;
  so.budget = options.budget;

  r.decomposition_degree = decomposition_degree(pa);
  r.strata = stratification(pa).strata;
  if (r.decomposition_degree > 0) {
    for (const auto& part : orbit_type_decomposition(pa, r.decomposition_degree)) {
      const RokhlinSection sub = rokhlin_section(global_subsystem(pa, part.tau).action, so);
      OrbitTypeSummary s{part.tau, part.points, part.x_tau, part.stabilizer.members, sub.value, sub.budget_exceeded};
      r.orbit_types.push_back(std::move(s));
    }
  }

  r.rokhlin = rokhlin_section(pa, so);

  const CrossedProduct cp = crossed_product(pa);
  r.crossed_product_dimension = cp.algebra.dimension();
  const FDCStarAlgebra blocks = block_structure(cp.algebra, options.seed);
  r.crossed_product_blocks = blocks.blocks;
  r.integrality_residual = blocks.integrality_residual;
  r.crossed_product_blocks_combinatorial = crossed_product_blocks_combinatorial(pa, options.seed).blocks;
  const FDCStarAlgebra fixed = fixed_point_algebra(pa);
  r.fixed_point_blocks = fixed.blocks;
  r.morita = morita_equivalent(fixed, blocks);
  r.bimodule = imprimitivity_bimodule_verify(pa);

  const GlobalizationResult gr = globalize(pa);
  r.envelope_size = gr.envelope.size();
  r.embedding = gr.embedding;
  r.splitting = gr.splitting;
  r.globalization_verified = verify_globalization(pa, gr).ok;
  r.globalization_unique = check_globalization_uniqueness(pa, gr).ok;
  r.envelope_rokhlin = rokhlin_section(gr.envelope, so);
  return r;
}

json to_json(const Report& r) {
  json j;
  j["schema"] = r.schema;
  j["toolVersion"] = r.tool_version;
  j["instanceDigest"] = r.digest;
  j["seeds"] = {{"blockStructure", r.seed}};
  j["budget"] = r.budget;
  j["instance"] = {{"group", r.group}, {"groupOrder", r.group_order}, {"carrierSize", r.carrier_size}};
  j["freeness"] = {{"free", r.free}, {"witness", r.freeness_witness}};
  json orbits = json::array();
  for (const auto& o : r.orbits) orbits.push_back({{"points", o.points}, {"stabilizer", o.stabilizer}});
  j["orbits"] = orbits;
  json types = json::array();
  for (const auto& t : r.orbit_types)
    types.push_back({{"tau", t.tau},
                     {"points", t.points},
                     {"xTau", t.x_tau},
                     {"stabilizer", t.stabilizer},
                     {"rokhlinDimension", t.budget_exceeded ? json(nullptr) : dimension_json(t.rokhlin)}});
  j["decomposability"] = {{"degree", r.decomposition_degree}, {"strata", r.strata}, {"orbitTypes", types}};
  j["rokhlin"] = rokhlin_json(r.rokhlin);
  j["crossedProduct"] = {{"dimension", r.crossed_product_dimension},
                         {"blocks", r.crossed_product_blocks},
                         {"combinatorialBlocks", r.crossed_product_blocks_combinatorial},
                         {"integralityResidual", r.integrality_residual}};
  j["fixedPoint"] = {{"blocks", r.fixed_point_blocks}};
  const BimoduleReport& b = r.bimodule;
  j["morita"] = {{"equivalent", r.morita},
                 {"bimodule",
                  {{"centralUnit", b.central_unit},
                   {"positivity", b.positivity},
                   {"compatibility", b.compatibility},
                   {"leftFull", b.left_full},
                   {"rightFull", b.right_full},
                   {"spanDimension", b.span_dimension},
                   {"algebraDimension", b.algebra_dimension}}}};
  j["globalization"] = {{"envelopeSize", r.envelope_size},
                        {"embedding", r.embedding},
                        {"splitting", r.splitting},
                        {"verified", r.globalization_verified},
                        {"unique", r.globalization_unique},
                        {"rokhlin", rokhlin_json(r.envelope_rokhlin)}};
  return j;
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema) shape_error("schema", "unsupported schema '" + r.schema + "'");
    r.tool_version = j.at("toolVersion").get<std::string>();
    r.digest = j.at("instanceDigest").get<std::string>();
    r.seed = j.at("seeds").at("blockStructure").get<std::uint64_t>();
    r.budget = j.at("budget").get<std::uint64_t>();
    const json& inst = j.at("instance");
    r.group = inst.at("group").get<std::string>();
    r.group_order = inst.at("groupOrder").get<int>();
    r.carrier_size = inst.at("carrierSize").get<int>();
    r.free = j.at("freeness").at("free").get<bool>();
    r.freeness_witness = j.at("freeness").at("witness").get<std::vector<int>>();
    for (const json& o : j.at("orbits"))
      r.orbits.push_back({o.at("points").get<std::vector<int>>(), o.at("stabilizer").get<std::vector<int>>()});
    const json& dec = j.at("decomposability");
    r.decomposition_degree = dec.at("degree").get<int>();
    r.strata = dec.at("strata").get<std::vector<std::vector<int>>>();
    for (const json& t : dec.at("orbitTypes")) {
      OrbitTypeSummary s{t.at("tau").get<std::vector<int>>(), t.at("points").get<std::vector<int>>(),
                         t.at("xTau").get<std::vector<int>>(), t.at("stabilizer").get<std::vector<int>>(),
                         std::nullopt, false};
      const json& d = t.at("rokhlinDimension");
      if (d.is_null())
        s.budget_exceeded = true;
      else
        s.rokhlin = dimension_from(d, "decomposability/orbitTypes/rokhlinDimension");
      r.orbit_types.push_back(std::move(s));
    }
    r.rokhlin = rokhlin_from(j.at("rokhlin"), "rokhlin");
    const json& cp = j.at("crossedProduct");
    r.crossed_product_dimension = cp.at("dimension").get<int>();
    r.crossed_product_blocks = cp.at("blocks").get<std::vector<int>>();
    r.crossed_product_blocks_combinatorial = cp.at("combinatorialBlocks").get<std::vector<int>>();
    r.integrality_residual = cp.at("integralityResidual").get<double>();
    r.fixed_point_blocks = j.at("fixedPoint").at("blocks").get<std::vector<int>>();
    const json& m = j.at("morita");
    r.morita = m.at("equivalent").get<bool>();
    const json& b = m.at("bimodule");
    r.bimodule.central_unit = b.at("centralUnit").get<bool>();
    r.bimodule.positivity = b.at("positivity").get<bool>();
    r.bimodule.compatibility = b.at("compatibility").get<bool>();
    r.bimodule.left_full = b.at("leftFull").get<bool>();
    r.bimodule.right_full = b.at("rightFull").get<bool>();
    r.bimodule.span_dimension = b.at("spanDimension").get<int>();
    r.bimodule.algebra_dimension = b.at("algebraDimension").get<int>();
    const json& g = j.at("globalization");
    r.envelope_size = g.at("envelopeSize").get<int>();
    r.embedding = g.at("embedding").get<std::vector<int>>();
    r.splitting = g.at("splitting").get<std::vector<std::vector<int>>>();
    r.globalization_verified = g.at("verified").get<bool>();
    r.globalization_unique = g.at("unique").get<bool>();
    r.envelope_rokhlin = rokhlin_from(g.at("rokhlin"), "globalization/rokhlin");
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("report: ") + e.what());
  }
}

}  // namespace pact
