#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pact/error.hpp"
#include "pact/fdcstar.hpp"
#include "pact/paction.hpp"
#include "pact/rokhlin.hpp"

namespace pact {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "pact-report/1";

/// A validation failure while reading an instance. code() is ValidationError,
/// cause() the underlying group or partial-action error.
class InstanceInvalid : public Error {
 public:
  explicit InstanceInvalid(const Error& inner)
      : Error(ErrorCode::ValidationError, inner.what(), inner.witness()), cause_(inner.code()) {}
  ErrorCode cause() const noexcept { return cause_; }

 private:
  ErrorCode cause_;
};

/// Reads the JSON instance format (see README). Syntax and shape errors are
/// ParseError with a line:column or a field path; axiom violations are
/// InstanceInvalid.
PartialAction parse_instance(std::string_view text);
PartialAction read_instance_file(const std::string& path);

nlohmann::json serialize_instance(const PartialAction& pa);
std::string instance_text(const PartialAction& pa);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string instance_digest(const PartialAction& pa);

struct AnalyzeOptions {
  std::uint64_t seed = 0x5eed;
  std::uint64_t budget = kDefaultSearchBudget;
};

struct OrbitSummary {
  std::vector<int> points;
  std::vector<int> stabilizer;
  friend bool operator==(const OrbitSummary&, const OrbitSummary&) = default;
};

struct OrbitTypeSummary {
  std::vector<int> tau;
  std::vector<int> points;
  std::vector<int> x_tau;
  std::vector<int> stabilizer;
  std::optional<int> rokhlin;  // of the global subsystem; nullopt is infinity
  bool budget_exceeded = false;
  friend bool operator==(const OrbitTypeSummary&, const OrbitTypeSummary&) = default;
};

struct RokhlinSection {
  bool budget_exceeded = false;
  std::string budget_note;
  std::optional<int> value;
  std::optional<int> commuting;
  int certificate_d = -1;  // -1 when there is no certificate
  std::vector<std::vector<std::string>> certificate_levels;
  friend bool operator==(const RokhlinSection&, const RokhlinSection&) = default;
};

struct Report {
  std::string schema = kReportSchema;
  std::string tool_version = kToolVersion;
  std::string digest;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;

  std::string group;
  int group_order = 0;
  int carrier_size = 0;

  bool free = false;
  std::vector<int> freeness_witness;  // (g, x) or empty

  std::vector<OrbitSummary> orbits;
  int decomposition_degree = 0;
  std::vector<std::vector<int>> strata;
  std::vector<OrbitTypeSummary> orbit_types;

  RokhlinSection rokhlin;

  int crossed_product_dimension = 0;
  std::vector<int> crossed_product_blocks;
  std::vector<int> crossed_product_blocks_combinatorial;
  double integrality_residual = 0.0;
  std::vector<int> fixed_point_blocks;

  bool morita = false;
  BimoduleReport bimodule;

  int envelope_size = 0;
  std::vector<int> embedding;
  std::vector<std::vector<int>> splitting;
  bool globalization_verified = false;
  bool globalization_unique = false;
  RokhlinSection envelope_rokhlin;

  friend bool operator==(const Report&, const Report&) = default;
};

Report analyze(const PartialAction& pa, const AnalyzeOptions& options = {});

nlohmann::json to_json(const Report& r);
/// Inverse of to_json; throws ParseError on schema mismatch.
Report report_from_json(const nlohmann::json& j);

/// Integer or "infinity".
nlohmann::json dimension_json(const std::optional<int>& d);

nlohmann::json certificate_json(const TowerCertificate& cert);
nlohmann::json nonexistence_json(const NonexistenceProof& proof);

}  // namespace pact
