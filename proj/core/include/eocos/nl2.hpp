#pragma once

// NL2: the line-oriented scenario language the engine consumes.
//
//   scenario "education"
//   #pragma allow-cross-subject-resemblance      (optional)
//   config { alpha = 0.5  rounds = 2 }           (optional)
//   eocos e1 {
//     subject: student
//     intensity: 1.0
//     items { student: subject  school: object  p: pleasant }
//     ideal { near: [p, school, student] far: [] }
//     actual { near: [student] far: [p, school] }
//   }
//   resemble e1 ~ e2
//   contiguous e1 - e3 via school
//   cause e3 -> e1 class = enabling
//
// Identifiers match [a-z][a-z0-9_]*; decimals carry at most six fractional
// digits and map exactly onto micro units. `#` starts a line comment.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eocos/montage.hpp"
#include "eocos/structure.hpp"

namespace eocos {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based, in bytes
  int length = 0;  // bytes
  std::size_t offset = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Error, Warning };

// Stable diagnostic codes.
namespace diag {
inline constexpr std::string_view kSyntax = "E001";
inline constexpr std::string_view kDuplicate = "E002";
inline constexpr std::string_view kUnknownReference = "E003";
inline constexpr std::string_view kPleasantMarker = "E004";
inline constexpr std::string_view kPlacementKeys = "E005";
inline constexpr std::string_view kCrossSubjectResemblance = "E006";
inline constexpr std::string_view kIntensityRange = "E007";
inline constexpr std::string_view kSubjectItem = "E008";
inline constexpr std::string_view kSelfRelation = "E009";
inline constexpr std::string_view kConfigRange = "E010";
inline constexpr std::string_view kUnknownPragma = "W001";
}  // namespace diag

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourceSpan span;
  std::vector<SourceSpan> related;  // e.g. the first declaration of a duplicate
};

// "3:7: error E002: duplicate unit id 'e1' (first declared at 1:7)"
std::string format_diagnostic(const Diagnostic& d);

// A partial MontageConfig; unset fields defer to the next layer down.
struct ConfigOverrides {
  std::optional<Coefficient> alpha;
  std::optional<Coefficient> beta_enabling;
  std::optional<Coefficient> beta_preventing;
  std::optional<Coefficient> beta_triggering;
  std::optional<Coefficient> gamma;
  std::optional<Intensity> i_max;
  std::optional<Coefficient> kappa;
  std::optional<Intensity> rho;
  std::optional<int> rounds;
  std::optional<Coefficient> sigma;
  std::optional<Intensity> tau;

  bool empty() const;
  void apply_to(MontageConfig& cfg) const;
  // Fields set in `top` win over fields set here.
  ConfigOverrides layered_under(const ConfigOverrides& top) const;

  friend bool operator==(const ConfigOverrides&, const ConfigOverrides&) = default;
};

// Keys accepted in `config` blocks, config files and (with '-' for '_') CLI
// flags, in canonical order.
const std::vector<std::string_view>& config_keys();

// Sets one key from its decimal text. Returns the diagnostic code and message
// on failure (E001 for unknown key or bad number, E010 for out of range).
std::optional<std::pair<std::string_view, std::string>> set_config_value(ConfigOverrides& cfg,
                                                                         std::string_view key,
                                                                         std::string_view value);

struct ScenarioDoc {
  std::string name;
  Structure structure;
  ConfigOverrides config;
  bool allow_cross_subject_resemblance = false;
};

// Equality up to relation order and undirected endpoint order.
bool structurally_equal(const ScenarioDoc& a, const ScenarioDoc& b);

struct ParseResult {
  std::optional<ScenarioDoc> doc;  // present iff there are no errors
  std::vector<Diagnostic> diagnostics;

  std::size_t error_count() const;
  std::size_t warning_count() const;
  bool has_syntax_errors() const;
};

// Total over arbitrary input: never throws, reports every diagnostic found.
ParseResult parse_scenario(std::string_view text);

// Canonical text: units by id, items sorted, relations in (kind, a, b) order,
// 2-space indentation, trailing newline.
std::string serialize_scenario(const ScenarioDoc& doc);

struct ConfigFileResult {
  ConfigOverrides overrides;
  std::vector<Diagnostic> diagnostics;
};

// `key = value` lines with `#` comments, as read from EOCOS_CONFIG.
ConfigFileResult parse_config_text(std::string_view text);

}  // namespace eocos
