#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eocos/fixed.hpp"
#include "eocos/relations.hpp"
#include "eocos/structure.hpp"

namespace eocos {

// Every value is provisional; defaults are the engine's starting point, not
// measured quantities.
struct MontageConfig {
  Coefficient alpha = Coefficient::from_micro(500'000);  // resemblance strengthening
  Coefficient beta_enabling = Coefficient::from_micro(250'000);
  Coefficient beta_preventing = Coefficient::from_micro(-500'000);
  Coefficient beta_triggering = Coefficient::from_micro(500'000);
  Coefficient gamma = Coefficient::from_micro(250'000);  // opposition attenuation
  Coefficient kappa = Coefficient::from_micro(0);        // contiguity
  int rounds = 1;
  Intensity tau = Intensity::from_micro(1);                // scope threshold
  Intensity i_max = Intensity::units(10);                  // intensity cap
  Intensity rho = Intensity::from_micro(0);                // crossing gate
  Coefficient sigma = kDefaultSigma;                       // resemblance threshold
  bool resolve = false;

  Coefficient beta(CausationClass c) const;

  friend bool operator==(const MontageConfig&, const MontageConfig&) = default;
};

// Describes the first violated config invariant, if any.
std::optional<std::string> config_problem(const MontageConfig& cfg);

struct IntensityDelta {
  int round = 1;
  ActionPoint source;
  UnitId target;
  std::int64_t amount_micro = 0;

  friend bool operator==(const IntensityDelta&, const IntensityDelta&) = default;
};

struct ScopeOfEffect {
  std::set<UnitId> members;

  friend bool operator==(const ScopeOfEffect&, const ScopeOfEffect&) = default;
};

struct UnitOutcome {
  Effect effect_before = Effect::pleasant();
  Effect effect_after = Effect::pleasant();
  Intensity intensity_initial;
  Intensity intensity_final;
  std::vector<CrossBorderMove> applied_moves;

  friend bool operator==(const UnitOutcome&, const UnitOutcome&) = default;
};

struct AggregateEntry {
  UnitId id;
  Effect effect = Effect::pleasant();
  Intensity intensity;

  friend bool operator==(const AggregateEntry&, const AggregateEntry&) = default;
};

// Outcome of one montage run over a whole structure.
struct EoSReport {
  std::map<UnitId, UnitOutcome> units;
  std::vector<ActionPoint> action_points;
  std::vector<IntensityDelta> deltas;
  ScopeOfEffect scope;
  std::vector<AggregateEntry> aggregate;

  friend bool operator==(const EoSReport&, const EoSReport&) = default;
};

// One synchronous round over a fixed action-point set. Every delta reads the
// round-start snapshot; per-unit sums are clamped to [0, i_max] afterwards.
// Zero-amount deltas are not recorded.
std::pair<Structure, std::vector<IntensityDelta>> montage_round(const Structure& s,
                                                                const std::vector<ActionPoint>& points,
                                                                const MontageConfig& cfg, int round = 1);

// Same, deriving the action points from the structure first. Throws
// EngineError(InvalidStructure) for an invalid structure.
std::pair<Structure, std::vector<IntensityDelta>> montage_round(const Structure& s,
                                                                const MontageConfig& cfg);

// Units whose absolute cumulative delta reaches tau.
ScopeOfEffect scope_of_effect(const std::vector<IntensityDelta>& deltas, Intensity tau);

enum class ChoiceSide { A, B };

struct Choice {
  bool hesitation = true;
  ChoiceSide chosen = ChoiceSide::A;  // meaningful only when !hesitation

  friend bool operator==(const Choice&, const Choice&) = default;
};

// Hesitation when the two intensities lie within epsilon of each other;
// otherwise a smooth choice of the stronger side.
Choice classify_choice(Intensity a, Intensity b, Intensity epsilon);

// The mixture, reported extensionally: each unit's effect and intensity in id
// order.
std::vector<AggregateEntry> aggregate_eos(const Structure& s);

// Full EoS process: rounds of montage, scope, optional gated resolution.
// Throws EngineError(InvalidStructure / InvalidConfig).
EoSReport run_eos(const Structure& s, const MontageConfig& cfg);

}  // namespace eocos
