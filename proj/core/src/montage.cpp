#include "eocos/montage.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>

#include "eocos/error.hpp"

namespace eocos {

Coefficient MontageConfig::beta(CausationClass c) const {
  switch (c) {
    case CausationClass::Enabling:
      return beta_enabling;
    case CausationClass::Preventing:
      return beta_preventing;
    case CausationClass::Triggering:
      return beta_triggering;
  }
  return {};
}

std::optional<std::string> config_problem(const MontageConfig& cfg) {
  if (cfg.alpha.micro < 0) return "alpha must be >= 0";
  if (cfg.gamma.micro < 0) return "gamma must be >= 0";
  if (cfg.kappa.micro < 0) return "kappa must be >= 0";
  if (cfg.rounds < 1) return "rounds must be >= 1";
  if (cfg.tau.micro < 0) return "tau must be >= 0";
  if (cfg.i_max.micro < 0) return "i_max must be >= 0";
  if (cfg.rho.micro < 0) return "rho must be >= 0";
  if (cfg.sigma.micro < 0 || cfg.sigma.micro > kMicroPerUnit) return "sigma must lie in [0, 1]";
  return std::nullopt;
}

namespace {

// Action point with endpoints resolved to positions in the unit order.
struct ResolvedPoint {
  const ActionPoint* point;
  std::size_t a;
  std::size_t b;
};

std::vector<ResolvedPoint> resolve_points(const Structure& s, const std::vector<ActionPoint>& points) {
  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(s.units.size());
  std::size_t i = 0;
  for (const auto& [id, unit] : s.units) index.emplace(id, i++);

  std::vector<ResolvedPoint> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    const auto ia = index.find(p.relation.a);
    const auto ib = index.find(p.relation.b);
    if (ia == index.end() || ib == index.end()) {
      throw EngineError(ErrorCode::InvalidStructure,
                        "action point references unknown unit " + p.relation.a + "/" + p.relation.b);
    }
    out.push_back({&p, ia->second, ib->second});
  }
  return out;
}

// Advances `intensity` by one synchronous round, appending non-zero deltas.
void step(std::vector<std::int64_t>& intensity, const std::vector<ResolvedPoint>& points,
          const std::vector<const UnitId*>& ids, const MontageConfig& cfg, int round,
          std::vector<IntensityDelta>& deltas) {
  const std::vector<std::int64_t> snapshot = intensity;
  std::vector<__int128> accum(snapshot.size(), 0);

  const auto emit = [&](const ResolvedPoint& rp, std::size_t target, std::int64_t amount) {
    if (amount == 0) return;
    accum[target] += amount;
    deltas.push_back({round, *rp.point, *ids[target], amount});
  };

  for (const auto& rp : points) {
    const std::int64_t weaker = std::min(snapshot[rp.a], snapshot[rp.b]);
    switch (rp.point->mode) {
      case ActionMode::Strengthen: {
        const std::int64_t d = scale_micro(cfg.alpha, weaker);
        emit(rp, rp.a, d);
        emit(rp, rp.b, d);
        break;
      }
      case ActionMode::Contiguous: {
        const std::int64_t d = scale_micro(cfg.kappa, weaker);
        emit(rp, rp.a, d);
        emit(rp, rp.b, d);
        break;
      }
      case ActionMode::Oppose: {
        const std::int64_t d = -scale_micro(cfg.gamma, weaker);
        emit(rp, rp.a, d);
        emit(rp, rp.b, d);
        break;
      }
      case ActionMode::CausalAct:
        emit(rp, rp.b, scale_micro(cfg.beta(rp.point->relation.cause), snapshot[rp.a]));
        break;
      case ActionMode::Inert:
        break;
    }
  }

  for (std::size_t i = 0; i < intensity.size(); ++i) {
    const __int128 next = snapshot[i] + accum[i];
    intensity[i] = static_cast<std::int64_t>(std::clamp<__int128>(next, 0, cfg.i_max.micro));
  }
}

std::vector<const UnitId*> unit_order(const Structure& s) {
  std::vector<const UnitId*> ids;
  ids.reserve(s.units.size());
  for (const auto& [id, unit] : s.units) ids.push_back(&id);
  return ids;
}

std::vector<std::int64_t> intensities(const Structure& s) {
  std::vector<std::int64_t> out;
  out.reserve(s.units.size());
  for (const auto& [id, unit] : s.units) out.push_back(unit.intensity.micro);
  return out;
}

Structure with_intensities(Structure s, const std::vector<std::int64_t>& values) {
  std::size_t i = 0;
  for (auto& [id, unit] : s.units) unit.intensity = Intensity::from_micro(values[i++]);
  return s;
}

void check_config(const MontageConfig& cfg) {
  if (auto problem = config_problem(cfg)) throw EngineError(ErrorCode::InvalidConfig, *problem);
}

}  // namespace

std::pair<Structure, std::vector<IntensityDelta>> montage_round(const Structure& s,
                                                                const std::vector<ActionPoint>& points,
                                                                const MontageConfig& cfg, int round) {
  check_config(cfg);
  const auto resolved = resolve_points(s, points);
  auto values = intensities(s);
  std::vector<IntensityDelta> deltas;
  step(values, resolved, unit_order(s), cfg, round, deltas);
  return {with_intensities(s, values), std::move(deltas)};
}

std::pair<Structure, std::vector<IntensityDelta>> montage_round(const Structure& s,
                                                                const MontageConfig& cfg) {
  require_valid(s);
  return montage_round(s, build_action_points(s, cfg.sigma), cfg, 1);
}

ScopeOfEffect scope_of_effect(const std::vector<IntensityDelta>& deltas, Intensity tau) {
  std::map<std::string_view, __int128> totals;
  for (const auto& d : deltas) totals[d.target] += d.amount_micro;
  ScopeOfEffect scope;
  for (const auto& [id, total] : totals) {
    const __int128 magnitude = total < 0 ? -total : total;
    if (magnitude >= tau.micro) scope.members.emplace(id);
  }
  return scope;
}

Choice classify_choice(Intensity a, Intensity b, Intensity epsilon) {
  const __int128 gap = static_cast<__int128>(a.micro) - b.micro;
  const __int128 magnitude = gap < 0 ? -gap : gap;
  if (magnitude <= epsilon.micro) return Choice{true, ChoiceSide::A};
  return Choice{false, gap > 0 ? ChoiceSide::A : ChoiceSide::B};
}

std::vector<AggregateEntry> aggregate_eos(const Structure& s) {
  std::vector<AggregateEntry> out;
  out.reserve(s.units.size());
  for (const auto& [id, unit] : s.units) out.push_back({id, compare(unit), unit.intensity});
  return out;
}

EoSReport run_eos(const Structure& s, const MontageConfig& cfg) {
  require_valid(s);
  check_config(cfg);
  for (const auto& [id, unit] : s.units) {
    if (unit.intensity > cfg.i_max) {
      throw EngineError(ErrorCode::InvalidStructure,
                        "unit " + id + " intensity " + format_fixed(unit.intensity.micro) +
                            " exceeds i_max " + format_fixed(cfg.i_max.micro));
    }
  }

  EoSReport report;
  report.action_points = build_action_points(s, cfg.sigma);
  const auto resolved = resolve_points(s, report.action_points);
  const auto ids = unit_order(s);
  auto values = intensities(s);
  for (int round = 1; round <= cfg.rounds; ++round) {
    step(values, resolved, ids, cfg, round, report.deltas);
  }
  report.scope = scope_of_effect(report.deltas, cfg.tau);

  Structure after = with_intensities(s, values);
  for (auto& [id, unit] : after.units) {
    UnitOutcome outcome;
    outcome.effect_before = compare(unit);
    outcome.intensity_initial = s.units.at(id).intensity;
    outcome.intensity_final = unit.intensity;
    if (cfg.resolve && !outcome.effect_before.is_pleasant() && unit.intensity >= cfg.rho) {
      outcome.applied_moves = pseudo_will(unit);
      unit = apply_moves(unit, outcome.applied_moves);
    }
    outcome.effect_after = compare(unit);
    report.units.emplace(id, std::move(outcome));
  }
  report.aggregate = aggregate_eos(after);
  return report;
}

}  // namespace eocos
