#include "eocos/report_io.hpp"

#include <sstream>

#include "json_forms.hpp"

namespace eocos {

namespace detail {

using nlohmann::json;

json to_json(const Effect& e) {
  if (e.is_pleasant()) return json{{"kind", "pleasant"}};
  return json{{"kind", "unpleasant"}, {"mismatched", e.mismatched()}};
}

json to_json(const ActionPoint& p) {
  json j{{"kind", to_string(p.relation.kind)},
         {"a", p.relation.a},
         {"b", p.relation.b},
         {"mode", to_string(p.mode)}};
  if (p.relation.kind == RelationKind::Causation) j["class"] = to_string(p.relation.cause);
  if (p.relation.kind == RelationKind::Contiguity) j["via"] = p.relation.via;
  return j;
}

json to_json(const IntensityDelta& d) {
  return json{{"round", d.round},
              {"source", to_json(d.source)},
              {"target", d.target},
              {"amount_micro", d.amount_micro}};
}

}  // namespace detail

std::string report_to_json(const EoSReport& report) {
  using nlohmann::json;
  json units = json::array();
  for (const auto& [id, u] : report.units) {
    json moves = json::array();
    for (const auto& m : u.applied_moves) {
      moves.push_back({{"item", m.item}, {"from", to_string(m.from)}, {"to", to_string(m.to)}});
    }
    units.push_back({{"id", id},
                     {"effect_before", detail::to_json(u.effect_before)},
                     {"effect_after", detail::to_json(u.effect_after)},
                     {"intensity_initial_micro", u.intensity_initial.micro},
                     {"intensity_final_micro", u.intensity_final.micro},
                     {"applied_moves", std::move(moves)}});
  }
  json points = json::array();
  for (const auto& p : report.action_points) points.push_back(detail::to_json(p));
  json deltas = json::array();
  for (const auto& d : report.deltas) deltas.push_back(detail::to_json(d));
  json aggregate = json::array();
  for (const auto& a : report.aggregate) {
    aggregate.push_back(
        {{"id", a.id}, {"effect", detail::to_json(a.effect)}, {"intensity_micro", a.intensity.micro}});
  }
  json root{{"units", std::move(units)},
            {"action_points", std::move(points)},
            {"deltas", std::move(deltas)},
            {"scope", report.scope.members},
            {"aggregate", std::move(aggregate)}};
  return root.dump(2) + "\n";
}

std::string report_to_text(const EoSReport& report) {
  std::ostringstream out;
  for (const auto& [id, u] : report.units) {
    out << "unit " << id << ": " << u.effect_before.describe() << " I "
        << format_fixed(u.intensity_initial.micro) << " -> " << format_fixed(u.intensity_final.micro);
    if (!u.applied_moves.empty()) out << " => " << u.effect_after.describe();
    out << "\n";
    for (const auto& m : u.applied_moves) {
      out << "  cross " << m.item << " " << to_string(m.from) << " -> " << to_string(m.to) << "\n";
    }
  }
  out << "action points: " << report.action_points.size() << "\n";
  out << "deltas: " << report.deltas.size() << "\n";
  out << "scope:";
  if (report.scope.members.empty()) out << " (none)";
  for (const auto& id : report.scope.members) out << " " << id;
  out << "\n";
  return out.str();
}

}  // namespace eocos
