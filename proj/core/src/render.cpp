#include "eocos/render.hpp"

#include <map>
#include <sstream>
#include <tuple>

#include "eocos/error.hpp"
#include "json_forms.hpp"

namespace eocos {

namespace {

// Only '"' is escaped; backslashes are left for label escapes.
std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Escapes record-label metacharacters.
std::string record_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '{' || c == '}' || c == '|' || c == '<' || c == '>' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string compartment(const EoCoS& unit, const Placement& shown, Side side) {
  std::string out = std::string(to_string(side)) + ":";
  bool first = true;
  for (const auto& [item, where] : shown) {
    if (where != side) continue;
    out += first ? " " : ", ";
    first = false;
    out += unit.items.at(item) == ItemKind::PleasantMarker ? "*pleasant*" : item;
    if (unit.ideal.at(item) != where) out += "!";
  }
  return out;
}

// "{id [effect, I=x]|{near: ..|far: ..}}"
std::string plate_label(const EoCoS& unit, const EoCoS& shown) {
  const std::string header = unit.id + " [" + (compare(shown).is_pleasant() ? "Pleasant" : "Unpleasant") +
                             ", I=" + format_fixed(shown.intensity.micro) + "]";
  return "{" + record_escape(header) + "|{" + record_escape(compartment(unit, shown.actual, Side::Near)) + "|" +
         record_escape(compartment(unit, shown.actual, Side::Far)) + "}}";
}

using PointKey = std::tuple<RelationKind, std::string_view, std::string_view>;

PointKey key_of(const ActionPoint& p) { return {p.relation.kind, p.relation.a, p.relation.b}; }

std::string edge_attributes(const ActionPoint& p) {
  switch (p.relation.kind) {
    case RelationKind::Resemblance:
      return "dir=none, style=dashed";
    case RelationKind::Contiguity:
      return "dir=none, style=dotted";
    case RelationKind::Causation:
      return "style=solid";
    case RelationKind::Opposition:
      return "dir=none, style=bold";
  }
  return {};
}

std::string edge_label(const ActionPoint& p) {
  switch (p.relation.kind) {
    case RelationKind::Resemblance:
      return {};
    case RelationKind::Contiguity:
      return "via " + p.relation.via;
    case RelationKind::Causation:
      return std::string(to_string(p.relation.cause));
    case RelationKind::Opposition:
      return "opp";
  }
  return {};
}

}  // namespace

std::string emit_dot(const Structure& s, const EoSReport* report, const RenderOptions& opts) {
  std::vector<ActionPoint> computed;
  const std::vector<ActionPoint>* points = nullptr;
  if (report != nullptr) {
    for (const auto& [id, outcome] : report->units) {
      if (!s.units.contains(id)) throw EngineError(ErrorCode::ReportMismatch, "report names unknown unit " + id);
    }
    for (const auto& p : report->action_points) {
      if (!s.units.contains(p.relation.a) || !s.units.contains(p.relation.b)) {
        throw EngineError(ErrorCode::ReportMismatch,
                          "report action point references unknown unit " + p.relation.a + "/" + p.relation.b);
      }
    }
    for (const auto& d : report->deltas) {
      if (!s.units.contains(d.target)) {
        throw EngineError(ErrorCode::ReportMismatch, "report delta targets unknown unit " + d.target);
      }
    }
    points = &report->action_points;
  } else {
    computed = build_action_points(s);
    points = &computed;
  }

  // Cumulative delta each point delivered to its b endpoint; symmetric modes
  // deliver the same amount to a.
  std::map<PointKey, std::int64_t> delivered;
  if (report != nullptr && opts.show_deltas) {
    for (const auto& d : report->deltas) {
      if (d.target == d.source.relation.b) delivered[key_of(d.source)] += d.amount_micro;
    }
  }

  std::ostringstream out;
  out << "digraph eos {\n";
  out << "  rankdir=" << (opts.rankdir == RankDir::LR ? "LR" : "TB") << ";\n";
  out << "  node [shape=record];\n";
  for (const auto& [id, unit] : s.units) {
    EoCoS shown = unit;
    if (report != nullptr && opts.after_montage) {
      if (auto it = report->units.find(id); it != report->units.end()) {
        try {
          shown = apply_moves(unit, it->second.applied_moves);
        } catch (const EngineError& e) {
          throw EngineError(ErrorCode::ReportMismatch, e.what());
        }
        shown.intensity = it->second.intensity_final;
      }
    }
    out << "  " << dot_quote(id) << " [label=" << dot_quote(plate_label(unit, shown)) << "];\n";
  }
  for (const auto& p : *points) {
    std::string label = edge_label(p);
    if (report != nullptr && opts.show_deltas) {
      auto it = delivered.find(key_of(p));
      const std::int64_t amount = it == delivered.end() ? 0 : it->second;
      if (!label.empty()) label += " ";
      label += "Δ=" + format_signed(amount);
    }
    out << "  " << dot_quote(p.relation.a) << " -> " << dot_quote(p.relation.b) << " [" << edge_attributes(p);
    if (!label.empty()) out << ", label=" << dot_quote(label);
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit_trace_json(const EoSReport& report) {
  nlohmann::json deltas = nlohmann::json::array();
  for (const auto& d : report.deltas) deltas.push_back(detail::to_json(d));
  return nlohmann::json{{"deltas", std::move(deltas)}}.dump(2) + "\n";
}

}  // namespace eocos
