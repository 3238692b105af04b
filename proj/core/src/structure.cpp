#include "eocos/structure.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "eocos/error.hpp"

namespace eocos {

std::string_view to_string(CausationClass c) {
  switch (c) {
    case CausationClass::Enabling:
      return "enabling";
    case CausationClass::Preventing:
      return "preventing";
    case CausationClass::Triggering:
      return "triggering";
  }
  return "?";
}

std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Resemblance:
      return "resemblance";
    case RelationKind::Contiguity:
      return "contiguity";
    case RelationKind::Causation:
      return "causation";
    case RelationKind::Opposition:
      return "opposition";
  }
  return "?";
}

Relation Relation::resemblance(UnitId a, UnitId b) {
  return Relation{RelationKind::Resemblance, std::move(a), std::move(b), {}, {}};
}

Relation Relation::contiguity(UnitId a, UnitId b, ItemId via) {
  return Relation{RelationKind::Contiguity, std::move(a), std::move(b), std::move(via), {}};
}

Relation Relation::causation(UnitId a, UnitId b, CausationClass c) {
  return Relation{RelationKind::Causation, std::move(a), std::move(b), {}, c};
}

std::pair<const UnitId&, const UnitId&> Relation::endpoints() const {
  if (!directed() && b < a) return {b, a};
  return {a, b};
}

bool relation_less(const Relation& l, const Relation& r) {
  const auto [la, lb] = l.endpoints();
  const auto [ra, rb] = r.endpoints();
  return std::tie(l.kind, la, lb, l.via, l.cause) < std::tie(r.kind, ra, rb, r.via, r.cause);
}

std::vector<std::string> structure_problems(const Structure& s) {
  std::vector<std::string> out;
  for (const auto& [id, unit] : s.units) {
    if (unit.id != id) out.push_back("unit keyed as " + id + " carries id " + unit.id);
    for (auto& p : unit_problems(unit)) out.push_back(std::move(p));
  }
  std::set<std::tuple<RelationKind, UnitId, UnitId>> seen;
  for (const auto& rel : s.relations) {
    const std::string label = std::string(to_string(rel.kind)) + " " + rel.a + "/" + rel.b;
    if (rel.kind == RelationKind::Opposition) {
      out.push_back(label + ": opposition cannot be declared");
      continue;
    }
    const auto ia = s.units.find(rel.a);
    const auto ib = s.units.find(rel.b);
    if (ia == s.units.end()) out.push_back(label + ": unknown endpoint " + rel.a);
    if (ib == s.units.end()) out.push_back(label + ": unknown endpoint " + rel.b);
    if (rel.a == rel.b) out.push_back(label + ": relation connects a unit to itself");
    const auto [ca, cb] = rel.endpoints();
    if (!seen.emplace(rel.kind, ca, cb).second) out.push_back(label + ": duplicate relation");
    if (rel.kind == RelationKind::Contiguity && ia != s.units.end() && ib != s.units.end()) {
      if (!ia->second.items.contains(rel.via) || !ib->second.items.contains(rel.via)) {
        out.push_back(label + ": via item '" + rel.via + "' is not shared by both units");
      }
    }
  }
  return out;
}

void require_valid(const Structure& s) {
  const auto problems = structure_problems(s);
  if (!problems.empty()) throw EngineError(ErrorCode::InvalidStructure, problems.front());
}

Structure canonical(Structure s) {
  for (auto& rel : s.relations) {
    if (!rel.directed() && rel.b < rel.a) std::swap(rel.a, rel.b);
  }
  std::sort(s.relations.begin(), s.relations.end(), relation_less);
  return s;
}

}  // namespace eocos
