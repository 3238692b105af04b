#include "eocos/relations.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "eocos/error.hpp"

namespace eocos {

std::string_view to_string(ActionMode m) {
  switch (m) {
    case ActionMode::Strengthen:
      return "strengthen";
    case ActionMode::CausalAct:
      return "causal_act";
    case ActionMode::Oppose:
      return "oppose";
    case ActionMode::Contiguous:
      return "contiguous";
    case ActionMode::Inert:
      return "inert";
  }
  return "?";
}

namespace {

// Items that carry content: neither the subject nor the pleasant marker.
bool is_content(const EoCoS& e, const ItemId& id, ItemKind kind) {
  return id != e.subject && kind != ItemKind::PleasantMarker && kind != ItemKind::Subject;
}

// Side relation of `item` to the pleasant marker in the ideal image.
bool ideally_with_pleasant(const EoCoS& e, const ItemId& item) {
  return e.ideal.at(item) == e.ideal.at(e.pleasant_item());
}

}  // namespace

bool detect_resemblance(const EoCoS& a, const EoCoS& b, Coefficient sigma) {
  if (a.subject != b.subject) return false;
  if (compare(a).is_pleasant() != compare(b).is_pleasant()) return false;

  std::int64_t shared = 0;
  std::int64_t total = 0;
  auto ia = a.items.begin();
  auto ib = b.items.begin();
  // Merge walk over the two sorted item maps.
  while (ia != a.items.end() || ib != b.items.end()) {
    const bool take_a = ib == b.items.end() || (ia != a.items.end() && ia->first < ib->first);
    const bool take_b = ia == a.items.end() || (ib != b.items.end() && ib->first < ia->first);
    if (take_a) {
      total += is_content(a, ia->first, ia->second);
      ++ia;
    } else if (take_b) {
      total += is_content(b, ib->first, ib->second);
      ++ib;
    } else {
      const bool ca = is_content(a, ia->first, ia->second);
      const bool cb = is_content(b, ib->first, ib->second);
      total += ca || cb;
      shared += ca && cb;
      ++ia;
      ++ib;
    }
  }
  if (total == 0) return true;
  return static_cast<__int128>(shared) * kMicroPerUnit >= static_cast<__int128>(sigma.micro) * total;
}

bool detect_opposition(const EoCoS& a, const EoCoS& b) {
  if (a.subject != b.subject) return false;
  for (const auto& [item, kind_a] : a.items) {
    if (!is_content(a, item, kind_a)) continue;
    auto jt = b.items.find(item);
    if (jt == b.items.end() || !is_content(b, item, jt->second)) continue;
    if (ideally_with_pleasant(a, item) != ideally_with_pleasant(b, item)) return true;
  }
  return false;
}

namespace {

// Output-sensitive synthesis: within each subject group, index units by the
// content items they ideally keep with / against the pleasant marker, then
// pair the two lists per item.
std::set<std::pair<UnitId, UnitId>> opposing_pairs(const Structure& s) {
  struct Sides {
    std::vector<const UnitId*> with;
    std::vector<const UnitId*> against;
  };
  std::map<ItemId, std::unordered_map<ItemId, Sides>> by_subject;
  for (const auto& [id, unit] : s.units) {
    auto& index = by_subject[unit.subject];
    for (const auto& [item, kind] : unit.items) {
      if (!is_content(unit, item, kind)) continue;
      auto& sides = index[item];
      (ideally_with_pleasant(unit, item) ? sides.with : sides.against).push_back(&id);
    }
  }
  std::set<std::pair<UnitId, UnitId>> pairs;
  for (const auto& [subject, index] : by_subject) {
    for (const auto& [item, sides] : index) {
      for (const UnitId* w : sides.with) {
        for (const UnitId* x : sides.against) {
          if (*w == *x) continue;
          pairs.emplace(std::min(*w, *x), std::max(*w, *x));
        }
      }
    }
  }
  return pairs;
}

}  // namespace

std::vector<ActionPoint> build_action_points(const Structure& s, Coefficient sigma) {
  std::vector<ActionPoint> points;
  points.reserve(s.relations.size());
  for (const auto& rel : s.relations) {
    const auto ia = s.units.find(rel.a);
    const auto ib = s.units.find(rel.b);
    if (ia == s.units.end() || ib == s.units.end()) {
      throw EngineError(ErrorCode::UnknownEndpoint,
                        std::string(to_string(rel.kind)) + " " + rel.a + "/" + rel.b);
    }
    if (rel.a == rel.b) {
      throw EngineError(ErrorCode::InvalidStructure, "self relation on " + rel.a);
    }
    Relation canonical = rel;
    const auto [ca, cb] = rel.endpoints();
    canonical.a = ca;
    canonical.b = cb;

    ActionMode mode = ActionMode::Inert;
    switch (rel.kind) {
      case RelationKind::Resemblance:
        mode = detect_resemblance(ia->second, ib->second, sigma) ? ActionMode::Strengthen
                                                                 : ActionMode::Inert;
        break;
      case RelationKind::Contiguity:
        mode = ActionMode::Contiguous;
        break;
      case RelationKind::Causation:
        mode = ActionMode::CausalAct;
        break;
      case RelationKind::Opposition:
        throw EngineError(ErrorCode::InvalidStructure, "opposition cannot be declared");
    }
    points.push_back({std::move(canonical), mode});
  }
  for (auto& [a, b] : opposing_pairs(s)) {
    Relation rel;
    rel.kind = RelationKind::Opposition;
    rel.a = a;
    rel.b = b;
    points.push_back({std::move(rel), ActionMode::Oppose});
  }
  std::sort(points.begin(), points.end(),
            [](const ActionPoint& l, const ActionPoint& r) { return relation_less(l.relation, r.relation); });
  return points;
}

}  // namespace eocos
