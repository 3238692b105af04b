#include "eocos/model.hpp"

#include <algorithm>

#include "eocos/error.hpp"

namespace eocos {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::StaleMove:
      return "StaleMove";
    case ErrorCode::UnknownItem:
      return "UnknownItem";
    case ErrorCode::UnknownEndpoint:
      return "UnknownEndpoint";
    case ErrorCode::InvalidStructure:
      return "InvalidStructure";
    case ErrorCode::InvalidConfig:
      return "InvalidConfig";
    case ErrorCode::ReportMismatch:
      return "ReportMismatch";
  }
  return "Unknown";
}

std::string_view to_string(ItemKind kind) {
  switch (kind) {
    case ItemKind::Subject:
      return "subject";
    case ItemKind::Object:
      return "object";
    case ItemKind::SubjectAspect:
      return "s-aspect";
    case ItemKind::ObjectAspect:
      return "o-aspect";
    case ItemKind::PleasantMarker:
      return "pleasant";
  }
  return "?";
}

std::string_view to_string(Side side) { return side == Side::Near ? "near" : "far"; }

const ItemId& EoCoS::pleasant_item() const {
  static const ItemId kNone;
  for (const auto& [id, kind] : items) {
    if (kind == ItemKind::PleasantMarker) return id;
  }
  return kNone;
}

std::vector<std::string> unit_problems(const EoCoS& e) {
  std::vector<std::string> out;
  int subjects = 0;
  int pleasants = 0;
  for (const auto& [id, kind] : e.items) {
    subjects += kind == ItemKind::Subject;
    pleasants += kind == ItemKind::PleasantMarker;
  }
  if (pleasants != 1) {
    out.push_back("unit " + e.id + " has " + std::to_string(pleasants) + " pleasant markers");
  }
  if (subjects != 1) {
    out.push_back("unit " + e.id + " has " + std::to_string(subjects) + " subject items");
  }
  auto it = e.items.find(e.subject);
  if (it == e.items.end() || it->second != ItemKind::Subject) {
    out.push_back("unit " + e.id + " subject '" + e.subject + "' is not a subject item");
  }
  const auto same_keys = [&](const Placement& p) {
    return p.size() == e.items.size() &&
           std::equal(p.begin(), p.end(), e.items.begin(),
                      [](const auto& l, const auto& r) { return l.first == r.first; });
  };
  if (!same_keys(e.ideal)) out.push_back("unit " + e.id + " ideal placement keys differ from items");
  if (!same_keys(e.actual)) out.push_back("unit " + e.id + " actual placement keys differ from items");
  if (e.intensity.micro < 0) out.push_back("unit " + e.id + " has negative intensity");
  return out;
}

Effect Effect::unpleasant(std::vector<ItemId> mismatched) {
  std::sort(mismatched.begin(), mismatched.end());
  Effect e;
  e.mismatched_ = std::move(mismatched);
  return e;
}

std::string Effect::describe() const {
  if (is_pleasant()) return "Pleasant";
  std::string out = "Unpleasant{";
  for (std::size_t i = 0; i < mismatched_.size(); ++i) {
    if (i) out += ",";
    out += mismatched_[i];
  }
  return out + "}";
}

Effect compare(const EoCoS& e) {
  std::vector<ItemId> mismatched;
  for (const auto& [item, ideal_side] : e.ideal) {
    auto it = e.actual.find(item);
    if (it == e.actual.end() || it->second != ideal_side) mismatched.push_back(item);
  }
  if (mismatched.empty()) return Effect::pleasant();
  return Effect::unpleasant(std::move(mismatched));
}

std::vector<CrossBorderMove> pseudo_will(const EoCoS& e) {
  std::vector<CrossBorderMove> moves;
  for (const auto& [item, ideal_side] : e.ideal) {
    auto it = e.actual.find(item);
    if (it != e.actual.end() && it->second != ideal_side) {
      moves.push_back({item, it->second, ideal_side});
    }
  }
  return moves;
}

EoCoS apply_moves(const EoCoS& e, const std::vector<CrossBorderMove>& moves) {
  EoCoS out = e;
  for (const auto& move : moves) {
    auto it = out.actual.find(move.item);
    if (it == out.actual.end()) {
      throw EngineError(ErrorCode::UnknownItem, "item '" + move.item + "' not in unit " + e.id);
    }
    if (it->second != move.from) {
      throw EngineError(ErrorCode::StaleMove, "item '" + move.item + "' of unit " + e.id +
                                                  " is on the " + std::string(to_string(it->second)) +
                                                  " side, not " + std::string(to_string(move.from)));
    }
    it->second = move.to;
  }
  return out;
}

}  // namespace eocos
