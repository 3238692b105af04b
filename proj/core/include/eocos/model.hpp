#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eocos/fixed.hpp"

namespace eocos {

using ItemId = std::string;
using UnitId = std::string;

enum class ItemKind { Subject, Object, SubjectAspect, ObjectAspect, PleasantMarker };

// The two regions a border creates.
enum class Side { Near, Far };

constexpr Side opposite(Side s) { return s == Side::Near ? Side::Far : Side::Near; }

std::string_view to_string(ItemKind kind);
std::string_view to_string(Side side);

using Placement = std::map<ItemId, Side>;

// One contradictory-structure unit: items on two sides of a border, an ideal
// and an actual placement of those items, and an intensity.
struct EoCoS {
  UnitId id;
  ItemId subject;
  std::map<ItemId, ItemKind> items;
  Placement ideal;
  Placement actual;
  Intensity intensity;

  // Id of the single PleasantMarker item. Empty when the unit is malformed.
  const ItemId& pleasant_item() const;

  friend bool operator==(const EoCoS&, const EoCoS&) = default;
};

// Human-readable descriptions of every broken EoCoS invariant; empty when the
// unit is well formed.
std::vector<std::string> unit_problems(const EoCoS& e);

class Effect {
 public:
  static Effect pleasant() { return Effect{}; }
  static Effect unpleasant(std::vector<ItemId> mismatched);

  bool is_pleasant() const { return mismatched_.empty(); }
  // Sorted, non-empty for Unpleasant.
  const std::vector<ItemId>& mismatched() const { return mismatched_; }

  // "Pleasant" or "Unpleasant{a,b}".
  std::string describe() const;

  friend bool operator==(const Effect&, const Effect&) = default;

 private:
  Effect() = default;
  std::vector<ItemId> mismatched_;
};

struct CrossBorderMove {
  ItemId item;
  Side from = Side::Far;
  Side to = Side::Near;

  friend bool operator==(const CrossBorderMove&, const CrossBorderMove&) = default;
};

// Pleasant iff ideal and actual placements coincide; otherwise the exact set
// of items whose ideal side differs from their actual side.
Effect compare(const EoCoS& e);

// Minimal set of crossings that restores the ideal image, one per mismatched
// item, ordered by item id. Empty for a pleasant unit.
std::vector<CrossBorderMove> pseudo_will(const EoCoS& e);

// Executes crossings against the actual placement. Throws EngineError with
// UnknownItem or StaleMove.
EoCoS apply_moves(const EoCoS& e, const std::vector<CrossBorderMove>& moves);

}  // namespace eocos
