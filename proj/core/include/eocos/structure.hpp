#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "eocos/model.hpp"

namespace eocos {

enum class CausationClass { Enabling, Preventing, Triggering };

// Declarable relations come first; Opposition is only ever synthesized.
enum class RelationKind { Resemblance = 0, Contiguity = 1, Causation = 2, Opposition = 3 };

std::string_view to_string(CausationClass c);
std::string_view to_string(RelationKind k);

// A typed edge between two units. Causation is directed a -> b; the other
// kinds are undirected.
struct Relation {
  RelationKind kind = RelationKind::Resemblance;
  UnitId a;
  UnitId b;
  ItemId via;                                          // Contiguity only
  CausationClass cause = CausationClass::Triggering;  // Causation only

  static Relation resemblance(UnitId a, UnitId b);
  static Relation contiguity(UnitId a, UnitId b, ItemId via);
  static Relation causation(UnitId a, UnitId b, CausationClass c);

  bool directed() const { return kind == RelationKind::Causation; }

  // Endpoints in canonical order: (min, max) for undirected kinds.
  std::pair<const UnitId&, const UnitId&> endpoints() const;

  friend bool operator==(const Relation&, const Relation&) = default;
};

// Total order used everywhere relations are listed: (kind rank, a, b) on
// canonical endpoints.
bool relation_less(const Relation& l, const Relation& r);

// Collection of units plus the relations between them; the montage substrate.
struct Structure {
  std::map<UnitId, EoCoS> units;
  std::vector<Relation> relations;

  friend bool operator==(const Structure&, const Structure&) = default;
};

// Every broken structural invariant: unit invariants, dangling or self
// endpoints, duplicate relations, contiguity via an item absent from either
// endpoint.
std::vector<std::string> structure_problems(const Structure& s);

// Throws EngineError(InvalidStructure) listing the first problem found.
void require_valid(const Structure& s);

// Relations sorted by relation_less with undirected endpoints as (min, max).
Structure canonical(Structure s);

}  // namespace eocos
