#pragma once

#include <string_view>
#include <vector>

#include "eocos/fixed.hpp"
#include "eocos/structure.hpp"

namespace eocos {

inline constexpr Coefficient kDefaultSigma = Coefficient::from_micro(500'000);

// How intensity moves at an action point.
//   Strengthen  both partners gain alpha * min(I_a, I_b)
//   CausalAct   target gains beta[class] * I_source
//   Oppose      both partners lose gamma * min(I_a, I_b)
//   Contiguous  both partners gain kappa * min(I_a, I_b); kappa defaults to 0
//   Inert       declared resemblance that fails detection; never moves intensity
enum class ActionMode { Strengthen, CausalAct, Oppose, Contiguous, Inert };

std::string_view to_string(ActionMode m);

struct ActionPoint {
  Relation relation;  // canonical endpoints for undirected kinds
  ActionMode mode = ActionMode::Inert;

  friend bool operator==(const ActionPoint&, const ActionPoint&) = default;
};

// Same subject, same effect variant, and Jaccard overlap of the non-subject,
// non-pleasant item ids at least sigma. Two empty item sets overlap fully.
bool detect_resemblance(const EoCoS& a, const EoCoS& b, Coefficient sigma = kDefaultSigma);

// Same subject and some shared item that one unit ideally keeps with its
// pleasant marker while the other ideally keeps it across the border from its
// own.
bool detect_opposition(const EoCoS& a, const EoCoS& b);

// One point per declared relation plus a synthesized Oppose point for every
// same-subject opposing pair, sorted by (kind rank, a, b). Throws
// EngineError(UnknownEndpoint) for dangling relations.
std::vector<ActionPoint> build_action_points(const Structure& s, Coefficient sigma = kDefaultSigma);

}  // namespace eocos
