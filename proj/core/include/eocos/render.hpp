#pragma once

#include <optional>
#include <string>

#include "eocos/montage.hpp"
#include "eocos/structure.hpp"

namespace eocos {

enum class RankDir { LR, TB };

struct RenderOptions {
  bool show_deltas = true;
  bool after_montage = false;  // draw post-montage intensities and placements
  RankDir rankdir = RankDir::LR;
};

// Plates and lines as Graphviz DOT. Each unit is a two-compartment record
// (near | far) of its actual placement; the pleasant marker is drawn as
// `*pleasant*` and items whose side disagrees with the ideal image carry a
// trailing `!`. Relations and synthesized oppositions become edges styled by
// kind. Throws EngineError(ReportMismatch) when `report` names units the
// structure lacks.
std::string emit_dot(const Structure& s, const EoSReport* report, const RenderOptions& opts = {});

// Canonical JSON listing of every intensity delta in the report.
std::string emit_trace_json(const EoSReport& report);

}  // namespace eocos
