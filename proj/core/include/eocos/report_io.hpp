#pragma once

#include <string>

#include "eocos/montage.hpp"

namespace eocos {

// Canonical JSON: sorted keys, 2-space indent, intensities as integer micro
// units, trailing newline. Byte-deterministic for equal reports.
std::string report_to_json(const EoSReport& report);

// Line-oriented human form, one `unit` line per EoCoS:
//   unit e1: Unpleasant{p,school} I 1.000000 -> 1.500000
std::string report_to_text(const EoSReport& report);

}  // namespace eocos
