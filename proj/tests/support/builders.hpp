#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "eocos/structure.hpp"

namespace eocos::testing {

// Hand-built unit: subject plus pleasant marker "p" plus `content` objects.
// Everything ideally sits near, except items listed in `far`. Actual equals
// ideal unless `contradictory`, which pushes the pleasant marker across.
inline EoCoS make_unit(const std::string& id, const std::string& subject, std::int64_t intensity_micro,
                       const std::vector<std::string>& content = {}, const std::vector<std::string>& far = {},
                       bool contradictory = false) {
  EoCoS e;
  e.id = id;
  e.subject = subject;
  e.items = {{subject, ItemKind::Subject}, {"p", ItemKind::PleasantMarker}};
  for (const auto& c : content) e.items.emplace(c, ItemKind::Object);
  for (const auto& [item, kind] : e.items) {
    e.ideal[item] = std::find(far.begin(), far.end(), item) != far.end() ? Side::Far : Side::Near;
  }
  e.actual = e.ideal;
  if (contradictory) e.actual["p"] = opposite(e.ideal["p"]);
  e.intensity = Intensity::from_micro(intensity_micro);
  return e;
}

inline void add_unit(Structure& s, EoCoS e) {
  const auto id = e.id;
  s.units.insert_or_assign(id, std::move(e));
}

}  // namespace eocos::testing
