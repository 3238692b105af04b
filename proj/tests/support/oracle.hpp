#pragma once

// Naive reference simulator for montage. Works directly from the declared
// relation list and a brute-force pairwise opposition scan; shares no code
// with the engine beyond the data types.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "eocos/montage.hpp"

namespace eocos::testing {

inline bool oracle_is_pleasant(const EoCoS& e) {
  for (const auto& [item, side] : e.ideal) {
    if (e.actual.at(item) != side) return false;
  }
  return true;
}

inline std::set<ItemId> oracle_content(const EoCoS& e) {
  std::set<ItemId> out;
  for (const auto& [item, kind] : e.items) {
    if (item != e.subject && kind != ItemKind::PleasantMarker && kind != ItemKind::Subject) out.insert(item);
  }
  return out;
}

inline ItemId oracle_pleasant(const EoCoS& e) {
  for (const auto& [item, kind] : e.items) {
    if (kind == ItemKind::PleasantMarker) return item;
  }
  return {};
}

inline bool oracle_resembles(const EoCoS& a, const EoCoS& b, std::int64_t sigma_micro) {
  if (a.subject != b.subject || oracle_is_pleasant(a) != oracle_is_pleasant(b)) return false;
  const auto ca = oracle_content(a);
  const auto cb = oracle_content(b);
  std::set<ItemId> both;
  std::set<ItemId> either;
  std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::inserter(both, both.end()));
  std::set_union(ca.begin(), ca.end(), cb.begin(), cb.end(), std::inserter(either, either.end()));
  if (either.empty()) return true;
  // |both| / |either| >= sigma, cross-multiplied.
  return static_cast<__int128>(both.size()) * 1'000'000 >= static_cast<__int128>(sigma_micro) * either.size();
}

inline bool oracle_opposes(const EoCoS& a, const EoCoS& b) {
  if (a.subject != b.subject) return false;
  const auto ca = oracle_content(a);
  const auto cb = oracle_content(b);
  const ItemId pa = oracle_pleasant(a);
  const ItemId pb = oracle_pleasant(b);
  for (const auto& x : ca) {
    if (!cb.contains(x)) continue;
    const bool a_with = a.ideal.at(x) == a.ideal.at(pa);
    const bool b_with = b.ideal.at(x) == b.ideal.at(pb);
    if (a_with != b_with) return true;
  }
  return false;
}

// coefficient_micro * value_micro / 1e6, truncated toward zero.
inline std::int64_t oracle_scale(std::int64_t coefficient_micro, std::int64_t value_micro) {
  const __int128 p = static_cast<__int128>(coefficient_micro) * value_micro;
  const __int128 q = p / 1'000'000;
  return static_cast<std::int64_t>(q);
}

struct OracleRun {
  std::map<UnitId, std::int64_t> final_micro;
  std::map<UnitId, __int128> cumulative_delta;
};

inline OracleRun oracle_montage(const Structure& s, const MontageConfig& cfg) {
  OracleRun run;
  for (const auto& [id, u] : s.units) {
    run.final_micro[id] = u.intensity.micro;
    run.cumulative_delta[id] = 0;
  }
  std::vector<std::pair<UnitId, UnitId>> opposing;
  for (auto i = s.units.begin(); i != s.units.end(); ++i) {
    for (auto j = std::next(i); j != s.units.end(); ++j) {
      if (oracle_opposes(i->second, j->second)) opposing.emplace_back(i->first, j->first);
    }
  }
  for (int round = 0; round < cfg.rounds; ++round) {
    const auto snap = run.final_micro;
    std::map<UnitId, __int128> add;
    const auto give = [&](const UnitId& id, std::int64_t amount) {
      add[id] += amount;
      run.cumulative_delta[id] += amount;
    };
    for (const auto& rel : s.relations) {
      const std::int64_t weaker = std::min(snap.at(rel.a), snap.at(rel.b));
      if (rel.kind == RelationKind::Resemblance &&
          oracle_resembles(s.units.at(rel.a), s.units.at(rel.b), cfg.sigma.micro)) {
        give(rel.a, oracle_scale(cfg.alpha.micro, weaker));
        give(rel.b, oracle_scale(cfg.alpha.micro, weaker));
      } else if (rel.kind == RelationKind::Contiguity) {
        give(rel.a, oracle_scale(cfg.kappa.micro, weaker));
        give(rel.b, oracle_scale(cfg.kappa.micro, weaker));
      } else if (rel.kind == RelationKind::Causation) {
        give(rel.b, oracle_scale(cfg.beta(rel.cause).micro, snap.at(rel.a)));
      }
    }
    for (const auto& [a, b] : opposing) {
      const std::int64_t d = -oracle_scale(cfg.gamma.micro, std::min(snap.at(a), snap.at(b)));
      give(a, d);
      give(b, d);
    }
    for (auto& [id, value] : run.final_micro) {
      __int128 next = snap.at(id) + add[id];
      if (next < 0) next = 0;
      if (next > cfg.i_max.micro) next = cfg.i_max.micro;
      value = static_cast<std::int64_t>(next);
    }
  }
  return run;
}

}  // namespace eocos::testing
