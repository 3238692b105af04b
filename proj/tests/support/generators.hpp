#pragma once

// Random structure / scenario generators shared by the unit and acceptance
// suites. Everything is driven by an explicit seeded engine.

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eocos/nl2.hpp"
#include "eocos/structure.hpp"

namespace eocos::testing {

struct GenParams {
  int min_units = 1;
  int max_units = 20;
  int max_relations = 40;
  int subjects = 3;
  int item_pool = 8;
  int max_content_items = 4;
  std::int64_t max_intensity_micro = 10'000'000;
  bool coarse_intensities = true;  // multiples of 0.25 make ties common
};

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline EoCoS random_unit(std::mt19937_64& rng, const std::string& id, const GenParams& p) {
  EoCoS e;
  e.id = id;
  e.subject = "c" + std::to_string(uniform(rng, 0, std::max(0, p.subjects - 1)));
  e.items.emplace(e.subject, ItemKind::Subject);
  e.items.emplace(coin(rng, 0.8) ? "p" : "pm", ItemKind::PleasantMarker);
  const int content = uniform(rng, 0, p.max_content_items);
  for (int i = 0; i < content; ++i) {
    static constexpr ItemKind kKinds[] = {ItemKind::Object, ItemKind::SubjectAspect, ItemKind::ObjectAspect};
    e.items.emplace("x" + std::to_string(uniform(rng, 0, p.item_pool - 1)), kKinds[uniform(rng, 0, 2)]);
  }
  for (const auto& [item, kind] : e.items) {
    const Side ideal = coin(rng) ? Side::Near : Side::Far;
    e.ideal.emplace(item, ideal);
    e.actual.emplace(item, coin(rng, 0.7) ? ideal : opposite(ideal));
  }
  if (p.coarse_intensities) {
    const auto steps = p.max_intensity_micro / 250'000;
    e.intensity = Intensity::from_micro(250'000 * std::uniform_int_distribution<std::int64_t>(0, steps)(rng));
  } else {
    e.intensity = Intensity::from_micro(std::uniform_int_distribution<std::int64_t>(0, p.max_intensity_micro)(rng));
  }
  return e;
}

inline Structure random_structure(std::mt19937_64& rng, const GenParams& p = {}) {
  Structure s;
  const int n = uniform(rng, p.min_units, p.max_units);
  std::vector<int> labels(static_cast<std::size_t>(n) * 3);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i);
  std::shuffle(labels.begin(), labels.end(), rng);
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) {
    ids.push_back("e" + std::to_string(labels[static_cast<std::size_t>(i)]));
    s.units.emplace(ids.back(), random_unit(rng, ids.back(), p));
  }
  if (n < 2) return s;

  std::set<std::tuple<RelationKind, std::string, std::string>> used;
  const int attempts = uniform(rng, 0, p.max_relations);
  for (int k = 0; k < attempts; ++k) {
    const auto& a = ids[static_cast<std::size_t>(uniform(rng, 0, n - 1))];
    const auto& b = ids[static_cast<std::size_t>(uniform(rng, 0, n - 1))];
    if (a == b) continue;
    Relation rel;
    switch (uniform(rng, 0, 2)) {
      case 0:
        rel = Relation::resemblance(a, b);
        break;
      case 1: {
        std::vector<ItemId> shared;
        for (const auto& [item, kind] : s.units.at(a).items) {
          if (s.units.at(b).items.contains(item)) shared.push_back(item);
        }
        if (shared.empty()) continue;
        rel = Relation::contiguity(a, b, shared[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(shared.size()) - 1))]);
        break;
      }
      default:
        rel = Relation::causation(a, b, static_cast<CausationClass>(uniform(rng, 0, 2)));
    }
    const auto [ca, cb] = rel.endpoints();
    if (!used.emplace(rel.kind, ca, cb).second) continue;
    s.relations.push_back(std::move(rel));
  }
  return s;
}

inline ScenarioDoc random_doc(std::mt19937_64& rng, const GenParams& p = {}) {
  ScenarioDoc doc;
  static const char* kNames[] = {"education", "fox and chicken", "a \"quoted\" name", "back\\slash", "", "夜"};
  doc.name = kNames[uniform(rng, 0, 5)];
  doc.structure = random_structure(rng, p);
  for (const auto& rel : doc.structure.relations) {
    if (rel.kind == RelationKind::Resemblance &&
        doc.structure.units.at(rel.a).subject != doc.structure.units.at(rel.b).subject) {
      doc.allow_cross_subject_resemblance = true;
    }
  }
  if (coin(rng, 0.2)) doc.allow_cross_subject_resemblance = true;
  if (coin(rng)) doc.config.alpha = Coefficient::from_micro(uniform(rng, 0, 2'000'000));
  if (coin(rng)) doc.config.beta_preventing = Coefficient::from_micro(-uniform(rng, 0, 2'000'000));
  if (coin(rng)) doc.config.rounds = uniform(rng, 1, 5);
  if (coin(rng)) doc.config.tau = Intensity::from_micro(uniform(rng, 0, 3'000'000));
  if (coin(rng, 0.3)) doc.config.sigma = Coefficient::from_micro(uniform(rng, 0, 1'000'000));
  if (coin(rng, 0.2)) doc.config.i_max = Intensity::from_micro(p.max_intensity_micro + uniform(rng, 0, 5'000'000));
  return doc;
}

// Writes a valid NL2 document for `doc` with units, items, side lists and
// relations in random order, undirected endpoints randomly swapped, and noise
// comments/whitespace. Parsing it must yield a structurally equal doc.
inline std::string scrambled_nl2(std::mt19937_64& rng, const ScenarioDoc& doc) {
  std::ostringstream out;
  const auto ws = [&] { return coin(rng, 0.2) ? "   " : " "; };
  out << "# generated\nscenario \"";
  for (char c : doc.name) {
    if (c == '"' || c == '\\') out << '\\';
    out << c;
  }
  out << "\"\n";
  if (doc.allow_cross_subject_resemblance) out << "#pragma allow-cross-subject-resemblance\n";
  if (!doc.config.empty()) {
    std::ostringstream cfg;
    cfg << serialize_scenario(ScenarioDoc{"", {}, doc.config, false});
    std::string text = cfg.str();
    out << text.substr(text.find("config"));
  }
  std::vector<const EoCoS*> units;
  for (const auto& [id, u] : doc.structure.units) units.push_back(&u);
  std::shuffle(units.begin(), units.end(), rng);
  for (const EoCoS* u : units) {
    out << "eocos" << ws() << u->id << " {\n  subject:" << ws() << u->subject << "\n  intensity: "
        << format_fixed(u->intensity.micro) << "\n  items {";
    std::vector<std::pair<ItemId, ItemKind>> items(u->items.begin(), u->items.end());
    std::shuffle(items.begin(), items.end(), rng);
    for (const auto& [item, kind] : items) out << (coin(rng) ? "\n    " : " ") << item << ": " << to_string(kind);
    out << "\n  }\n";
    for (const auto& [label, placement] : {std::pair{"ideal", &u->ideal}, std::pair{"actual", &u->actual}}) {
      out << "  " << label << " { ";
      for (Side side : {Side::Near, Side::Far}) {
        std::vector<ItemId> on_side;
        for (const auto& [item, s] : *placement) {
          if (s == side) on_side.push_back(item);
        }
        std::shuffle(on_side.begin(), on_side.end(), rng);
        out << to_string(side) << ": [";
        for (std::size_t i = 0; i < on_side.size(); ++i) out << (i ? "," + std::string(ws()) : "") << on_side[i];
        out << "] ";
      }
      out << "}\n";
    }
    out << "}  # end " << u->id << "\n";
  }
  std::vector<Relation> rels = doc.structure.relations;
  std::shuffle(rels.begin(), rels.end(), rng);
  for (auto& rel : rels) {
    if (!rel.directed() && coin(rng)) std::swap(rel.a, rel.b);
    switch (rel.kind) {
      case RelationKind::Resemblance:
        out << "resemble " << rel.a << " ~ " << rel.b << "\n";
        break;
      case RelationKind::Contiguity:
        out << "contiguous " << rel.a << " - " << rel.b << " via " << rel.via << "\n";
        break;
      case RelationKind::Causation:
        out << "cause " << rel.a << " ->" << ws() << rel.b << " class = " << to_string(rel.cause) << "\n";
        break;
      case RelationKind::Opposition:
        break;
    }
  }
  return out.str();
}

}  // namespace eocos::testing
