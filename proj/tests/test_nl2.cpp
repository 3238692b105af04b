#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "eocos/nl2.hpp"
#include "support/generators.hpp"

using namespace eocos;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const char* kMinimal = R"(scenario "min"
eocos e1 {
  subject: taro
  intensity: 1.0
  items { taro: subject  trip: object  p: pleasant }
  ideal { near: [p, trip, taro] far: [] }
  actual { near: [taro] far: [p, trip] }
}
)";

std::vector<std::string> codes(const ParseResult& r) {
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics) out.push_back(d.code);
  return out;
}

bool has_code(const ParseResult& r, std::string_view code) {
  for (const auto& d : r.diagnostics) {
    if (d.code == code) return true;
  }
  return false;
}

void check_spans(std::string_view text, const ParseResult& r) {
  for (const auto& d : r.diagnostics) {
    CHECK(d.span.line >= 1);
    CHECK(d.span.column >= 1);
    CHECK(d.span.length >= 0);
    CHECK(d.span.offset + static_cast<std::size_t>(d.span.length) <= text.size());
  }
}

}  // namespace

TEST_CASE("minimal document") {
  const ParseResult r = parse_scenario(kMinimal);
  REQUIRE(r.doc);
  CHECK(r.diagnostics.empty());
  const EoCoS& e = r.doc->structure.units.at("e1");
  CHECK(e.subject == "taro");
  CHECK(e.intensity.micro == 1'000'000);
  CHECK(e.items.at("trip") == ItemKind::Object);
  CHECK(e.actual.at("p") == Side::Far);
  CHECK(r.doc->name == "min");
}

TEST_CASE("empty scenario serializes to its header line") {
  const ParseResult r = parse_scenario("scenario \"x\"\n");
  REQUIRE(r.doc);
  CHECK(r.doc->structure.units.empty());
  CHECK(serialize_scenario(*r.doc) == "scenario \"x\"\n");
}

TEST_CASE("cross-subject resemblance needs the pragma") {
  const std::string units = R"(
eocos a { subject: taro intensity: 1 items { taro: subject p: pleasant }
  ideal { near: [p, taro] far: [] } actual { near: [p, taro] far: [] } }
eocos b { subject: jiro intensity: 1 items { jiro: subject p: pleasant }
  ideal { near: [p, jiro] far: [] } actual { near: [p, jiro] far: [] } }
resemble a ~ b
)";
  const ParseResult strict = parse_scenario("scenario \"s\"\n" + units);
  CHECK_FALSE(strict.doc);
  CHECK(codes(strict) == std::vector<std::string>{"E006"});

  const ParseResult lax = parse_scenario("scenario \"s\"\n#pragma allow-cross-subject-resemblance\n" + units);
  REQUIRE(lax.doc);
  CHECK(lax.doc->allow_cross_subject_resemblance);
  REQUIRE(lax.diagnostics.size() == 1);
  CHECK(lax.diagnostics[0].severity == Severity::Warning);
  CHECK(lax.warning_count() == 1);
}

TEST_CASE("duplicate unit ids report both spans") {
  const std::string text = std::string(kMinimal) + std::string(kMinimal).substr(std::string(kMinimal).find("eocos"));
  const ParseResult r = parse_scenario(text);
  CHECK_FALSE(r.doc);
  REQUIRE(r.error_count() == 1);
  const Diagnostic& d = r.diagnostics[0];
  CHECK(d.code == "E002");
  CHECK(d.span.line == 9);
  REQUIRE(d.related.size() == 1);
  CHECK(d.related[0].line == 2);
  CHECK(d.message.find("2:7") != std::string::npos);
  CHECK(format_diagnostic(d).rfind("9:7: error E002: ", 0) == 0);
}

TEST_CASE("semantic diagnostics") {
  const auto with_unit = [](const std::string& body) { return "scenario \"t\"\neocos e1 {\n" + body + "}\n"; };
  const std::string items = "  items { taro: subject p: pleasant }\n";
  const std::string placement = "  ideal { near: [p, taro] far: [] }\n  actual { near: [p, taro] far: [] }\n";

  CHECK(has_code(parse_scenario(with_unit("  subject: taro intensity: 1\n  items { taro: subject }\n"
                                          "  ideal { near: [taro] far: [] }\n  actual { near: [taro] far: [] }\n")),
                 "E004"));
  CHECK(has_code(parse_scenario(with_unit("  subject: taro intensity: 1\n" + items +
                                          "  ideal { near: [p] far: [] }\n  actual { near: [p, taro] far: [] }\n")),
                 "E005"));
  CHECK(has_code(parse_scenario(with_unit("  subject: taro intensity: 11\n" + items + placement)), "E007"));
  CHECK(has_code(parse_scenario(with_unit("  subject: hanako intensity: 1\n" + items + placement)), "E003"));
  CHECK(has_code(parse_scenario(with_unit("  subject: taro intensity: 1\n  items { taro: object p: pleasant }\n" +
                                          placement)),
                 "E008"));
  CHECK(has_code(parse_scenario(with_unit("  subject: taro intensity: 1\n" + items + placement) + "cause e1 -> e1 class = enabling\n"),
                 "E009"));
  CHECK(has_code(parse_scenario(with_unit("  subject: taro intensity: 1\n" + items + placement) + "cause e1 -> e9 class = enabling\n"),
                 "E003"));
  CHECK(has_code(parse_scenario("scenario \"t\"\nconfig { rounds = 0 }\n"), "E010"));
  CHECK(has_code(parse_scenario("scenario \"t\"\nconfig { omega = 1 }\n"), "E001"));
  CHECK(has_code(parse_scenario("scenario \"t\"\nconfig { alpha = 1 alpha = 2 }\n"), "E002"));

  const ParseResult pragma = parse_scenario("scenario \"t\"\n#pragma make-it-so\n");
  REQUIRE(pragma.doc);
  CHECK(codes(pragma) == std::vector<std::string>{"W001"});

  // The config block's i_max governs the intensity range check.
  CHECK(parse_scenario("scenario \"t\"\nconfig { i_max = 20 }\neocos e1 {\n  subject: taro intensity: 11\n" + items +
                       placement + "}\n")
            .doc);
}

TEST_CASE("error recovery continues at the next block") {
  const std::string text = "scenario \"r\"\n"
                           "eocos e1 { subject: ??? }\n"
                           "eocos e2 { subject taro }\n"
                           "resemble e1 ~\n"
                           "cause e1 -> e2 class = sideways\n";
  const ParseResult r = parse_scenario(text);
  CHECK_FALSE(r.doc);
  CHECK(r.has_syntax_errors());
  CHECK(r.error_count() >= 4);
  check_spans(text, r);
  for (std::size_t i = 1; i < r.diagnostics.size(); ++i) {
    CHECK(r.diagnostics[i - 1].span.offset <= r.diagnostics[i].span.offset);
  }
}

TEST_CASE("config text") {
  const ConfigFileResult ok = parse_config_text("# defaults\nalpha = 0.75\n\nrounds=3  # trailing\n");
  CHECK(ok.diagnostics.empty());
  CHECK(ok.overrides.alpha == Coefficient::from_micro(750'000));
  CHECK(ok.overrides.rounds == 3);

  const ConfigFileResult bad = parse_config_text("alpha 0.75\ngamma = -1\n");
  CHECK(bad.diagnostics.size() == 2);

  ConfigOverrides low;
  low.alpha = Coefficient::from_micro(1);
  low.gamma = Coefficient::from_micro(2);
  ConfigOverrides high;
  high.alpha = Coefficient::from_micro(3);
  const ConfigOverrides merged = low.layered_under(high);
  CHECK(merged.alpha->micro == 3);
  CHECK(merged.gamma->micro == 2);
  MontageConfig cfg;
  merged.apply_to(cfg);
  CHECK(cfg.alpha.micro == 3);
  CHECK(cfg.beta_triggering.micro == 500'000);
}

TEST_CASE("fixtures parse cleanly and their serialization is a fixed point") {
  for (const char* name : {"education", "fox_and_chicken", "promise", "purloined"}) {
    CAPTURE(name);
    const std::string text = read_file(std::string(EOCOS_FIXTURE_DIR) + "/" + name + ".nl2");
    REQUIRE_FALSE(text.empty());
    const ParseResult r = parse_scenario(text);
    REQUIRE(r.doc);
    CHECK(r.diagnostics.empty());
    const std::string canon = serialize_scenario(*r.doc);
    const ParseResult again = parse_scenario(canon);
    REQUIRE(again.doc);
    CHECK(structurally_equal(*r.doc, *again.doc));
    CHECK(serialize_scenario(*again.doc) == canon);
  }
}

TEST_CASE("round trip over generated documents") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const ScenarioDoc doc = eocos::testing::random_doc(rng);
    const std::string canon = serialize_scenario(doc);
    const ParseResult r = parse_scenario(canon);
    REQUIRE_MESSAGE(r.doc, canon);
    CHECK(structurally_equal(doc, *r.doc));
    CHECK(serialize_scenario(*r.doc) == canon);

    const std::string scrambled = eocos::testing::scrambled_nl2(rng, doc);
    const ParseResult s = parse_scenario(scrambled);
    REQUIRE_MESSAGE(s.doc, scrambled);
    CHECK(structurally_equal(doc, *s.doc));
    CHECK(serialize_scenario(*s.doc) == canon);
  }
}

TEST_CASE("parser is total over mutated input") {
  std::mt19937_64 rng(5);
  const std::string base = std::string(kMinimal) + "resemble e1 ~ e1\nconfig { alpha = 0.5 }\n";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text = base;
    const int edits = eocos::testing::uniform(rng, 1, 8);
    for (int k = 0; k < edits; ++k) {
      const auto pos = static_cast<std::size_t>(eocos::testing::uniform(rng, 0, static_cast<int>(text.size())));
      switch (eocos::testing::uniform(rng, 0, 2)) {
        case 0:
          text.insert(pos, 1, static_cast<char>(eocos::testing::uniform(rng, 0, 255)));
          break;
        case 1:
          if (pos < text.size()) text.erase(pos, 1);
          break;
        default:
          text.insert(pos, "\xe5\xa4\x9c");
      }
    }
    const ParseResult r = parse_scenario(text);
    check_spans(text, r);
    CHECK(r.doc.has_value() == (r.error_count() == 0));
    CHECK(r.diagnostics.size() <= 401);
  }
}
