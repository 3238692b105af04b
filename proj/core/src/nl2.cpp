#include "eocos/nl2.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace eocos {

namespace {

constexpr std::size_t kMaxDiagnostics = 200;

enum class Tok {
  Word,
  String,
  Number,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Colon,
  Equals,
  Tilde,
  Comma,
  Minus,
  Arrow,
  End,
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Word:
      return "identifier";
    case Tok::String:
      return "string";
    case Tok::Number:
      return "number";
    case Tok::LBrace:
      return "'{'";
    case Tok::RBrace:
      return "'}'";
    case Tok::LBracket:
      return "'['";
    case Tok::RBracket:
      return "']'";
    case Tok::Colon:
      return "':'";
    case Tok::Equals:
      return "'='";
    case Tok::Tilde:
      return "'~'";
    case Tok::Comma:
      return "','";
    case Tok::Minus:
      return "'-'";
    case Tok::Arrow:
      return "'->'";
    case Tok::End:
      return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  SourceSpan span;
  bool line_start = false;
  std::string value;  // unescaped contents of a String
};

struct Pragma {
  std::string_view name;
  SourceSpan span;
};

class Diagnostics {
 public:
  explicit Diagnostics(std::vector<Diagnostic>& out) : out_(out) {}

  void error(std::string_view code, std::string message, SourceSpan span,
             std::vector<SourceSpan> related = {}) {
    add(Severity::Error, code, std::move(message), span, std::move(related));
  }
  void warning(std::string_view code, std::string message, SourceSpan span) {
    add(Severity::Warning, code, std::move(message), span, {});
  }
  // Only errors stop the parse; warnings past the cap are dropped.
  bool saturated() const { return errors_ >= kMaxDiagnostics; }

 private:
  void add(Severity sev, std::string_view code, std::string message, SourceSpan span,
           std::vector<SourceSpan> related) {
    std::size_t& count = sev == Severity::Error ? errors_ : warnings_;
    if (count >= kMaxDiagnostics) return;
    out_.push_back({sev, std::string(code), std::move(message), span, std::move(related)});
    if (++count == kMaxDiagnostics && sev == Severity::Error) {
      out_.push_back({Severity::Error, std::string(diag::kSyntax), "too many diagnostics; giving up",
                      span, {}});
    }
  }
  std::size_t errors_ = 0;
  std::size_t warnings_ = 0;
  std::vector<Diagnostic>& out_;
};

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_lower(c) || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word_char(char c) { return is_alpha(c) || is_digit(c) || c == '_'; }

bool is_identifier(std::string_view s) {
  if (s.empty() || !is_lower(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return is_lower(c) || is_digit(c) || c == '_'; });
}

// Length of the UTF-8 sequence introduced by `lead`, clamped to what remains.
std::size_t utf8_length(std::string_view text, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  std::size_t n = 1;
  if (lead >= 0xF0) {
    n = 4;
  } else if (lead >= 0xE0) {
    n = 3;
  } else if (lead >= 0xC0) {
    n = 2;
  }
  std::size_t len = 1;
  while (len < n && pos + len < text.size() &&
         (static_cast<unsigned char>(text[pos + len]) & 0xC0) == 0x80) {
    ++len;
  }
  return len;
}

class Lexer {
 public:
  Lexer(std::string_view text, Diagnostics& diags) : text_(text), diags_(diags) {}

  std::vector<Token> run(std::vector<Pragma>& pragmas) {
    std::vector<Token> out;
    bool line_start = true;
    while (pos_ < text_.size() && !diags_.saturated()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        line_begin_ = pos_;
        line_start = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
        continue;
      }
      if (c == '#') {
        lex_comment(pragmas);
        continue;
      }
      const std::size_t start = pos_;
      Token tok;
      if (is_alpha(c) || c == '_') {
        tok.kind = Tok::Word;
        lex_word();
      } else if (is_digit(c) || (c == '-' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) {
        tok.kind = Tok::Number;
        ++pos_;
        while (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '.')) ++pos_;
      } else if (c == '"') {
        tok.kind = Tok::String;
        tok.value = lex_string();
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        tok.kind = Tok::Arrow;
        pos_ += 2;
      } else if (auto punct = punctuation(c)) {
        tok.kind = *punct;
        ++pos_;
      } else {
        const std::size_t len = utf8_length(text_, pos_);
        diags_.error(diag::kSyntax, "unexpected character '" + std::string(text_.substr(pos_, len)) + "'",
                     span(start, len));
        pos_ += len;
        continue;
      }
      tok.text = text_.substr(start, pos_ - start);
      tok.span = span(start, pos_ - start);
      tok.line_start = line_start;
      line_start = false;
      out.push_back(std::move(tok));
    }
    Token end;
    end.kind = Tok::End;
    end.span = span(text_.size(), 0);
    end.line_start = true;
    out.push_back(std::move(end));
    return out;
  }

 private:
  static std::optional<Tok> punctuation(char c) {
    switch (c) {
      case '{':
        return Tok::LBrace;
      case '}':
        return Tok::RBrace;
      case '[':
        return Tok::LBracket;
      case ']':
        return Tok::RBracket;
      case ':':
        return Tok::Colon;
      case '=':
        return Tok::Equals;
      case '~':
        return Tok::Tilde;
      case ',':
        return Tok::Comma;
      case '-':
        return Tok::Minus;
      default:
        return std::nullopt;
    }
  }

  SourceSpan span(std::size_t start, std::size_t len) const {
    // `start` may precede line_begin_ only for tokens that never cross lines.
    return SourceSpan{line_, static_cast<int>(start - line_begin_) + 1, static_cast<int>(len), start};
  }

  // [A-Za-z_][A-Za-z0-9_]* with '-'-joined segments, e.g. `s-aspect`.
  void lex_word() {
    while (true) {
      while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
      if (pos_ + 1 < text_.size() && text_[pos_] == '-' && is_alpha(text_[pos_ + 1])) {
        ++pos_;
        continue;
      }
      return;
    }
  }

  std::string lex_string() {
    const std::size_t start = pos_;
    ++pos_;
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] != '\n') {
        const char esc = text_[pos_ + 1];
        if (esc == '"' || esc == '\\') {
          value += esc;
        } else {
          const std::size_t len = utf8_length(text_, pos_ + 1);
          diags_.error(diag::kSyntax, "unknown escape '\\" + std::string(text_.substr(pos_ + 1, len)) + "'",
                       span(pos_, len + 1));
          pos_ += len - 1;
        }
        pos_ += 2;
        continue;
      }
      value += text_[pos_++];
    }
    if (pos_ < text_.size() && text_[pos_] == '"') {
      ++pos_;
    } else {
      diags_.error(diag::kSyntax, "unterminated string", span(start, pos_ - start));
    }
    return value;
  }

  void lex_comment(std::vector<Pragma>& pragmas) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    std::string_view line = text_.substr(start, pos_ - start);
    constexpr std::string_view kPragma = "#pragma";
    if (line.substr(0, kPragma.size()) != kPragma) return;
    std::string_view rest = line.substr(kPragma.size());
    if (!rest.empty() && rest[0] != ' ' && rest[0] != '\t') return;
    const auto first = rest.find_first_not_of(" \t\r");
    const auto last = rest.find_last_not_of(" \t\r");
    std::string_view name = first == std::string_view::npos ? std::string_view{} : rest.substr(first, last - first + 1);
    pragmas.push_back({name, span(start, line.size())});
  }

  std::string_view text_;
  Diagnostics& diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::size_t line_begin_ = 0;
};

// Thrown to abandon the current block; caught by the block loop, which then
// resynchronizes on the next block keyword.
struct Bail {};

struct UnitDecl {
  SourceSpan id_span;
  EoCoS unit;
  SourceSpan intensity_span;
  bool ok = true;
};

struct RelationDecl {
  Relation relation;
  SourceSpan span;  // keyword through last token
  SourceSpan a_span;
  SourceSpan b_span;
  SourceSpan via_span;
};

SourceSpan cover(const SourceSpan& first, const SourceSpan& last) {
  SourceSpan s = first;
  if (last.line == first.line && last.offset >= first.offset) {
    s.length = static_cast<int>(last.offset + last.length - first.offset);
  }
  return s;
}

std::string at(const SourceSpan& s) { return std::to_string(s.line) + ":" + std::to_string(s.column); }

class Parser {
 public:
  Parser(std::vector<Token> tokens, Diagnostics& diags) : toks_(std::move(tokens)), diags_(diags) {}

  std::string name;
  bool saw_header = false;
  ConfigOverrides config;
  std::vector<UnitDecl> units;
  std::vector<RelationDecl> relations;

  void run() {
    parse_header();
    while (cur().kind != Tok::End && !diags_.saturated()) {
      const std::size_t start = pos_;
      try {
        parse_block();
      } catch (const Bail&) {
        sync(start);
      }
    }
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t k = 1) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& advance() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool is_word(std::string_view w) const { return cur().kind == Tok::Word && cur().text == w; }

  bool at_block_start() const {
    static const std::set<std::string_view> kKeywords = {"scenario", "config",     "eocos",
                                                          "resemble", "contiguous", "cause"};
    const Token& t = cur();
    if (t.kind == Tok::End) return true;
    return t.kind == Tok::Word && t.line_start && kKeywords.contains(t.text) && peek().kind != Tok::Colon;
  }

  void sync(std::size_t block_start) {
    if (pos_ == block_start) advance();
    while (!at_block_start()) advance();
  }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = cur();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + std::string(t.text) + "'";
    diags_.error(diag::kSyntax, "expected " + expected + ", found " + found, t.span);
    throw Bail{};
  }

  const Token& expect(Tok kind) {
    if (cur().kind != kind) fail(std::string(describe(kind)));
    return advance();
  }

  const Token& expect_word(std::string_view w) {
    if (!is_word(w)) fail("'" + std::string(w) + "'");
    return advance();
  }

  const Token& expect_id(std::string_view what) {
    if (cur().kind == Tok::Word && is_identifier(cur().text)) return advance();
    if (cur().kind == Tok::Word) {
      diags_.error(diag::kSyntax,
                   "invalid " + std::string(what) + " '" + std::string(cur().text) +
                       "'; identifiers match [a-z][a-z0-9_]*",
                   cur().span);
      throw Bail{};
    }
    fail(std::string(what));
  }

  std::int64_t expect_decimal(std::string_view what) {
    const Token& t = expect(Tok::Number);
    auto micro = parse_decimal_micro(t.text);
    if (!micro) {
      diags_.error(diag::kSyntax,
                   "malformed " + std::string(what) + " '" + std::string(t.text) +
                       "'; expected a decimal with at most 6 fractional digits",
                   t.span);
      throw Bail{};
    }
    return *micro;
  }

  void parse_header() {
    if (!is_word("scenario")) {
      diags_.error(diag::kSyntax, "expected 'scenario \"<name>\"' header", cur().span);
      if (!at_block_start()) sync(pos_);
      return;
    }
    const std::size_t start = pos_;
    try {
      advance();
      name = expect(Tok::String).value;
      saw_header = true;
    } catch (const Bail&) {
      sync(start);
    }
  }

  void parse_block() {
    if (is_word("eocos")) return parse_eocos();
    if (is_word("config")) return parse_config();
    if (is_word("resemble") || is_word("contiguous") || is_word("cause")) return parse_relation();
    if (is_word("scenario")) {
      diags_.error(diag::kDuplicate, "duplicate 'scenario' header", cur().span);
      throw Bail{};
    }
    fail("'eocos', 'config', 'resemble', 'contiguous' or 'cause'");
  }

  void parse_config() {
    const Token& kw = advance();
    if (config_span_) {
      diags_.error(diag::kDuplicate, "duplicate config block", kw.span, {*config_span_});
    } else {
      config_span_ = kw.span;
    }
    expect(Tok::LBrace);
    std::map<std::string, SourceSpan> seen;
    while (cur().kind != Tok::RBrace) {
      const Token& key = expect(Tok::Word);
      expect(Tok::Equals);
      const Token& value = expect(Tok::Number);
      if (auto [it, fresh] = seen.emplace(std::string(key.text), key.span); !fresh) {
        diags_.error(diag::kDuplicate, "duplicate config key '" + std::string(key.text) + "'", key.span,
                     {it->second});
        continue;
      }
      if (auto err = set_config_value(config, key.text, value.text)) {
        diags_.error(err->first, err->second, err->first == diag::kConfigRange ? value.span : key.span);
      }
    }
    advance();
  }

  ItemKind expect_kind() {
    static const std::map<std::string_view, ItemKind> kKinds = {
        {"subject", ItemKind::Subject},
        {"object", ItemKind::Object},
        {"s-aspect", ItemKind::SubjectAspect},
        {"o-aspect", ItemKind::ObjectAspect},
        {"pleasant", ItemKind::PleasantMarker},
    };
    if (cur().kind == Tok::Word) {
      if (auto it = kKinds.find(cur().text); it != kKinds.end()) {
        advance();
        return it->second;
      }
    }
    fail("item kind (subject, object, s-aspect, o-aspect, pleasant)");
  }

  // Reads `{ near: [..] far: [..] }` into per-item side lists.
  void parse_sides(std::vector<std::pair<const Token*, Side>>& entries) {
    expect(Tok::LBrace);
    for (Side side : {Side::Near, Side::Far}) {
      expect_word(to_string(side));
      expect(Tok::Colon);
      expect(Tok::LBracket);
      if (cur().kind != Tok::RBracket) {
        entries.emplace_back(&expect_id("item id"), side);
        while (cur().kind == Tok::Comma) {
          advance();
          entries.emplace_back(&expect_id("item id"), side);
        }
      }
      expect(Tok::RBracket);
    }
    expect(Tok::RBrace);
  }

  void parse_eocos() {
    advance();
    UnitDecl decl;
    const Token& id = expect_id("unit id");
    decl.id_span = id.span;
    decl.unit.id = std::string(id.text);
    expect(Tok::LBrace);

    expect_word("subject");
    expect(Tok::Colon);
    const Token& subject = expect_id("subject item id");
    decl.unit.subject = std::string(subject.text);

    expect_word("intensity");
    expect(Tok::Colon);
    decl.intensity_span = cur().span;
    decl.unit.intensity = Intensity::from_micro(expect_decimal("intensity"));

    expect_word("items");
    expect(Tok::LBrace);
    std::map<std::string, SourceSpan> item_spans;
    std::vector<std::pair<const Token*, ItemKind>> items;
    while (cur().kind != Tok::RBrace) {
      const Token& item = expect_id("item id");
      expect(Tok::Colon);
      items.emplace_back(&item, expect_kind());
    }
    advance();

    const Token& ideal_kw = expect_word("ideal");
    std::vector<std::pair<const Token*, Side>> ideal;
    parse_sides(ideal);
    const Token& actual_kw = expect_word("actual");
    std::vector<std::pair<const Token*, Side>> actual;
    parse_sides(actual);
    expect(Tok::RBrace);

    // Syntax is complete; everything below reports and continues.
    const std::string& uid = decl.unit.id;
    for (const auto& [tok, kind] : items) {
      std::string item(tok->text);
      if (auto [it, fresh] = item_spans.emplace(item, tok->span); !fresh) {
        diags_.error(diag::kDuplicate, "duplicate item '" + item + "' in unit " + uid, tok->span, {it->second});
        decl.ok = false;
        continue;
      }
      decl.unit.items.emplace(item, kind);
    }

    int subjects = 0;
    int pleasants = 0;
    for (const auto& [item, kind] : decl.unit.items) {
      subjects += kind == ItemKind::Subject;
      pleasants += kind == ItemKind::PleasantMarker;
    }
    auto subj = decl.unit.items.find(decl.unit.subject);
    if (subj == decl.unit.items.end()) {
      diags_.error(diag::kUnknownReference,
                   "subject '" + decl.unit.subject + "' is not an item of unit " + uid, subject.span);
      decl.ok = false;
    } else if (subj->second != ItemKind::Subject) {
      diags_.error(diag::kSubjectItem, "subject '" + decl.unit.subject + "' is declared as " +
                                           std::string(to_string(subj->second)) + ", not subject",
                   subject.span);
      decl.ok = false;
    } else if (subjects != 1) {
      diags_.error(diag::kSubjectItem,
                   "unit " + uid + " declares " + std::to_string(subjects) + " subject items; exactly one allowed",
                   subject.span);
      decl.ok = false;
    }
    if (pleasants != 1) {
      diags_.error(diag::kPleasantMarker,
                   "unit " + uid + (pleasants == 0 ? " has no pleasant marker"
                                                   : " has " + std::to_string(pleasants) + " pleasant markers"),
                   id.span);
      decl.ok = false;
    }

    decl.ok &= build_placement(uid, "ideal", ideal_kw.span, ideal, decl.unit.ideal, decl.unit.items);
    decl.ok &= build_placement(uid, "actual", actual_kw.span, actual, decl.unit.actual, decl.unit.items);
    units.push_back(std::move(decl));
  }

  bool build_placement(const std::string& uid, const std::string& which, const SourceSpan& kw_span,
                       const std::vector<std::pair<const Token*, Side>>& entries, Placement& out,
                       const std::map<ItemId, ItemKind>& items) {
    bool ok = true;
    std::map<std::string, SourceSpan> spans;
    for (const auto& [tok, side] : entries) {
      std::string item(tok->text);
      if (!items.contains(item)) {
        diags_.error(diag::kPlacementKeys,
                     "item '" + item + "' in " + which + " placement of unit " + uid + " is not declared",
                     tok->span);
        ok = false;
        continue;
      }
      if (auto [it, fresh] = spans.emplace(item, tok->span); !fresh) {
        diags_.error(diag::kPlacementKeys,
                     "item '" + item + "' placed twice in " + which + " placement of unit " + uid, tok->span,
                     {it->second});
        ok = false;
        continue;
      }
      out.emplace(item, side);
    }
    for (const auto& [item, kind] : items) {
      if (!spans.contains(item)) {
        diags_.error(diag::kPlacementKeys,
                     "item '" + item + "' missing from " + which + " placement of unit " + uid, kw_span);
        ok = false;
      }
    }
    return ok;
  }

  void parse_relation() {
    const Token& kw = advance();
    RelationDecl decl;
    const Token& a = expect_id("unit id");
    decl.a_span = a.span;
    if (kw.text == "resemble") {
      expect(Tok::Tilde);
      const Token& b = expect_id("unit id");
      decl.b_span = b.span;
      decl.relation = Relation::resemblance(std::string(a.text), std::string(b.text));
      decl.span = cover(kw.span, b.span);
    } else if (kw.text == "contiguous") {
      expect(Tok::Minus);
      const Token& b = expect_id("unit id");
      decl.b_span = b.span;
      expect_word("via");
      const Token& via = expect_id("item id");
      decl.via_span = via.span;
      decl.relation = Relation::contiguity(std::string(a.text), std::string(b.text), std::string(via.text));
      decl.span = cover(kw.span, via.span);
    } else {
      expect(Tok::Arrow);
      const Token& b = expect_id("unit id");
      decl.b_span = b.span;
      expect_word("class");
      expect(Tok::Equals);
      static const std::map<std::string_view, CausationClass> kClasses = {
          {"enabling", CausationClass::Enabling},
          {"preventing", CausationClass::Preventing},
          {"triggering", CausationClass::Triggering},
      };
      auto it = cur().kind == Tok::Word ? kClasses.find(cur().text) : kClasses.end();
      if (it == kClasses.end()) fail("causation class (enabling, preventing, triggering)");
      const Token& cls = advance();
      decl.relation = Relation::causation(std::string(a.text), std::string(b.text), it->second);
      decl.span = cover(kw.span, cls.span);
    }
    relations.push_back(std::move(decl));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Diagnostics& diags_;
  std::optional<SourceSpan> config_span_;
};

void check_document(Parser& p, bool allow_cross_subject, Diagnostics& diags, Structure& out) {
  MontageConfig effective;
  p.config.apply_to(effective);

  std::map<std::string, const UnitDecl*> by_id;
  bool units_ok = true;
  for (auto& decl : p.units) {
    const std::string& id = decl.unit.id;
    if (auto [it, fresh] = by_id.emplace(id, &decl); !fresh) {
      diags.error(diag::kDuplicate, "duplicate unit id '" + id + "' (first declared at " + at(it->second->id_span) + ")",
                  decl.id_span, {it->second->id_span});
      units_ok = false;
      continue;
    }
    const auto& in = decl.unit.intensity;
    if (in.micro < 0 || in > effective.i_max) {
      diags.error(diag::kIntensityRange,
                  "intensity " + format_decimal(in.micro) + " of unit " + id + " outside [0, " +
                      format_decimal(effective.i_max.micro) + "]",
                  decl.intensity_span);
      units_ok = false;
    }
    units_ok &= decl.ok;
  }

  using Key = std::tuple<RelationKind, std::string, std::string>;
  std::map<Key, const RelationDecl*> seen;
  bool relations_ok = true;
  for (const auto& decl : p.relations) {
    const Relation& rel = decl.relation;
    const auto ia = by_id.find(rel.a);
    const auto ib = by_id.find(rel.b);
    if (ia == by_id.end()) {
      diags.error(diag::kUnknownReference, "unknown unit '" + rel.a + "'", decl.a_span);
      relations_ok = false;
    }
    if (ib == by_id.end() && rel.b != rel.a) {
      diags.error(diag::kUnknownReference, "unknown unit '" + rel.b + "'", decl.b_span);
      relations_ok = false;
    }
    if (rel.a == rel.b) {
      diags.error(diag::kSelfRelation, "relation connects unit '" + rel.a + "' to itself", decl.span);
      relations_ok = false;
      continue;
    }
    const auto [ca, cb] = rel.endpoints();
    if (auto [it, fresh] = seen.emplace(Key{rel.kind, ca, cb}, &decl); !fresh) {
      diags.error(diag::kDuplicate,
                  "duplicate " + std::string(to_string(rel.kind)) + " between '" + ca + "' and '" + cb +
                      "' (first declared at " + at(it->second->span) + ")",
                  decl.span, {it->second->span});
      relations_ok = false;
    }
    if (ia == by_id.end() || ib == by_id.end()) continue;
    const EoCoS& ua = ia->second->unit;
    const EoCoS& ub = ib->second->unit;
    if (rel.kind == RelationKind::Contiguity) {
      for (const EoCoS* u : {&ua, &ub}) {
        if (!u->items.contains(rel.via)) {
          diags.error(diag::kUnknownReference, "via item '" + rel.via + "' is not an item of unit " + u->id,
                      decl.via_span);
          relations_ok = false;
        }
      }
    }
    if (rel.kind == RelationKind::Resemblance && ua.subject != ub.subject) {
      std::string msg = "resemblance between units with different subjects ('" + ua.subject + "' in " + ua.id +
                        ", '" + ub.subject + "' in " + ub.id + ")";
      if (allow_cross_subject) {
        diags.warning(diag::kCrossSubjectResemblance, msg, decl.span);
      } else {
        diags.error(diag::kCrossSubjectResemblance, msg, decl.span);
        relations_ok = false;
      }
    }
  }

  if (!units_ok || !relations_ok) return;
  for (auto& decl : p.units) out.units.emplace(decl.unit.id, std::move(decl.unit));
  for (auto& decl : p.relations) out.relations.push_back(std::move(decl.relation));
}

template <typename T>
void set_if(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

}  // namespace

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = at(d.span) + ": " + (d.severity == Severity::Error ? "error " : "warning ") + d.code + ": " +
                    d.message;
  return out;
}

bool ConfigOverrides::empty() const { return *this == ConfigOverrides{}; }

void ConfigOverrides::apply_to(MontageConfig& cfg) const {
  if (alpha) cfg.alpha = *alpha;
  if (beta_enabling) cfg.beta_enabling = *beta_enabling;
  if (beta_preventing) cfg.beta_preventing = *beta_preventing;
  if (beta_triggering) cfg.beta_triggering = *beta_triggering;
  if (gamma) cfg.gamma = *gamma;
  if (i_max) cfg.i_max = *i_max;
  if (kappa) cfg.kappa = *kappa;
  if (rho) cfg.rho = *rho;
  if (rounds) cfg.rounds = *rounds;
  if (sigma) cfg.sigma = *sigma;
  if (tau) cfg.tau = *tau;
}

ConfigOverrides ConfigOverrides::layered_under(const ConfigOverrides& top) const {
  ConfigOverrides out = *this;
  set_if(out.alpha, top.alpha);
  set_if(out.beta_enabling, top.beta_enabling);
  set_if(out.beta_preventing, top.beta_preventing);
  set_if(out.beta_triggering, top.beta_triggering);
  set_if(out.gamma, top.gamma);
  set_if(out.i_max, top.i_max);
  set_if(out.kappa, top.kappa);
  set_if(out.rho, top.rho);
  set_if(out.rounds, top.rounds);
  set_if(out.sigma, top.sigma);
  set_if(out.tau, top.tau);
  return out;
}

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> kKeys = {
      "alpha", "beta_enabling", "beta_preventing", "beta_triggering", "gamma", "i_max",
      "kappa", "rho",           "rounds",          "sigma",           "tau",
  };
  return kKeys;
}

std::optional<std::pair<std::string_view, std::string>> set_config_value(ConfigOverrides& cfg,
                                                                         std::string_view key,
                                                                         std::string_view value) {
  using Result = std::optional<std::pair<std::string_view, std::string>>;
  const std::string k(key);
  if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) {
    return Result{{diag::kSyntax, "unknown config key '" + k + "'"}};
  }
  const auto micro = parse_decimal_micro(value);
  if (!micro) {
    return Result{{diag::kSyntax, "malformed value '" + std::string(value) + "' for " + k +
                                      "; expected a decimal with at most 6 fractional digits"}};
  }
  const auto range = [&](const std::string& rule) { return Result{{diag::kConfigRange, k + " must be " + rule}}; };
  const std::int64_t m = *micro;

  if (key == "rounds") {
    if (m % kMicroPerUnit != 0 || m < kMicroPerUnit || m / kMicroPerUnit > 1'000'000) {
      return range("an integer in [1, 1000000]");
    }
    cfg.rounds = static_cast<int>(m / kMicroPerUnit);
    return std::nullopt;
  }
  if (key == "sigma") {
    if (m < 0 || m > kMicroPerUnit) return range("in [0, 1]");
    cfg.sigma = Coefficient::from_micro(m);
    return std::nullopt;
  }
  if (key.substr(0, 5) == "beta_") {
    const auto c = Coefficient::from_micro(m);
    if (key == "beta_enabling") cfg.beta_enabling = c;
    if (key == "beta_preventing") cfg.beta_preventing = c;
    if (key == "beta_triggering") cfg.beta_triggering = c;
    return std::nullopt;
  }
  if (m < 0) return range(">= 0");
  if (key == "alpha") cfg.alpha = Coefficient::from_micro(m);
  if (key == "gamma") cfg.gamma = Coefficient::from_micro(m);
  if (key == "kappa") cfg.kappa = Coefficient::from_micro(m);
  if (key == "i_max") cfg.i_max = Intensity::from_micro(m);
  if (key == "rho") cfg.rho = Intensity::from_micro(m);
  if (key == "tau") cfg.tau = Intensity::from_micro(m);
  return std::nullopt;
}

bool structurally_equal(const ScenarioDoc& a, const ScenarioDoc& b) {
  return a.name == b.name && a.config == b.config &&
         a.allow_cross_subject_resemblance == b.allow_cross_subject_resemblance &&
         canonical(a.structure) == canonical(b.structure);
}

std::size_t ParseResult::error_count() const {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

std::size_t ParseResult::warning_count() const { return diagnostics.size() - error_count(); }

bool ParseResult::has_syntax_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error && d.code == diag::kSyntax;
  });
}

ParseResult parse_scenario(std::string_view text) {
  ParseResult result;
  Diagnostics diags(result.diagnostics);
  std::vector<Pragma> pragmas;
  Parser parser(Lexer(text, diags).run(pragmas), diags);
  parser.run();

  bool allow_cross_subject = false;
  for (const auto& p : pragmas) {
    if (p.name == "allow-cross-subject-resemblance") {
      allow_cross_subject = true;
    } else {
      diags.warning(diag::kUnknownPragma, "unknown pragma '" + std::string(p.name) + "' ignored", p.span);
    }
  }

  Structure structure;
  check_document(parser, allow_cross_subject, diags, structure);
  std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                   [](const Diagnostic& l, const Diagnostic& r) { return l.span.offset < r.span.offset; });
  if (result.error_count() == 0 && parser.saw_header) {
    result.doc = ScenarioDoc{std::move(parser.name), std::move(structure), parser.config, allow_cross_subject};
  }
  return result;
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string config_value_text(const ConfigOverrides& c, std::string_view key) {
  const auto coef = [](const std::optional<Coefficient>& v) {
    return v ? format_decimal(v->micro) : std::string();
  };
  const auto inten = [](const std::optional<Intensity>& v) {
    return v ? format_decimal(v->micro) : std::string();
  };
  if (key == "alpha") return coef(c.alpha);
  if (key == "beta_enabling") return coef(c.beta_enabling);
  if (key == "beta_preventing") return coef(c.beta_preventing);
  if (key == "beta_triggering") return coef(c.beta_triggering);
  if (key == "gamma") return coef(c.gamma);
  if (key == "i_max") return inten(c.i_max);
  if (key == "kappa") return coef(c.kappa);
  if (key == "rho") return inten(c.rho);
  if (key == "rounds") return c.rounds ? std::to_string(*c.rounds) : std::string();
  if (key == "sigma") return coef(c.sigma);
  if (key == "tau") return inten(c.tau);
  return {};
}

void write_side_list(std::ostringstream& out, const Placement& p, Side side) {
  out << "    " << to_string(side) << ": [";
  bool first = true;
  for (const auto& [item, s] : p) {
    if (s != side) continue;
    if (!first) out << ", ";
    out << item;
    first = false;
  }
  out << "]\n";
}

}  // namespace

std::string serialize_scenario(const ScenarioDoc& doc) {
  std::ostringstream out;
  out << "scenario " << quote(doc.name) << "\n";
  if (doc.allow_cross_subject_resemblance) out << "#pragma allow-cross-subject-resemblance\n";
  if (!doc.config.empty()) {
    out << "\nconfig {\n";
    for (auto key : config_keys()) {
      const std::string value = config_value_text(doc.config, key);
      if (!value.empty()) out << "  " << key << " = " << value << "\n";
    }
    out << "}\n";
  }
  for (const auto& [id, unit] : doc.structure.units) {
    out << "\neocos " << id << " {\n";
    out << "  subject: " << unit.subject << "\n";
    out << "  intensity: " << format_decimal(unit.intensity.micro) << "\n";
    out << "  items {\n";
    for (const auto& [item, kind] : unit.items) out << "    " << item << ": " << to_string(kind) << "\n";
    out << "  }\n";
    for (const auto& [label, placement] : {std::pair{"ideal", &unit.ideal}, std::pair{"actual", &unit.actual}}) {
      out << "  " << label << " {\n";
      write_side_list(out, *placement, Side::Near);
      write_side_list(out, *placement, Side::Far);
      out << "  }\n";
    }
    out << "}\n";
  }
  const Structure sorted = canonical(doc.structure);
  if (!sorted.relations.empty()) out << "\n";
  for (const auto& rel : sorted.relations) {
    switch (rel.kind) {
      case RelationKind::Resemblance:
        out << "resemble " << rel.a << " ~ " << rel.b << "\n";
        break;
      case RelationKind::Contiguity:
        out << "contiguous " << rel.a << " - " << rel.b << " via " << rel.via << "\n";
        break;
      case RelationKind::Causation:
        out << "cause " << rel.a << " -> " << rel.b << " class = " << to_string(rel.cause) << "\n";
        break;
      case RelationKind::Opposition:
        break;  // synthesized, never written
    }
  }
  return out.str();
}

ConfigFileResult parse_config_text(std::string_view text) {
  ConfigFileResult result;
  Diagnostics diags(result.diagnostics);
  std::vector<Pragma> pragmas;
  const std::vector<Token> toks = Lexer(text, diags).run(pragmas);
  std::set<std::string_view> seen;
  std::size_t i = 0;
  while (toks[i].kind != Tok::End) {
    const Token& key = toks[i];
    const Token& eq = toks[std::min(i + 1, toks.size() - 1)];
    const Token& value = toks[std::min(i + 2, toks.size() - 1)];
    if (key.kind != Tok::Word || eq.kind != Tok::Equals || value.kind != Tok::Number) {
      diags.error(diag::kSyntax, "expected 'key = value'", key.span);
      ++i;
      while (toks[i].kind != Tok::End && !toks[i].line_start) ++i;
      continue;
    }
    if (!seen.insert(key.text).second) {
      diags.error(diag::kDuplicate, "duplicate config key '" + std::string(key.text) + "'", key.span);
    } else if (auto err = set_config_value(result.overrides, key.text, value.text)) {
      diags.error(err->first, err->second, key.span);
    }
    i += 3;
  }
  return result;
}

}  // namespace eocos
