#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "eocos/error.hpp"
#include "eocos/montage.hpp"
#include "eocos/nl2.hpp"
#include "eocos/render.hpp"
#include "eocos/report_io.hpp"

namespace eocos::cli {

namespace {

struct Invocation {
  std::string input;
  std::string output;
  std::string format = "text";
  bool resolve = false;
  bool no_deltas = false;
  bool after_montage = false;
  std::string rankdir = "LR";
  std::map<std::string, std::string> config_flags;  // key -> raw decimal text
};

std::optional<std::string> read_all(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) return std::nullopt;
  std::ostringstream buf;
  buf << file.rdbuf();
  if (file.bad()) return std::nullopt;
  return buf.str();
}

void print_diagnostics(const std::string& source, const std::vector<Diagnostic>& diags, std::ostream& err) {
  for (const auto& d : diags) err << source << ":" << format_diagnostic(d) << "\n";
}

int failure_code(const std::vector<Diagnostic>& diags) {
  bool errors = false;
  for (const auto& d : diags) {
    if (d.severity != Severity::Error) continue;
    if (d.code == diag::kSyntax) return kParseError;
    errors = true;
  }
  return errors ? kValidationError : kOk;
}

void add_config_flags(CLI::App* cmd, Invocation& inv) {
  for (auto key : config_keys()) {
    std::string flag = "--" + std::string(key);
    std::replace(flag.begin(), flag.end(), '_', '-');
    cmd->add_option(flag, inv.config_flags[std::string(key)], "override config key " + std::string(key));
  }
  cmd->add_flag("--resolve", inv.resolve, "execute pseudo-will crossings gated by rho");
}

class Runner {
 public:
  Runner(const Invocation& inv, std::istream& in, std::ostream& out, std::ostream& err, const Environment& env)
      : inv_(inv), in_(in), out_(out), err_(err), env_(env) {}

  int check() {
    auto parsed = parse_input();
    if (!parsed) return kIoError;
    const auto& result = *parsed;
    print_diagnostics(source(), result.diagnostics, err_);
    std::size_t units = 0;
    std::size_t relations = 0;
    if (result.doc) {
      units = result.doc->structure.units.size();
      relations = result.doc->structure.relations.size();
    }
    out_ << source() << ": " << units << " units, " << relations << " relations, " << result.error_count()
         << " errors, " << result.warning_count() << " warnings\n";
    return failure_code(result.diagnostics);
  }

  int run(const std::string& command) {
    auto parsed = parse_input();
    if (!parsed) return kIoError;
    print_diagnostics(source(), parsed->diagnostics, err_);
    if (!parsed->doc) return failure_code(parsed->diagnostics);
    const ScenarioDoc& doc = *parsed->doc;

    MontageConfig cfg;
    if (int rc = layer_config(doc, cfg); rc != kOk) return rc;

    EoSReport report;
    try {
      report = run_eos(doc.structure, cfg);
    } catch (const EngineError& e) {
      err_ << source() << ": " << e.what() << "\n";
      const bool user_error = e.code() == ErrorCode::InvalidStructure || e.code() == ErrorCode::InvalidConfig;
      return user_error ? kValidationError : kInternalError;
    }

    std::string payload;
    if (command == "montage") {
      payload = inv_.format == "json" ? report_to_json(report)
                                      : "scenario " + doc.name + "\n" + report_to_text(report);
    } else if (command == "render") {
      RenderOptions opts;
      opts.show_deltas = !inv_.no_deltas;
      opts.after_montage = inv_.after_montage;
      opts.rankdir = inv_.rankdir == "TB" ? RankDir::TB : RankDir::LR;
      payload = emit_dot(doc.structure, &report, opts);
    } else {
      payload = emit_trace_json(report);
    }
    return write_payload(payload);
  }

 private:
  std::string source() const { return inv_.input == "-" ? "<stdin>" : inv_.input; }

  std::optional<ParseResult> parse_input() {
    auto text = read_all(inv_.input, in_);
    if (!text) {
      err_ << source() << ": cannot read input\n";
      return std::nullopt;
    }
    return parse_scenario(*text);
  }

  // defaults < EOCOS_CONFIG file < scenario config block < CLI flags
  int layer_config(const ScenarioDoc& doc, MontageConfig& cfg) {
    ConfigOverrides layered;
    if (env_.config_path && !env_.config_path->empty()) {
      std::ifstream file(*env_.config_path, std::ios::binary);
      if (!file) {
        err_ << *env_.config_path << ": cannot read config file (EOCOS_CONFIG)\n";
        return kIoError;
      }
      std::ostringstream buf;
      buf << file.rdbuf();
      auto parsed = parse_config_text(buf.str());
      print_diagnostics(*env_.config_path, parsed.diagnostics, err_);
      if (int rc = failure_code(parsed.diagnostics); rc != kOk) return rc;
      layered = parsed.overrides;
    }
    layered = layered.layered_under(doc.config);

    ConfigOverrides flags;
    std::vector<Diagnostic> flag_diags;
    for (const auto& [key, value] : inv_.config_flags) {
      if (value.empty()) continue;
      if (auto e = set_config_value(flags, key, value)) {
        Diagnostic d;
        d.code = std::string(e->first);
        d.message = "--" + key + ": " + e->second;
        flag_diags.push_back(std::move(d));
      }
    }
    for (const auto& d : flag_diags) err_ << "command line: error " << d.code << ": " << d.message << "\n";
    if (int rc = failure_code(flag_diags); rc != kOk) return rc;
    layered = layered.layered_under(flags);

    layered.apply_to(cfg);
    cfg.resolve = inv_.resolve;
    return kOk;
  }

  int write_payload(const std::string& payload) {
    if (inv_.output.empty() || inv_.output == "-") {
      out_ << payload;
      return kOk;
    }
    std::ofstream file(inv_.output, std::ios::binary | std::ios::trunc);
    file << payload;
    file.close();
    if (!file) {
      err_ << inv_.output << ": cannot write output\n";
      return kIoError;
    }
    return kOk;
  }

  const Invocation& inv_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  const Environment& env_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
            const Environment& env) {
  Invocation inv;
  CLI::App app{"Montage engine for contradictory-structure scenarios (NL2)", "eocos"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "parse and validate a scenario");
  auto* montage = app.add_subcommand("montage", "run montage and print the EoS report");
  auto* render = app.add_subcommand("render", "run montage and print plates and lines as DOT");
  auto* trace = app.add_subcommand("trace", "run montage and print every intensity delta as JSON");

  for (auto* cmd : {check, montage, render, trace}) {
    cmd->add_option("input", inv.input, "scenario file, or - for standard input")->required();
  }
  for (auto* cmd : {montage, render, trace}) {
    add_config_flags(cmd, inv);
    cmd->add_option("-o,--output", inv.output, "write the payload to this file");
  }
  montage->add_option("--format", inv.format, "report format")->check(CLI::IsMember({"text", "json"}));
  render->add_flag("--no-deltas", inv.no_deltas, "omit delta annotations on lines");
  render->add_flag("--after-montage", inv.after_montage, "draw post-montage intensities and placements");
  render->add_option("--rankdir", inv.rankdir, "graph direction")->check(CLI::IsMember({"LR", "TB"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "eocos: " << e.what() << "\n";
    return kParseError;
  }

  try {
    Runner runner(inv, in, out, err, env);
    if (check->parsed()) return runner.check();
    if (montage->parsed()) return runner.run("montage");
    if (render->parsed()) return runner.run("render");
    return runner.run("trace");
  } catch (const std::exception& e) {
    err << "eocos: internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace eocos::cli
