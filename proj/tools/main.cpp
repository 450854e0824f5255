#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"

#include "syngen/desc.hpp"
#include "syngen/laws.hpp"
#include "syngen/stlc.hpp"
#include "syngen/termgen.hpp"
#include "syngen/typecheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;    // scope/type/law failure
constexpr int kExitBadInput = 2;   // parse error, bad flags
constexpr int kExitFuel = 3;       // fuel exhausted

using namespace syngen;

std::string read_input(const std::string& path) {
  std::ostringstream out;
  if (path.empty() || path == "-") {
    out << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    out << in.rdbuf();
  }
  return out.str();
}

LanguageDescription resolve_lang(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    auto opt = stlc::parse_builtin_id(spec.substr(prefix.size()));
    if (!opt) throw ParseError("unknown builtin language: " + spec);
    return stlc::description(*opt);
  }
  return load_language_file(spec);
}

// Comma-separated types; commas inside parentheses do not split.
Ctx parse_ctx(const std::string& s) {
  Ctx ctx;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    std::size_t a = cur.find_first_not_of(" \t");
    if (a == std::string::npos) return;
    std::size_t b = cur.find_last_not_of(" \t");
    ctx.push_back(parse_ty(cur.substr(a, b - a + 1)));
  };
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      flush();
      cur.clear();
    } else {
      cur += c;
    }
  }
  flush();
  return ctx;
}

ExprPtr parse_term(const LanguageDescription& lang, const std::string& text, bool as_form,
                   std::size_t scope) {
  if (!as_form) return parse_expr(lang, text, scope);
  FormPtr f = parse_form(lang, text);
  std::vector<std::string> env;  // names resolve against an empty environment
  return resolve(lang, env, f);
}

int cmd_lang_export(const std::string& spec) {
  std::cout << language_to_json(resolve_lang(spec)).dump(2) << "\n";
  return kExitOk;
}

int cmd_lang_validate(const std::string& path) {
  LanguageDescription lang = load_language_file(path);
  std::vector<std::string> diags = validate_description(lang);
  if (diags.empty()) {
    std::cout << "ok\n";
    return kExitOk;
  }
  for (const auto& d : diags) std::cout << d << "\n";
  return kExitFailure;
}

struct TermArgs {
  std::string lang;
  std::string ctx;
  std::string type;
  std::string file;
  bool form = false;
};

int cmd_term_check(const TermArgs& a) {
  LanguageDescription lang = resolve_lang(a.lang);
  Ctx ctx = parse_ctx(a.ctx);
  ExprPtr e = parse_term(lang, read_input(a.file), a.form, ctx.size());
  TypedTerm tm = check(lang, ctx, e, parse_ty(a.type));
  std::cout << print_tm(tm.root) << "\n";
  return kExitOk;
}

int cmd_term_infer(const TermArgs& a) {
  LanguageDescription lang = resolve_lang(a.lang);
  Ctx ctx = parse_ctx(a.ctx);
  ExprPtr e = parse_term(lang, read_input(a.file), a.form, ctx.size());
  auto [tm, ty] = infer(lang, ctx, e);
  std::cout << print_ty(ty) << "\n" << print_tm(tm.root) << "\n";
  return kExitOk;
}

int cmd_term_erase(const TermArgs& a) {
  LanguageDescription lang = resolve_lang(a.lang);
  Ctx ctx = parse_ctx(a.ctx);
  ExprPtr e = parse_term(lang, read_input(a.file), a.form, ctx.size());
  TypedTerm tm = a.type.empty() ? infer(lang, ctx, e).first
                                : check(lang, ctx, e, parse_ty(a.type));
  std::cout << print_expr(untype(lang, tm)) << "\n";
  return kExitOk;
}

struct StlcArgs {
  std::string style = "Curry";
  std::string type;
  std::string file;
  bool no_bool = false;
  std::size_t fuel = 10000;
  bool trace = false;
};

stlc::Options stlc_options(const StlcArgs& a, stlc::Flavour flavour) {
  stlc::Options opt;
  opt.flavour = flavour;
  opt.style = a.style == "Church" ? stlc::Style::Church : stlc::Style::Curry;
  opt.bools = !a.no_bool;
  return opt;
}

TypedTerm stlc_read(const StlcArgs& a, const LanguageDescription& lang) {
  ExprPtr e = parse_term(lang, read_input(a.file), /*as_form=*/true, 0);
  Ctx empty;
  if (!a.type.empty()) return check(lang, empty, e, parse_ty(a.type));
  return infer(lang, empty, e).first;
}

int cmd_stlc_desugar(const StlcArgs& a) {
  stlc::Options opt = stlc_options(a, stlc::Flavour::Sugared);
  LanguageDescription lang = stlc::description(opt);
  TypedTerm tm = stlc_read(a, lang);
  TypedTerm out = stlc::desugar(opt, tm);
  std::cout << print_tm(out.root) << "\n";
  return kExitOk;
}

int cmd_stlc_eval(const StlcArgs& a) {
  stlc::Options sugared = stlc_options(a, stlc::Flavour::Sugared);
  LanguageDescription slang = stlc::description(sugared);
  TypedTerm tm = stlc_read(a, slang);
  TypedTerm core = stlc::desugar(sugared, tm);

  stlc::Options desugared = sugared;
  desugared.flavour = stlc::Flavour::Desugared;
  LanguageDescription dlang = stlc::description(desugared);
  stlc::StepTrace trace = stlc::eval(dlang, core, a.fuel);
  if (a.trace)
    for (const auto& s : trace.steps) std::cout << "[" << s.first << "]\n";
  if (trace.stuck || trace.preservation_violated) {
    std::cerr << (trace.stuck ? "stuck term" : "preservation violated") << "\n";
    return kExitFailure;
  }
  if (trace.fuel_exhausted) {
    std::cerr << "fuel exhausted after " << a.fuel << " steps\n";
    return kExitFuel;
  }
  std::cout << print_tm(trace.result.root) << "\n";
  return kExitOk;
}

struct LawsArgs {
  std::string lang;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::size_t depth = 6;
  std::size_t max_ctx = 4;
};

int cmd_laws(const LawsArgs& a) {
  LanguageDescription lang = resolve_lang(a.lang);
  auto results = run_subst_laws(lang, a.seed, a.count, a.depth, a.max_ctx);
  std::cout << render_law_results(results);
  return all_passed(results) ? kExitOk : kExitFailure;
}

struct GenArgs {
  std::string lang;
  std::string type;
  std::string ctx;
  std::size_t budget = 6;
  std::uint64_t seed = 0;
  std::size_t count = 10;
  bool enumerate = false;
  std::size_t max_nodes = 4;
};

int cmd_gen(const GenArgs& a) {
  LanguageDescription lang = resolve_lang(a.lang);
  if (a.enumerate) {
    for (const auto& [ty, tm] : enum_closed(lang, a.max_nodes))
      std::cout << print_tm(tm.root) << " : " << print_ty(ty) << "\n";
    return kExitOk;
  }
  GenConfig cfg;
  cfg.seed = a.seed;
  cfg.max_depth = a.budget;
  cfg.count = a.count;
  TypedTermGen gen(lang, parse_ctx(a.ctx), parse_ty(a.type), cfg);
  for (std::size_t i = 0; i < a.count; ++i) {
    auto tm = gen.next();
    if (!tm) {
      std::cerr << "generator exhausted after " << i << " terms\n";
      return kExitFailure;
    }
    std::cout << print_tm(tm->root) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generic well-scoped, well-typed syntax toolkit"};
  app.require_subcommand(1);

  // lang validate <desc.json>
  auto* lang_cmd = app.add_subcommand("lang", "Description operations");
  lang_cmd->require_subcommand(1);
  std::string validate_path;
  auto* validate = lang_cmd->add_subcommand("validate", "Validate a JSON description");
  validate->add_option("desc", validate_path, "Description file")->required();
  std::string export_spec;
  auto* lang_export = lang_cmd->add_subcommand("export", "Print a description as JSON");
  lang_export->add_option("lang", export_spec, "Description file or builtin:<id>")->required();

  // term check|infer|erase
  auto* term_cmd = app.add_subcommand("term", "Term operations");
  term_cmd->require_subcommand(1);
  TermArgs targs;
  auto add_term_common = [&](CLI::App* sub) {
    sub->add_option("--lang", targs.lang, "Description file or builtin:<id>")->required();
    sub->add_option("--ctx", targs.ctx, "Comma-separated context types, innermost last");
    sub->add_flag("--form", targs.form, "Input uses named variables");
    sub->add_option("file", targs.file, "Term file (default stdin)");
  };
  auto* term_check = term_cmd->add_subcommand("check", "Check a term against a type");
  add_term_common(term_check);
  term_check->add_option("--type", targs.type, "Expected type")->required();
  auto* term_infer = term_cmd->add_subcommand("infer", "Infer a term's type");
  add_term_common(term_infer);
  auto* term_erase = term_cmd->add_subcommand("erase", "Check then erase to scoped form");
  add_term_common(term_erase);
  term_erase->add_option("--type", targs.type, "Expected type (inferred when absent)");

  // stlc desugar|eval
  auto* stlc_cmd = app.add_subcommand("stlc", "Lambda-calculus pipelines");
  stlc_cmd->require_subcommand(1);
  StlcArgs sargs;
  auto add_stlc_common = [&](CLI::App* sub) {
    sub->add_option("--style", sargs.style, "Curry or Church")
        ->check(CLI::IsMember({"Curry", "Church"}));
    sub->add_flag("--no-bool", sargs.no_bool, "Drop the boolean fragment");
    sub->add_option("--type", sargs.type, "Expected type (inferred when absent)");
    sub->add_option("file", sargs.file, "Term file (default stdin)");
  };
  auto* stlc_desugar = stlc_cmd->add_subcommand("desugar", "Eliminate let bindings");
  add_stlc_common(stlc_desugar);
  auto* stlc_eval = stlc_cmd->add_subcommand("eval", "Normalize a closed term");
  add_stlc_common(stlc_eval);
  stlc_eval->add_option("--fuel", sargs.fuel, "Maximum step count");
  stlc_eval->add_flag("--trace", sargs.trace, "Print the rule used at each step");

  // laws
  LawsArgs largs;
  auto* laws = app.add_subcommand("laws", "Run the substitution law suite");
  laws->add_option("--lang", largs.lang, "Description file or builtin:<id>")->required();
  laws->add_option("--seed", largs.seed, "Generator seed");
  laws->add_option("--count", largs.count, "Number of generated terms");
  laws->add_option("--depth", largs.depth, "Maximum term depth");
  laws->add_option("--max-ctx", largs.max_ctx, "Maximum context size");

  // gen
  GenArgs gargs;
  auto* gen = app.add_subcommand("gen", "Generate or enumerate well-typed terms");
  gen->add_option("--lang", gargs.lang, "Description file or builtin:<id>")->required();
  gen->add_option("--type", gargs.type, "Result type");
  gen->add_option("--ctx", gargs.ctx, "Comma-separated context types");
  gen->add_option("--budget", gargs.budget, "Maximum term depth");
  gen->add_option("--seed", gargs.seed, "Generator seed");
  gen->add_option("--count", gargs.count, "Number of terms");
  gen->add_flag("--enum", gargs.enumerate, "Enumerate all closed terms instead");
  gen->add_option("--max-nodes", gargs.max_nodes, "Node budget for --enum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (*validate) return cmd_lang_validate(validate_path);
    if (*lang_export) return cmd_lang_export(export_spec);
    if (*term_check) return cmd_term_check(targs);
    if (*term_infer) return cmd_term_infer(targs);
    if (*term_erase) return cmd_term_erase(targs);
    if (*stlc_desugar) return cmd_stlc_desugar(sargs);
    if (*stlc_eval) return cmd_stlc_eval(sargs);
    if (*laws) return cmd_laws(largs);
    if (*gen) {
      if (!gargs.enumerate && gargs.type.empty()) {
        std::cerr << "gen: --type is required unless --enum is given\n";
        return kExitBadInput;
      }
      return cmd_gen(gargs);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.render() << "\n";
    return kExitFailure;
  } catch (const ResolveError& e) {
    std::cerr << "scope error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const stlc::OpenTerm& e) {
    std::cerr << "open term: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
