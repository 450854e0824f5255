#pragma once

#include <optional>

#include "syngen/subst.hpp"
#include "syngen/typecheck.hpp"

namespace syngen::stlc {

enum class Flavour { Sugared, Desugared };
enum class Style { Curry, Church };

struct Options {
  Flavour flavour = Flavour::Desugared;
  Style style = Style::Curry;
  bool bools = false;
  bool letrec = false;
};

/// Assembles the simply typed lambda calculus description for the given
/// options: app + lam always, let when sugared, true/false/if when bools,
/// letrec (typecheck only) when requested.
LanguageDescription description(const Options& opt);

/// Parses `stlc:<flavour>:<style>[:bool][:letrec]`.
std::optional<Options> parse_builtin_id(const std::string& id);
std::string builtin_id(const Options& opt);

Ty ty_base();
Ty ty_bool();
Ty ty_arrow(Ty from, Ty to);

// Term builders over an STLC description (used by desugaring and tests).
TmPtr tm_app(TmPtr f, TmPtr e);
TmPtr tm_lam(const Options& opt, Ty binder, TmPtr body);
TmPtr tm_let(Ty binder, TmPtr def, TmPtr body);
TmPtr tm_true();
TmPtr tm_false();
TmPtr tm_if(TmPtr cond, TmPtr thn, TmPtr els);

/// Wraps an expression at scope V in V lambda abstractions. In Church style
/// `binder_tys[i]` annotates the binder of variable index i; it must have
/// length V. Curry style ignores it.
ExprPtr close_expr(const Options& opt, const ExprPtr& e,
                   const std::vector<Ty>& binder_tys = {});

/// Type-preserving let elimination; output is a term of the desugared
/// description at the same context and type.
TypedTerm desugar(const Options& opt, const TypedTerm& e);

bool is_value(const TypedTerm& e);

struct OpenTerm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One step of the call-by-value small-step relation on closed terms;
/// nullopt when e is a value or stuck.
std::optional<std::pair<std::string, TypedTerm>> step(const LanguageDescription& lang,
                                                      const TypedTerm& e);

struct StepTrace {
  std::vector<std::pair<std::string, TypedTerm>> steps;
  TypedTerm result;
  bool fuel_exhausted = false;
  bool stuck = false;
  bool preservation_violated = false;
};

/// Iterates step until a value, checking every intermediate term against the
/// original type. Stuck or preservation failures indicate framework bugs.
StepTrace eval(const LanguageDescription& lang, const TypedTerm& e, std::size_t fuel);

}  // namespace syngen::stlc
