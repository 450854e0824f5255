#pragma once

#include <map>

#include "syngen/terms.hpp"

namespace syngen {

/// Metavariable of a single node's constraint: the types of its newly bound
/// variables (B), its subterms (S), the node itself (R), or a stored type
/// payload (P). Solving never crosses node boundaries.
struct MetaKey {
  enum Kind { B = 0, S = 1, R = 2, P = 3 };
  Kind kind = R;
  std::size_t index = 0;
  std::string name;

  friend bool operator<(const MetaKey& a, const MetaKey& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.index != b.index) return a.index < b.index;
    return a.name < b.name;
  }
};

struct UnifyState {
  std::map<MetaKey, TyPattern> bindings;
};

enum class ErrKind {
  Mismatch,
  AnnotationRequired,
  UnboundVar,
  OccursCheck,
  ConstraintUnsatisfied,
  ContextMismatch,
};

const char* err_kind_name(ErrKind k);

struct TypeError {
  ErrKind kind = ErrKind::Mismatch;
  std::vector<std::size_t> path;
  std::string detail;

  std::string render() const;
};

/// Fully substitutes bound metavariables into a pattern.
TyPattern apply_bindings(const UnifyState& st, const TyPattern& p);
bool pattern_ground(const TyPattern& p);
Ty pattern_to_ty(const TyPattern& p);  // requires pattern_ground

/// First-order unification; extends st so that both patterns become equal
/// under it (most general). Throws TypeError (Mismatch or OccursCheck, with
/// an empty path) on failure.
void unify(const TyPattern& p1, const TyPattern& p2, UnifyState& st);

/// Like unify but reports failure by return value, without diagnostics. On
/// failure st may hold a partial extension. For search-heavy callers.
bool try_unify(const TyPattern& p1, const TyPattern& p2, UnifyState& st);

/// Checks a scoped expression against a type, producing the typed term.
/// Throws TypeError.
TypedTerm check(const LanguageDescription& lang, const Ctx& ctx, const ExprPtr& e,
                const Ty& t);

/// Synthesizes the type of a scoped expression. Throws TypeError; in
/// particular AnnotationRequired when the node's type is underdetermined.
std::pair<TypedTerm, Ty> infer(const LanguageDescription& lang, const Ctx& ctx,
                               const ExprPtr& e);

/// Re-derives every node's well-typedness witness; empty result = valid.
std::vector<TypeError> validate_typed(const LanguageDescription& lang, const TypedTerm& e);

}  // namespace syngen
