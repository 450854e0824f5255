#pragma once

#include "syngen/terms.hpp"

namespace syngen {

struct ContextMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Order-preserving embedding of a target context Delta into a source
/// context Gamma. Steps are stored left-to-right alongside Gamma; replaying
/// all steps rebuilds Gamma, replaying the Keep steps rebuilds Delta.
struct OpeStep {
  bool keep = true;
  Ty ty;
};

struct Ope {
  std::vector<OpeStep> steps;

  Ctx source() const;
  Ctx target() const;
};

bool operator==(const Ope& a, const Ope& b);

/// Identity embedding: Keep at every position.
Ope refl_ope(const Ctx& ctx);

/// Maps a variable of the target context to the source context; the type is
/// preserved by construction.
TypedVar ren_var(const Ope& rho, TypedVar v);

/// Extends rho under a binder group: one Keep per type, left-to-right.
Ope keep_star(const std::vector<Ty>& tys, Ope rho);

/// rho2 after rho1; ren_var(result, v) == ren_var(rho2, ren_var(rho1, v)).
/// Throws ContextMismatch when rho2's target differs from rho1's source.
Ope compose_ope(const Ope& rho2, const Ope& rho1);

/// Simultaneous substitution Gamma |-* Delta: one term in Gamma per entry of
/// Delta, stored in context order (last entry for the most recent binding).
struct Subst {
  Ctx source;  // Gamma: context the entries live in
  Ctx target;  // Delta: context being substituted away
  std::vector<TmPtr> entries;
};

bool subst_equal(const Subst& a, const Subst& b);

/// Entry for a variable: index 0 returns the last entry.
TmPtr lookup_var(const Subst& sigma, TypedVar v);

/// Identity substitution: every variable maps to itself.
Subst refl_sub(const Ctx& ctx);

/// Weakens every entry under the new binders and appends fresh variables for
/// them; needs the description to push renamings under binders.
Subst shift_star(const LanguageDescription& lang, const std::vector<Ty>& tys,
                 const Subst& sigma);

/// lookup(result, v) == lookup(sigma, ren_var(rho, v)).
Subst compose_sub_ope(const Subst& sigma, const Ope& rho);

/// lookup(result, v) == ren(rho, lookup(sigma, v)).
Subst compose_ope_sub(const LanguageDescription& lang, const Ope& rho, const Subst& sigma);

/// lookup(result, v) == sub(sigma2, lookup(sigma1, v)).
Subst compose_sub_sub(const LanguageDescription& lang, const Subst& sigma2,
                      const Subst& sigma1);

/// Appends one entry: (sigma , e) extends the target with e's type.
Subst snoc_sub(Subst sigma, const TypedTerm& e);

}  // namespace syngen
