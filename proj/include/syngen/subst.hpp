#pragma once

#include "syngen/scope.hpp"

namespace syngen {

/// Type-preserving renaming: result lives in rho's source context, same type.
/// Throws ContextMismatch when rho's target is not e's context.
TypedTerm ren(const LanguageDescription& lang, const Ope& rho, const TypedTerm& e);

/// Simultaneous substitution: result lives in sigma's source context.
TypedTerm sub(const LanguageDescription& lang, const Subst& sigma, const TypedTerm& e);

/// Single substitution sub (refl , e0) body, for body in (e0.ctx , e0.ty).
TypedTerm sub1(const LanguageDescription& lang, const TypedTerm& e0, const TypedTerm& body);

}  // namespace syngen
