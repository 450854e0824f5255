#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "syngen/desc.hpp"

namespace syngen {

/// Context of the variables in scope; grown at the right, so the last entry
/// is the most recent binding. De Bruijn index 0 refers to that entry.
using Ctx = std::vector<Ty>;

Ctx ctx_extend(Ctx ctx, const std::vector<Ty>& tys);
inline std::size_t ctx_size(const Ctx& ctx) { return ctx.size(); }

struct TypedVar {
  std::size_t index = 0;  // 0 = most recent binding
};

inline const Ty& ctx_type(const Ctx& ctx, std::size_t index) {
  return ctx[ctx.size() - 1 - index];
}

// --- Form: names only, no scoping enforced --------------------------------

struct Form;
using FormPtr = std::shared_ptr<const Form>;

struct FVar {
  std::string name;
};
struct FCon {
  std::vector<SgChoice> path;
  std::vector<std::string> binders;  // length n
  std::vector<FormPtr> children;     // length k
};
struct Form {
  std::variant<FVar, FCon> v;
};

FormPtr mk_fvar(std::string name);
FormPtr mk_fcon(std::vector<SgChoice> path, std::vector<std::string> binders,
                std::vector<FormPtr> children);
bool form_equal(const FormPtr& a, const FormPtr& b);

// --- Expr: well-scoped, untyped -------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct EVar {
  std::size_t index;
};
struct ECon {
  std::vector<SgChoice> path;
  std::vector<ExprPtr> children;
};
struct Expr {
  std::size_t scope = 0;  // number of variables in scope (V)
  std::variant<EVar, ECon> v;
};

ExprPtr mk_evar(std::size_t scope, std::size_t index);
ExprPtr mk_econ(std::size_t scope, std::vector<SgChoice> path, std::vector<ExprPtr> children);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// --- Tm: intrinsically typed ----------------------------------------------

struct Tm;
using TmPtr = std::shared_ptr<const Tm>;

struct TVar {
  std::size_t index;
};
struct TCon {
  std::vector<SgChoice> path;
  std::vector<Ty> binder_tys;    // ts0: types of the n newly bound variables
  std::vector<TmPtr> children;   // length k
};
struct Tm {
  Ty ty;
  std::variant<TVar, TCon> v;
};

TmPtr mk_tvar(Ty ty, std::size_t index);
TmPtr mk_tcon(Ty ty, std::vector<SgChoice> path, std::vector<Ty> binder_tys,
              std::vector<TmPtr> children);
bool tm_equal(const TmPtr& a, const TmPtr& b);
std::size_t node_count(const TmPtr& e);

/// A typed term together with its root context. Interior contexts and types
/// are derived, not stored; `validate_typed` re-checks them.
struct TypedTerm {
  Ctx ctx;
  TmPtr root;

  const Ty& ty() const { return root->ty; }
};

inline bool typed_equal(const TypedTerm& a, const TypedTerm& b) {
  return a.ctx == b.ctx && tm_equal(a.root, b.root);
}

// --- operations -----------------------------------------------------------

struct ResolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Name resolution: Form -> Expr at scope |env|. The rightmost matching
/// binding wins. Throws ResolveError (UnboundName) when a name is free.
ExprPtr resolve(const LanguageDescription& lang, const std::vector<std::string>& env,
                const FormPtr& f);

std::size_t untype_var(TypedVar v);

/// Type erasure: drops binder types, keeps the tree shape and indices.
ExprPtr untype(const LanguageDescription& lang, const TypedTerm& e);

/// Scope soundness check: stored scopes chain per the description's shapes
/// and every variable index is below its local scope.
std::vector<std::string> validate_expr(const LanguageDescription& lang, const ExprPtr& e,
                                       std::size_t scope);

// --- concrete syntax ------------------------------------------------------

std::string print_form(const FormPtr& f);
std::string print_expr(const ExprPtr& e);
std::string print_tm(const TmPtr& e);

FormPtr parse_form(const LanguageDescription& lang, std::string_view input);
ExprPtr parse_expr(const LanguageDescription& lang, std::string_view input, std::size_t scope);

}  // namespace syngen
