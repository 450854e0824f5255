#include "doctest.h"

#include "oracles.hpp"
#include "syngen/stlc.hpp"
#include "syngen/terms.hpp"
#include "syngen/typecheck.hpp"

using namespace syngen;

namespace {

LanguageDescription curry_bool() {
  return stlc::description({stlc::Flavour::Desugared, stlc::Style::Curry, true, false});
}

Ty base() { return stlc::ty_base(); }

}  // namespace

TEST_CASE("ctx_extend and ctx_size") {
  Ty t = base(), u = stlc::ty_bool();
  Ctx empty;
  CHECK(ctx_extend(empty, {}) == empty);
  CHECK(ctx_extend(empty, {t, u}) == Ctx{t, u});
  Ctx three{t, t, t};
  CHECK(ctx_extend(three, {t, u}).size() == 5);
  CHECK(ctx_size(empty) == 0);
  CHECK(ctx_size(Ctx{t}) == 1);
  // size of an extension = extension length + original size
  CHECK(ctx_size(ctx_extend(Ctx{t}, {u, t})) == 2 + ctx_size(Ctx{t}));
}

TEST_CASE("ctx_type reads from the right") {
  Ty t = base(), u = stlc::ty_bool();
  Ctx ctx{t, u};
  CHECK(ctx_type(ctx, 0) == u);  // index 0 = most recent binding
  CHECK(ctx_type(ctx, 1) == t);
}

TEST_CASE("resolve: single ambient binding") {
  LanguageDescription lang = curry_bool();
  ExprPtr e = resolve(lang, {"x"}, mk_fvar("x"));
  CHECK(e->scope == 1);
  CHECK(std::get<EVar>(e->v).index == 0);
}

TEST_CASE("resolve: lam binder") {
  LanguageDescription lang = curry_bool();
  FormPtr f = mk_fcon({choice_tag("lam")}, {"x"}, {mk_fvar("x")});
  ExprPtr e = resolve(lang, {}, f);
  CHECK(e->scope == 0);
  const auto& con = std::get<ECon>(e->v);
  REQUIRE(con.children.size() == 1);
  CHECK(con.children[0]->scope == 1);
  CHECK(std::get<EVar>(con.children[0]->v).index == 0);
}

TEST_CASE("resolve: unbound name and shadowing") {
  LanguageDescription lang = curry_bool();
  CHECK_THROWS_AS(resolve(lang, {}, mk_fvar("y")), ResolveError);
  // rightmost binding wins
  ExprPtr e = resolve(lang, {"x", "x"}, mk_fvar("x"));
  CHECK(std::get<EVar>(e->v).index == 0);
}

TEST_CASE("resolve ignores binder names: alpha-variants resolve equal") {
  LanguageDescription lang = curry_bool();
  FormPtr a = mk_fcon({choice_tag("lam")}, {"x"}, {mk_fvar("x")});
  FormPtr b = mk_fcon({choice_tag("lam")}, {"y"}, {mk_fvar("y")});
  CHECK(expr_equal(resolve(lang, {}, a), resolve(lang, {}, b)));
}

TEST_CASE("untype_var is the index identity") {
  CHECK(untype_var(TypedVar{0}) == 0);
  CHECK(untype_var(TypedVar{1}) == 1);
  CHECK(untype_var(TypedVar{2}) == 2);
}

TEST_CASE("untype drops types and keeps shape") {
  LanguageDescription lang = curry_bool();
  // TVar 0 in a one-entry context
  TypedTerm v{Ctx{base()}, mk_tvar(base(), 0)};
  ExprPtr ev = untype(lang, v);
  CHECK(ev->scope == 1);
  CHECK(std::get<EVar>(ev->v).index == 0);

  // lam (var 0) : base -> base, closed
  stlc::Options curry;
  TypedTerm id{{}, stlc::tm_lam(curry, base(), mk_tvar(base(), 0))};
  ExprPtr eid = untype(lang, id);
  CHECK(eid->scope == 0);
  const auto& con = std::get<ECon>(eid->v);
  REQUIRE(con.children.size() == 1);
  CHECK(con.children[0]->scope == 1);

  // child count preserved
  TypedTerm app{{},
                stlc::tm_app(stlc::tm_lam(curry, stlc::ty_bool(), mk_tvar(stlc::ty_bool(), 0)),
                             stlc::tm_true())};
  ExprPtr eapp = untype(lang, app);
  CHECK(std::get<ECon>(eapp->v).children.size() == 2);
  CHECK(validate_expr(lang, eapp, 0).empty());
}

TEST_CASE("validate_expr flags out-of-scope variables") {
  LanguageDescription lang = curry_bool();
  ExprPtr bad = mk_evar(1, 5);
  CHECK(!validate_expr(lang, bad, 1).empty());
  CHECK(validate_expr(lang, mk_evar(1, 0), 1).empty());
}

TEST_CASE("term printing and parsing round-trips") {
  LanguageDescription lang = curry_bool();
  for (const char* text : {"(var 0)", "true", "false", "(app (lam (var 0)) (lam (var 1)))",
                           "(if true (var 0) false)"}) {
    ExprPtr e = parse_expr(lang, text, 1);
    CHECK(print_expr(e) == text);
  }
  for (const char* text : {"(var x)", "(lam [x] (var x))", "(if true (lam [y] (var y)) false)"}) {
    FormPtr f = parse_form(lang, text);
    CHECK(print_form(f) == text);
  }
  stlc::Options church{stlc::Flavour::Desugared, stlc::Style::Church, true, false};
  LanguageDescription lang2 = stlc::description(church);
  for (const char* text : {"(lam {(-> base base)} [f] (var f))", "(lam {bool} [x] (var x))"}) {
    FormPtr f = parse_form(lang2, text);
    CHECK(print_form(f) == text);
  }
}

TEST_CASE("typed printing round-trips through check") {
  LanguageDescription lang = curry_bool();
  ExprPtr e = parse_expr(lang, "(app (lam (var 0)) true)", 0);
  TypedTerm tm = check(lang, {}, e, stlc::ty_bool());
  CHECK(print_tm(tm.root) == "(app (lam [bool] (var 0)) true)");
}

TEST_CASE("close wraps an expression in lambdas") {
  stlc::Options curry;
  LanguageDescription lang = stlc::description(curry);
  // scope 0: identity
  ExprPtr e0 = mk_econ(0, {choice_tag("lam")}, {mk_evar(1, 0)});
  CHECK(expr_equal(stlc::close_expr(curry, e0), e0));
  // scope 1: one wrap
  ExprPtr v0 = mk_evar(1, 0);
  ExprPtr closed = stlc::close_expr(curry, v0);
  CHECK(closed->scope == 0);
  CHECK(print_expr(closed) == "(lam (var 0))");
  // scope 2: two wraps, outermost variable
  ExprPtr v1 = mk_evar(2, 1);
  CHECK(print_expr(stlc::close_expr(curry, v1)) == "(lam (lam (var 1)))");

  stlc::Options church{stlc::Flavour::Desugared, stlc::Style::Church, false, false};
  CHECK_THROWS(stlc::close_expr(church, v1, {Ty{"base", {}}}));  // needs 2 annotations
  ExprPtr cc = stlc::close_expr(church, v1, {Ty{"base", {}}, Ty{"base", {}}});
  CHECK(cc->scope == 0);
}

TEST_CASE("tm equality includes binder types") {
  stlc::Options curry;
  TmPtr a = stlc::tm_lam(curry, base(), mk_tvar(base(), 0));
  TmPtr b = stlc::tm_lam(curry, stlc::ty_bool(), mk_tvar(stlc::ty_bool(), 0));
  CHECK(tm_equal(a, a));
  CHECK(!tm_equal(a, b));
  CHECK(node_count(a) == 2);
}
