#include "doctest.h"

#include "oracles.hpp"
#include "syngen/laws.hpp"
#include "syngen/scope.hpp"
#include "syngen/stlc.hpp"
#include "syngen/subst.hpp"

using namespace syngen;

namespace {

Ty base() { return stlc::ty_base(); }
Ty boolean() { return stlc::ty_bool(); }

LanguageDescription curry_bool() {
  return stlc::description({stlc::Flavour::Desugared, stlc::Style::Curry, true, false});
}

std::vector<Ctx> contexts_up_to(const std::vector<Ty>& pool, std::size_t max_size) {
  std::vector<Ctx> out{{}};
  std::size_t start = 0;
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i)
      for (const Ty& t : pool) {
        Ctx c = out[i];
        c.push_back(t);
        out.push_back(std::move(c));
      }
    start = end;
  }
  return out;
}

Ope ope_of_mask(const Ctx& source, std::size_t mask) {
  Ope rho;
  for (std::size_t i = 0; i < source.size(); ++i)
    rho.steps.push_back(OpeStep{(mask >> i & 1) != 0, source[i]});
  return rho;
}

}  // namespace

TEST_CASE("refl_ope keeps every entry") {
  Ty t = base(), u = boolean();
  CHECK(refl_ope({}).steps.empty());
  Ope one = refl_ope({t});
  REQUIRE(one.steps.size() == 1);
  CHECK(one.steps[0].keep);
  Ope two = refl_ope({t, u});
  REQUIRE(two.steps.size() == 2);
  CHECK((two.steps[0].keep && two.steps[1].keep));
  CHECK(two.source() == Ctx{t, u});
  CHECK(two.target() == Ctx{t, u});
}

TEST_CASE("ren_var on hand cases") {
  Ty t = base(), u = boolean();
  CHECK(ren_var(Ope{{{true, t}}}, TypedVar{0}).index == 0);
  // Drop above a Keep: Keep(Done,t) then Drop u => steps [K t, D u]
  CHECK(ren_var(Ope{{{true, t}, {false, u}}}, TypedVar{0}).index == 1);
  // Keep above a Drop: steps [D u, K t]
  CHECK(ren_var(Ope{{{false, u}, {true, t}}}, TypedVar{0}).index == 0);
}

TEST_CASE("ren_var agrees with the replay oracle on all embeddings, contexts <= 3") {
  for (const Ctx& source : contexts_up_to({base(), boolean()}, 3))
    for (std::size_t mask = 0; mask < (1u << source.size()); ++mask) {
      Ope rho = ope_of_mask(source, mask);
      std::size_t targets = rho.target().size();
      for (std::size_t v = 0; v < targets; ++v) {
        CHECK(ren_var(rho, TypedVar{v}).index == oracles::ren_var_replay(rho, v));
        // type preservation
        CHECK(ctx_type(rho.source(), ren_var(rho, TypedVar{v}).index) ==
              ctx_type(rho.target(), v));
      }
    }
}

TEST_CASE("keep_star folds keeps to the right") {
  Ty t = base(), u = boolean();
  Ope done;
  CHECK(keep_star({}, done) == done);
  CHECK(keep_star({t}, done) == refl_ope({t}));
  CHECK(keep_star({t, u}, done) == refl_ope({t, u}));
}

TEST_CASE("compose_ope identities and mismatch") {
  Ty t = base();
  Ctx gamma{t, boolean()};
  Ope rho = ope_of_mask(gamma, 0b01);
  CHECK(compose_ope(refl_ope(gamma), rho) == rho);
  CHECK(compose_ope(rho, refl_ope(rho.target())) == rho);
  CHECK_THROWS_AS(compose_ope(rho, refl_ope(gamma)), ContextMismatch);
}

TEST_CASE("lookup_var reads from the right") {
  Ty b = boolean();
  TmPtr t0 = stlc::tm_true(), t1 = stlc::tm_false();
  Subst sigma{{}, {b, b}, {t1, t0}};
  CHECK(tm_equal(lookup_var(sigma, TypedVar{0}), t0));
  CHECK(tm_equal(lookup_var(sigma, TypedVar{1}), t1));
}

TEST_CASE("refl_sub entries are variables") {
  CHECK(refl_sub({}).entries.empty());
  Subst s1 = refl_sub({base()});
  REQUIRE(s1.entries.size() == 1);
  CHECK(tm_equal(s1.entries[0], mk_tvar(base(), 0)));
  for (const Ctx& ctx : contexts_up_to({base(), boolean()}, 4)) {
    Subst s = refl_sub(ctx);
    for (std::size_t v = 0; v < ctx.size(); ++v)
      CHECK(tm_equal(lookup_var(s, TypedVar{v}), mk_tvar(ctx_type(ctx, v), v)));
  }
}

TEST_CASE("shift_star on the identity substitution") {
  LanguageDescription lang = curry_bool();
  Ty t = base();
  Subst empty = refl_sub({});
  CHECK(subst_equal(shift_star(lang, {}, empty), empty));
  CHECK(subst_equal(shift_star(lang, {t}, empty), refl_sub({t})));
  for (const Ctx& ctx : contexts_up_to({t, boolean()}, 3))
    for (const std::vector<Ty>& ts :
         {std::vector<Ty>{}, std::vector<Ty>{t}, std::vector<Ty>{boolean(), t}})
      CHECK(subst_equal(shift_star(lang, ts, refl_sub(ctx)), refl_sub(ctx_extend(ctx, ts))));
}

TEST_CASE("compose_sub_ope identity and unfold") {
  LanguageDescription lang = curry_bool();
  Ctx theta{base(), boolean()};
  Subst sigma = refl_sub(theta);
  CHECK(subst_equal(compose_sub_ope(sigma, refl_ope(theta)), sigma));
  // refl_sub composed with an embedding maps v to TVar(ren_var(rho, v)).
  Ope rho = ope_of_mask(theta, 0b01);  // keep only the first entry
  Subst comp = compose_sub_ope(refl_sub(theta), rho);
  for (std::size_t v = 0; v < comp.target.size(); ++v)
    CHECK(tm_equal(lookup_var(comp, TypedVar{v}),
                   mk_tvar(ctx_type(comp.target, v), ren_var(rho, TypedVar{v}).index)));
}

TEST_CASE("compose_ope_sub identity") {
  LanguageDescription lang = curry_bool();
  Ctx theta{boolean()};
  Subst sigma{theta, {boolean()}, {stlc::tm_true()}};
  sigma.entries[0] = mk_tvar(boolean(), 0);
  Subst comp = compose_ope_sub(lang, refl_ope(theta), sigma);
  CHECK(subst_equal(comp, sigma));
}

TEST_CASE("snoc_sub extends the target") {
  Subst empty = refl_sub({});
  TypedTerm t{{}, stlc::tm_true()};
  Subst s = snoc_sub(empty, t);
  CHECK(s.target == Ctx{boolean()});
  CHECK(tm_equal(lookup_var(s, TypedVar{0}), t.root));
}

TEST_CASE("exhaustive category laws on contexts <= 3") {
  // Also the engine behind the acceptance gate; here as a regression test.
  // The plain signature (base, ->) keeps the ground-type pool small enough
  // for full enumeration.
  auto results = run_category_laws(
      stlc::description({stlc::Flavour::Desugared, stlc::Style::Curry, false, false}), 3, 2);
  for (const auto& r : results) {
    INFO(r.name, ": ", r.first_counterexample);
    CHECK(r.failures == 0);
    CHECK(r.cases > 0);
  }
}
