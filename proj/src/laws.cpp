#include "syngen/laws.hpp"

#include <functional>
#include <random>
#include <sstream>

namespace syngen {

namespace {

struct LawRecorder {
  std::vector<LawResult> results;

  std::size_t add(std::string name) {
    LawResult r;
    r.name = std::move(name);
    results.push_back(std::move(r));
    return results.size() - 1;
  }

  void record(std::size_t law, bool ok, const std::function<std::string()>& witness) {
    LawResult& r = results[law];
    ++r.cases;
    if (!ok) {
      if (r.failures == 0) r.first_counterexample = witness();
      ++r.failures;
    }
  }
};

std::string show_term(const TypedTerm& e) {
  std::string out = "ctx [";
  for (std::size_t i = 0; i < e.ctx.size(); ++i) {
    if (i) out += ' ';
    out += print_ty(e.ctx[i]);
  }
  return out + "] |- " + print_tm(e.root) + " : " + print_ty(e.ty());
}

struct SubstLawRunner {
  const LanguageDescription& lang;
  std::mt19937_64 rng;
  std::vector<Ty> pool;
  LawRecorder rec;

  Ty random_ty() { return pool[rng() % pool.size()]; }

  Ctx random_ctx(std::size_t max_ctx) {
    Ctx ctx;
    std::size_t n = rng() % (max_ctx + 1);
    for (std::size_t i = 0; i < n; ++i) ctx.push_back(random_ty());
    return ctx;
  }

  std::optional<TypedTerm> gen_term(const Ctx& ctx, const Ty& t, std::size_t depth) {
    GenConfig cfg;
    cfg.seed = rng();
    cfg.max_depth = depth;
    TypedTermGen gen(lang, ctx, t, cfg);
    return gen.next();
  }

  /// A random embedding onto the given target, inserting up to two dropped
  /// entries.
  Ope random_ope_onto(const Ctx& target) {
    Ope rho;
    std::size_t extras = 0;
    for (const Ty& t : target) {
      while (extras < 2 && rng() % 3 == 0) {
        rho.steps.push_back(OpeStep{false, random_ty()});
        ++extras;
      }
      rho.steps.push_back(OpeStep{true, t});
    }
    while (extras < 2 && rng() % 3 == 0) {
      rho.steps.push_back(OpeStep{false, random_ty()});
      ++extras;
    }
    return rho;
  }

  /// A random substitution onto the given target. Its source extends the
  /// target with up to two extra entries, so every needed type is inhabited.
  Subst random_sub_onto(const Ctx& target) {
    Ctx source = target;
    std::size_t extras = rng() % 3;
    for (std::size_t i = 0; i < extras; ++i)
      source.insert(source.begin() + static_cast<long>(rng() % (source.size() + 1)),
                    random_ty());
    Subst sigma{source, target, {}};
    for (const Ty& t : target) {
      auto e = gen_term(source, t, 2);
      if (!e) return refl_sub(target);  // cannot happen: source contains t
      sigma.entries.push_back(e->root);
    }
    return sigma;
  }

  bool valid_at(const TypedTerm& e, const Ctx& ctx, const Ty& t) {
    return e.ctx == ctx && e.ty() == t && validate_typed(lang, e).empty();
  }

  void run(std::size_t count, std::size_t depth, std::size_t max_ctx) {
    std::size_t ren_refl_law = rec.add("ren-refl");
    std::size_t sub_refl_law = rec.add("sub-refl");
    std::size_t ren_ren_law = rec.add("ren-ren-fusion");
    std::size_t sub_ren_law = rec.add("sub-ren-fusion");
    std::size_t ren_sub_law = rec.add("ren-sub-fusion");
    std::size_t sub_sub_law = rec.add("sub-sub-fusion");
    std::size_t preservation_law = rec.add("type-preservation");

    std::size_t produced = 0;
    std::size_t spins = 0;
    while (produced < count && spins < count * 10) {
      ++spins;
      Ctx delta = random_ctx(max_ctx);
      Ty t = random_ty();
      auto maybe_e = gen_term(delta, t, depth);
      if (!maybe_e) continue;  // e.g. base type in an empty context
      const TypedTerm e = *maybe_e;
      ++produced;
      auto witness = [&] { return show_term(e); };

      bool preserved = true;
      auto tracked = [&](const TypedTerm& out, const Ctx& ctx) {
        preserved = preserved && valid_at(out, ctx, e.ty());
        return out;
      };

      rec.record(ren_refl_law, typed_equal(ren(lang, refl_ope(delta), e), e), witness);
      rec.record(sub_refl_law, typed_equal(sub(lang, refl_sub(delta), e), e), witness);

      {
        Ope rho1 = random_ope_onto(delta);
        Ope rho2 = random_ope_onto(rho1.source());
        TypedTerm lhs = tracked(ren(lang, rho2, tracked(ren(lang, rho1, e), rho1.source())),
                                rho2.source());
        TypedTerm rhs = ren(lang, compose_ope(rho2, rho1), e);
        rec.record(ren_ren_law, typed_equal(lhs, rhs), witness);
      }
      {
        Ope rho = random_ope_onto(delta);
        Subst sigma = random_sub_onto(rho.source());
        TypedTerm lhs = tracked(sub(lang, sigma, tracked(ren(lang, rho, e), rho.source())),
                                sigma.source);
        TypedTerm rhs = sub(lang, compose_sub_ope(sigma, rho), e);
        rec.record(sub_ren_law, typed_equal(lhs, rhs), witness);
      }
      {
        Subst sigma = random_sub_onto(delta);
        Ope rho = random_ope_onto(sigma.source);
        TypedTerm lhs = tracked(ren(lang, rho, tracked(sub(lang, sigma, e), sigma.source)),
                                rho.source());
        TypedTerm rhs = sub(lang, compose_ope_sub(lang, rho, sigma), e);
        rec.record(ren_sub_law, typed_equal(lhs, rhs), witness);
      }
      {
        Subst sigma1 = random_sub_onto(delta);
        Subst sigma2 = random_sub_onto(sigma1.source);
        TypedTerm lhs = tracked(sub(lang, sigma2, tracked(sub(lang, sigma1, e), sigma1.source)),
                                sigma2.source);
        TypedTerm rhs = sub(lang, compose_sub_sub(lang, sigma2, sigma1), e);
        rec.record(sub_sub_law, typed_equal(lhs, rhs), witness);
      }
      rec.record(preservation_law, preserved, witness);
    }
  }
};

// --- exhaustive category laws ---------------------------------------------

std::vector<Ctx> all_contexts(const std::vector<Ty>& pool, std::size_t max_size) {
  std::vector<Ctx> out{{}};
  std::size_t layer_start = 0;
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_start; i < layer_end; ++i)
      for (const Ty& t : pool) {
        Ctx c = out[i];
        c.push_back(t);
        out.push_back(std::move(c));
      }
    layer_start = layer_end;
  }
  return out;
}

Ope ope_from_mask(const Ctx& source, std::size_t mask) {
  Ope rho;
  for (std::size_t i = 0; i < source.size(); ++i)
    rho.steps.push_back(OpeStep{(mask >> i & 1) != 0, source[i]});
  return rho;
}

/// All substitutions from gamma whose entries are variables.
std::vector<Subst> var_substs(const Ctx& gamma, const Ctx& delta) {
  std::vector<Subst> out{Subst{gamma, delta, {}}};
  for (const Ty& t : delta) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < gamma.size(); ++i)
      if (ctx_type(gamma, i) == t) candidates.push_back(i);
    if (candidates.empty()) return {};
    std::vector<Subst> next;
    for (const Subst& s : out)
      for (std::size_t idx : candidates) {
        Subst grown = s;
        grown.entries.push_back(mk_tvar(t, idx));
        next.push_back(std::move(grown));
      }
    out = std::move(next);
  }
  return out;
}

struct CategoryLawRunner {
  const LanguageDescription& lang;
  std::vector<Ctx> ctxs;
  LawRecorder rec;

  void run() {
    std::size_t action_law = rec.add("ope-compose-action");
    std::size_t ident_law = rec.add("ope-compose-identity");
    std::size_t mono_law = rec.add("ren-var-monotone");
    std::size_t sub_ope_law = rec.add("sub-ope-compose-action");
    std::size_t ope_sub_law = rec.add("ope-sub-compose-action");
    std::size_t sub_sub_law = rec.add("sub-sub-compose-action");
    std::size_t shift_law = rec.add("shift-star-commutes");

    auto show_ope = [](const Ope& rho) {
      std::string s;
      for (const auto& st : rho.steps) s += (st.keep ? "K(" : "D(") + print_ty(st.ty) + ")";
      return s.empty() ? std::string("done") : s;
    };

    for (const Ctx& gamma : ctxs) {
      for (std::size_t m2 = 0; m2 < (1u << gamma.size()); ++m2) {
        Ope rho2 = ope_from_mask(gamma, m2);
        Ctx theta = rho2.target();
        // Monotonicity of the variable action.
        for (std::size_t v = 0; v + 1 < theta.size(); ++v)
          rec.record(mono_law,
                     ren_var(rho2, TypedVar{v}).index < ren_var(rho2, TypedVar{v + 1}).index,
                     [&] { return show_ope(rho2); });
        rec.record(ident_law,
                   compose_ope(refl_ope(gamma), rho2) == rho2 &&
                       compose_ope(rho2, refl_ope(theta)) == rho2,
                   [&] { return show_ope(rho2); });
        for (std::size_t m1 = 0; m1 < (1u << theta.size()); ++m1) {
          Ope rho1 = ope_from_mask(theta, m1);
          Ope comp = compose_ope(rho2, rho1);
          bool ok = true;
          for (std::size_t v = 0; v < rho1.target().size(); ++v)
            ok = ok && ren_var(comp, TypedVar{v}).index ==
                           ren_var(rho2, ren_var(rho1, TypedVar{v})).index;
          rec.record(action_law, ok, [&] { return show_ope(rho2) + " ; " + show_ope(rho1); });
        }
      }
    }

    for (const Ctx& gamma : ctxs)
      for (const Ctx& theta : ctxs) {
        for (const Subst& sigma : var_substs(gamma, theta)) {
          // against embeddings out of theta
          for (std::size_t m = 0; m < (1u << theta.size()); ++m) {
            Ope rho = ope_from_mask(theta, m);
            Subst comp = compose_sub_ope(sigma, rho);
            bool ok = true;
            for (std::size_t v = 0; v < comp.target.size(); ++v)
              ok = ok && tm_equal(lookup_var(comp, TypedVar{v}),
                                  lookup_var(sigma, ren_var(rho, TypedVar{v})));
            rec.record(sub_ope_law, ok, [] { return std::string("sub;ope"); });
          }
          // against substitutions out of theta
          for (const Ctx& delta : ctxs) {
            for (const Subst& sigma1 : var_substs(theta, delta)) {
              Subst comp = compose_sub_sub(lang, sigma, sigma1);
              bool ok = true;
              for (std::size_t v = 0; v < delta.size(); ++v)
                ok = ok &&
                     tm_equal(lookup_var(comp, TypedVar{v}),
                              sub(lang, sigma, TypedTerm{theta, lookup_var(sigma1, TypedVar{v})})
                                  .root);
              rec.record(sub_sub_law, ok, [] { return std::string("sub;sub"); });
              if (gamma.size() <= 2 && theta.size() <= 2 && delta.size() <= 2) {
                std::vector<Ty> ts{Ty{"base", {}}};
                Subst lhs = compose_sub_sub(lang, shift_star(lang, ts, sigma),
                                            shift_star(lang, ts, sigma1));
                Subst rhs = shift_star(lang, ts, compose_sub_sub(lang, sigma, sigma1));
                rec.record(shift_law, subst_equal(lhs, rhs),
                           [] { return std::string("shift*"); });
              }
            }
          }
        }
        // embeddings into a substitution's source
        for (std::size_t m = 0; m < (1u << gamma.size()); ++m) {
          Ope rho = ope_from_mask(gamma, m);
          for (const Subst& sigma : var_substs(rho.target(), theta)) {
            Subst comp = compose_ope_sub(lang, rho, sigma);
            bool ok = true;
            for (std::size_t v = 0; v < theta.size(); ++v)
              ok = ok && tm_equal(lookup_var(comp, TypedVar{v}),
                                  ren(lang, rho,
                                      TypedTerm{sigma.source, lookup_var(sigma, TypedVar{v})})
                                      .root);
            rec.record(ope_sub_law, ok, [] { return std::string("ope;sub"); });
          }
        }
      }
  }
};

}  // namespace

std::vector<LawResult> run_subst_laws(const LanguageDescription& lang, std::uint64_t seed,
                                      std::size_t count, std::size_t depth,
                                      std::size_t max_ctx) {
  SubstLawRunner runner{lang, std::mt19937_64(seed), ground_types(lang.tysig, 2), {}};
  runner.run(count, depth, max_ctx);
  return runner.rec.results;
}

std::vector<LawResult> run_category_laws(const LanguageDescription& lang,
                                         std::size_t max_ctx, std::size_t ty_depth) {
  CategoryLawRunner runner{lang, all_contexts(ground_types(lang.tysig, ty_depth), max_ctx), {}};
  runner.run();
  return runner.rec.results;
}

std::string render_law_results(const std::vector<LawResult>& results) {
  std::ostringstream out;
  for (const LawResult& r : results) {
    out << "law " << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.cases
        << " cases";
    if (!r.passed())
      out << ", " << r.failures << " failures; first: " << r.first_counterexample;
    out << ")\n";
  }
  return out.str();
}

bool all_passed(const std::vector<LawResult>& results) {
  for (const LawResult& r : results)
    if (!r.passed()) return false;
  return true;
}

}  // namespace syngen
