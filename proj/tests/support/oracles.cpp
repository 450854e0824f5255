#include "oracles.hpp"

#include <algorithm>
#include <functional>

namespace oracles {

std::size_t ren_var_replay(const Ope& rho, std::size_t v) {
  // Collect the left-to-right positions of Keep steps; the variable v counts
  // keeps from the right, and a position p corresponds to source index
  // size-1-p.
  std::vector<std::size_t> keeps;
  for (std::size_t p = 0; p < rho.steps.size(); ++p)
    if (rho.steps[p].keep) keeps.push_back(p);
  std::size_t pos = keeps[keeps.size() - 1 - v];
  return rho.steps.size() - 1 - pos;
}

// --- named terms -----------------------------------------------------------

namespace {
NPtr mk(NTerm t) { return std::make_shared<const NTerm>(std::move(t)); }
}  // namespace

NPtr nvar(std::string name) { return mk({NTerm::Var, std::move(name), {}, {}}); }
NPtr napp(NPtr f, NPtr e) { return mk({NTerm::App, "", {}, {std::move(f), std::move(e)}}); }
NPtr nlam(std::string binder, std::optional<Ty> annot, NPtr body) {
  return mk({NTerm::Lam, std::move(binder), std::move(annot), {std::move(body)}});
}
NPtr nlet(std::string binder, std::optional<Ty> annot, NPtr def, NPtr body) {
  return mk({NTerm::Let, std::move(binder), std::move(annot), {std::move(def), std::move(body)}});
}
NPtr ntrue() { return mk({NTerm::True, "", {}, {}}); }
NPtr nfalse() { return mk({NTerm::False, "", {}, {}}); }
NPtr nif(NPtr c, NPtr t, NPtr e) {
  return mk({NTerm::If, "", {}, {std::move(c), std::move(t), std::move(e)}});
}

namespace {

std::string first_tag(const TmPtr& e) {
  const auto& con = std::get<TCon>(e->v);
  for (const auto& c : con.path)
    if (c.is_tag()) return c.tag();
  return "";
}

NPtr tm_to_named_rec(const TmPtr& e, const std::vector<std::string>& names, int& fresh) {
  if (const auto* var = std::get_if<TVar>(&e->v))
    return nvar(names[names.size() - 1 - var->index]);
  const auto& con = std::get<TCon>(e->v);
  std::string tag = first_tag(e);
  if (tag == "app")
    return napp(tm_to_named_rec(con.children[0], names, fresh),
                tm_to_named_rec(con.children[1], names, fresh));
  if (tag == "lam") {
    std::string b = "b" + std::to_string(fresh++);
    auto extended = names;
    extended.push_back(b);
    // only annotations stored in the constructor path survive; a Curry
    // binder type is an inference artifact, not part of the syntax
    std::optional<Ty> annot;
    for (const auto& c : con.path)
      if (!c.is_tag()) annot = c.payload();
    return nlam(b, annot, tm_to_named_rec(con.children[0], extended, fresh));
  }
  if (tag == "let" || tag == "letrec") {
    std::string b = "b" + std::to_string(fresh++);
    auto extended = names;
    extended.push_back(b);
    const auto& def_names = tag == "letrec" ? extended : names;
    return nlet(b, con.binder_tys.empty() ? std::optional<Ty>{} : con.binder_tys[0],
                tm_to_named_rec(con.children[0], def_names, fresh),
                tm_to_named_rec(con.children[1], extended, fresh));
  }
  if (tag == "true") return ntrue();
  if (tag == "false") return nfalse();
  return nif(tm_to_named_rec(con.children[0], names, fresh),
             tm_to_named_rec(con.children[1], names, fresh),
             tm_to_named_rec(con.children[2], names, fresh));
}

}  // namespace

NPtr tm_to_named(const TypedTerm& e) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < e.ctx.size(); ++i) names.push_back("v" + std::to_string(i));
  int fresh = 0;
  return tm_to_named_rec(e.root, names, fresh);
}

FormPtr named_to_form(const NPtr& e) {
  switch (e->kind) {
    case NTerm::Var: return mk_fvar(e->name);
    case NTerm::App:
      return mk_fcon({choice_tag("app")}, {},
                     {named_to_form(e->kids[0]), named_to_form(e->kids[1])});
    case NTerm::Lam: {
      std::vector<SgChoice> path{choice_tag("lam")};
      if (e->annot) path.push_back(choice_ty(*e->annot));
      return mk_fcon(std::move(path), {e->name}, {named_to_form(e->kids[0])});
    }
    case NTerm::Let:
      return mk_fcon({choice_tag("let")}, {e->name},
                     {named_to_form(e->kids[0]), named_to_form(e->kids[1])});
    case NTerm::True: return mk_fcon({choice_tag("true")}, {}, {});
    case NTerm::False: return mk_fcon({choice_tag("false")}, {}, {});
    case NTerm::If:
      return mk_fcon({choice_tag("if")}, {},
                     {named_to_form(e->kids[0]), named_to_form(e->kids[1]),
                      named_to_form(e->kids[2])});
  }
  return nullptr;
}

namespace {

void free_vars(const NPtr& e, std::set<std::string>& out, std::set<std::string> bound) {
  switch (e->kind) {
    case NTerm::Var:
      if (!bound.count(e->name)) out.insert(e->name);
      return;
    case NTerm::Lam:
      bound.insert(e->name);
      free_vars(e->kids[0], out, bound);
      return;
    case NTerm::Let:
      free_vars(e->kids[0], out, bound);
      bound.insert(e->name);
      free_vars(e->kids[1], out, std::move(bound));
      return;
    default:
      for (const auto& k : e->kids) free_vars(k, out, bound);
  }
}

NPtr rename_in(const NPtr& e, const std::string& from, const std::string& to) {
  switch (e->kind) {
    case NTerm::Var: return e->name == from ? nvar(to) : e;
    case NTerm::App: return napp(rename_in(e->kids[0], from, to), rename_in(e->kids[1], from, to));
    case NTerm::Lam:
      if (e->name == from) return e;  // shadowed
      return nlam(e->name, e->annot, rename_in(e->kids[0], from, to));
    case NTerm::Let: {
      NPtr def = rename_in(e->kids[0], from, to);
      NPtr body = e->name == from ? e->kids[1] : rename_in(e->kids[1], from, to);
      return nlet(e->name, e->annot, def, body);
    }
    default: {
      std::vector<NPtr> kids;
      for (const auto& k : e->kids) kids.push_back(rename_in(k, from, to));
      NTerm out = *e;
      out.kids = std::move(kids);
      return mk(std::move(out));
    }
  }
}

int fresh_counter = 0;

std::string fresh_name() { return "f" + std::to_string(fresh_counter++); }

}  // namespace

NPtr named_subst(const NPtr& e, const std::string& x, const NPtr& s) {
  switch (e->kind) {
    case NTerm::Var: return e->name == x ? s : e;
    case NTerm::App: return napp(named_subst(e->kids[0], x, s), named_subst(e->kids[1], x, s));
    case NTerm::Lam: {
      if (e->name == x) return e;
      std::set<std::string> fv;
      free_vars(s, fv, {});
      if (fv.count(e->name)) {
        std::string nn = fresh_name();
        return named_subst(nlam(nn, e->annot, rename_in(e->kids[0], e->name, nn)), x, s);
      }
      return nlam(e->name, e->annot, named_subst(e->kids[0], x, s));
    }
    case NTerm::Let: {
      NPtr def = named_subst(e->kids[0], x, s);
      if (e->name == x) return nlet(e->name, e->annot, def, e->kids[1]);
      std::set<std::string> fv;
      free_vars(s, fv, {});
      if (fv.count(e->name)) {
        std::string nn = fresh_name();
        return named_subst(nlet(nn, e->annot, e->kids[0], rename_in(e->kids[1], e->name, nn)), x,
                           s);
      }
      return nlet(e->name, e->annot, def, named_subst(e->kids[1], x, s));
    }
    default: {
      std::vector<NPtr> kids;
      for (const auto& k : e->kids) kids.push_back(named_subst(k, x, s));
      NTerm out = *e;
      out.kids = std::move(kids);
      return mk(std::move(out));
    }
  }
}

std::optional<Ty> named_infer(std::vector<std::pair<std::string, Ty>> env, const NPtr& e,
                              const std::optional<Ty>& expected) {
  auto done = [&](const Ty& t) -> std::optional<Ty> {
    if (expected && !(*expected == t)) return std::nullopt;
    return t;
  };
  switch (e->kind) {
    case NTerm::Var:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == e->name) return done(it->second);
      return std::nullopt;
    case NTerm::True:
    case NTerm::False: return done(stlc::ty_bool());
    case NTerm::If: {
      if (!named_infer(env, e->kids[0], stlc::ty_bool())) return std::nullopt;
      std::optional<Ty> t = named_infer(env, e->kids[1], expected);
      if (!t) return std::nullopt;
      if (!named_infer(env, e->kids[2], t)) return std::nullopt;
      return t;
    }
    case NTerm::App: {
      // Infer the function; fall back to the argument when it is unannotated.
      std::optional<Ty> ft = named_infer(env, e->kids[0], std::nullopt);
      if (ft) {
        if (ft->ctor != "->") return std::nullopt;
        if (!named_infer(env, e->kids[1], ft->args[0])) return std::nullopt;
        return done(ft->args[1]);
      }
      std::optional<Ty> at = named_infer(env, e->kids[1], std::nullopt);
      if (!at || !expected) return std::nullopt;
      if (!named_infer(env, e->kids[0], stlc::ty_arrow(*at, *expected))) return std::nullopt;
      return *expected;
    }
    case NTerm::Lam: {
      std::optional<Ty> dom = e->annot;
      std::optional<Ty> want_body;
      if (expected) {
        if (expected->ctor != "->") return std::nullopt;
        if (dom && !(*dom == expected->args[0])) return std::nullopt;
        dom = expected->args[0];
        want_body = expected->args[1];
      }
      if (!dom) return std::nullopt;  // unannotated lambda cannot infer
      env.emplace_back(e->name, *dom);
      std::optional<Ty> bt = named_infer(std::move(env), e->kids[0], want_body);
      if (!bt) return std::nullopt;
      return stlc::ty_arrow(*dom, *bt);
    }
    case NTerm::Let: {
      std::optional<Ty> dt = named_infer(env, e->kids[0], e->annot);
      if (!dt) return std::nullopt;
      env.emplace_back(e->name, *dt);
      return named_infer(std::move(env), e->kids[1], expected);
    }
  }
  return std::nullopt;
}

// --- big-step evaluation ---------------------------------------------------

namespace {

struct BSVal;
using BSEnv = std::vector<BSVal>;

struct BSVal {
  bool is_bool = false;
  bool b = false;
  TmPtr lam_body;  // closure: body + captured environment
  std::shared_ptr<BSEnv> captured;
};

std::optional<BSVal> bigstep(const TmPtr& e, const std::shared_ptr<BSEnv>& env,
                             std::size_t& budget) {
  if (budget == 0) return std::nullopt;
  --budget;
  if (const auto* var = std::get_if<TVar>(&e->v)) {
    if (var->index >= env->size()) return std::nullopt;
    return (*env)[env->size() - 1 - var->index];
  }
  const auto& con = std::get<TCon>(e->v);
  std::string tag = first_tag(e);
  if (tag == "true") return BSVal{true, true, nullptr, nullptr};
  if (tag == "false") return BSVal{true, false, nullptr, nullptr};
  if (tag == "lam") return BSVal{false, false, con.children[0], env};
  if (tag == "if") {
    auto c = bigstep(con.children[0], env, budget);
    if (!c || !c->is_bool) return std::nullopt;
    return bigstep(con.children[c->b ? 1 : 2], env, budget);
  }
  if (tag == "app") {
    auto f = bigstep(con.children[0], env, budget);
    if (!f || f->is_bool) return std::nullopt;
    auto a = bigstep(con.children[1], env, budget);
    if (!a) return std::nullopt;
    auto inner = std::make_shared<BSEnv>(*f->captured);
    inner->push_back(*a);
    return bigstep(f->lam_body, inner, budget);
  }
  if (tag == "let") {
    auto d = bigstep(con.children[0], env, budget);
    if (!d) return std::nullopt;
    auto inner = std::make_shared<BSEnv>(*env);
    inner->push_back(*d);
    return bigstep(con.children[1], inner, budget);
  }
  return std::nullopt;  // letrec has no evaluation rule
}

}  // namespace

std::optional<bool> bigstep_bool(const TmPtr& e, std::size_t budget) {
  auto v = bigstep(e, std::make_shared<BSEnv>(), budget);
  if (!v || !v->is_bool) return std::nullopt;
  return v->b;
}

// --- brute-force enumeration -----------------------------------------------

namespace {

// All Curry-style desugared terms with exactly `nodes` nodes of type t under
// env (types of named free slots, innermost last).
void enum_terms(const std::vector<Ty>& pool, const std::vector<Ty>& env, const Ty& t,
                std::size_t nodes, std::vector<TmPtr>& out) {
  if (nodes == 0) return;
  if (nodes == 1) {
    for (std::size_t i = 0; i < env.size(); ++i)
      if (env[env.size() - 1 - i] == t) out.push_back(mk_tvar(t, i));
    if (t == stlc::ty_bool()) {
      out.push_back(stlc::tm_true());
      out.push_back(stlc::tm_false());
    }
    return;
  }
  stlc::Options curry;  // desugared Curry
  if (t.ctor == "->") {
    auto inner = env;
    inner.push_back(t.args[0]);
    std::vector<TmPtr> bodies;
    enum_terms(pool, inner, t.args[1], nodes - 1, bodies);
    for (auto& b : bodies) out.push_back(stlc::tm_lam(curry, t.args[0], b));
  }
  // app: function type (-> a t) for a in pool
  for (const Ty& a : pool) {
    Ty ft = stlc::ty_arrow(a, t);
    for (std::size_t fn = 1; fn + 2 <= nodes; ++fn) {
      std::vector<TmPtr> fs, as;
      enum_terms(pool, env, ft, fn, fs);
      enum_terms(pool, env, a, nodes - 1 - fn, as);
      for (auto& f : fs)
        for (auto& e : as) out.push_back(stlc::tm_app(f, e));
    }
  }
  // if: cond bool, both branches t
  for (std::size_t cn = 1; cn + 3 <= nodes; ++cn)
    for (std::size_t tn = 1; cn + tn + 2 <= nodes; ++tn) {
      std::vector<TmPtr> cs, ts, es;
      enum_terms(pool, env, stlc::ty_bool(), cn, cs);
      enum_terms(pool, env, t, tn, ts);
      enum_terms(pool, env, t, nodes - 1 - cn - tn, es);
      for (auto& c : cs)
        for (auto& th : ts)
          for (auto& el : es) out.push_back(stlc::tm_if(c, th, el));
    }
}

}  // namespace

std::set<std::string> stlc_enum_closed(const std::vector<Ty>& ty_pool, std::size_t max_nodes) {
  std::set<std::string> out;
  for (const Ty& t : ty_pool)
    for (std::size_t n = 1; n <= max_nodes; ++n) {
      std::vector<TmPtr> terms;
      enum_terms(ty_pool, {}, t, n, terms);
      for (const auto& e : terms) out.insert(print_tm(e) + " : " + print_ty(t));
    }
  return out;
}

// --- unification oracle ----------------------------------------------------

namespace {

void collect_metas(const TyPattern& p, std::set<std::string>& out) {
  if (const auto* con = std::get_if<PCon>(&p.v)) {
    for (const auto& a : con->args) collect_metas(a, out);
    return;
  }
  out.insert(print_pattern(p));
}

std::optional<Ty> instantiate(const TyPattern& p, const GroundAssign& assign) {
  if (const auto* con = std::get_if<PCon>(&p.v)) {
    Ty t{con->ctor, {}};
    for (const auto& a : con->args) {
      auto sub = instantiate(a, assign);
      if (!sub) return std::nullopt;
      t.args.push_back(*sub);
    }
    return t;
  }
  auto it = assign.find(print_pattern(p));
  if (it == assign.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::vector<GroundAssign> ground_solutions(
    const std::vector<std::pair<TyPattern, TyPattern>>& eqs, const std::vector<Ty>& pool) {
  std::set<std::string> metas;
  for (const auto& [l, r] : eqs) {
    collect_metas(l, metas);
    collect_metas(r, metas);
  }
  std::vector<std::string> names(metas.begin(), metas.end());
  std::vector<GroundAssign> out;
  std::function<void(std::size_t, GroundAssign&)> go = [&](std::size_t i, GroundAssign& cur) {
    if (i == names.size()) {
      for (const auto& [l, r] : eqs) {
        auto lt = instantiate(l, cur);
        auto rt = instantiate(r, cur);
        if (!lt || !rt || !(*lt == *rt)) return;
      }
      out.push_back(cur);
      return;
    }
    for (const Ty& t : pool) {
      cur[names[i]] = t;
      go(i + 1, cur);
    }
    cur.erase(names[i]);
  };
  GroundAssign cur;
  go(0, cur);
  return out;
}

bool assignment_matches_unifier(const GroundAssign& assign, const UnifyState& st) {
  for (const auto& [key, pat] : st.bindings) {
    TyPattern lhs = key.kind == MetaKey::B   ? pat_b(key.index)
                    : key.kind == MetaKey::S ? pat_s(key.index)
                    : key.kind == MetaKey::R ? pat_r()
                                             : pat_p(key.name);
    auto lt = instantiate(lhs, assign);
    auto rt = instantiate(apply_bindings(st, pat), assign);
    if (!lt || !rt || !(*lt == *rt)) return false;
  }
  return true;
}

}  // namespace oracles
