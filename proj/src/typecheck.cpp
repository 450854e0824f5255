#include "syngen/typecheck.hpp"

#include <algorithm>
#include <sstream>

namespace syngen {

const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::Mismatch: return "Mismatch";
    case ErrKind::AnnotationRequired: return "AnnotationRequired";
    case ErrKind::UnboundVar: return "UnboundVar";
    case ErrKind::OccursCheck: return "OccursCheck";
    case ErrKind::ConstraintUnsatisfied: return "ConstraintUnsatisfied";
    case ErrKind::ContextMismatch: return "ContextMismatch";
  }
  return "?";
}

std::string TypeError::render() const {
  std::string p = "/";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) p += "/";
    p += std::to_string(path[i]);
  }
  std::string out = p + ": " + err_kind_name(kind);
  if (!detail.empty()) out += ": " + detail;
  return out;
}

namespace {

std::optional<MetaKey> as_meta(const TyPattern& p) {
  if (const auto* b = std::get_if<PMetaB>(&p.v)) return MetaKey{MetaKey::B, b->index, ""};
  if (const auto* s = std::get_if<PMetaS>(&p.v)) return MetaKey{MetaKey::S, s->index, ""};
  if (std::holds_alternative<PMetaR>(p.v)) return MetaKey{MetaKey::R, 0, ""};
  if (const auto* pp = std::get_if<PMetaP>(&p.v)) return MetaKey{MetaKey::P, 0, pp->name};
  return std::nullopt;
}

/// Resolves top-level metavariable chains.
const TyPattern& walk(const UnifyState& st, const TyPattern& p) {
  const TyPattern* cur = &p;
  for (;;) {
    auto m = as_meta(*cur);
    if (!m) return *cur;
    auto it = st.bindings.find(*m);
    if (it == st.bindings.end()) return *cur;
    cur = &it->second;
  }
}

bool occurs(const UnifyState& st, const MetaKey& m, const TyPattern& p) {
  const TyPattern& w = walk(st, p);
  if (auto wm = as_meta(w)) return !(m < *wm) && !(*wm < m);
  const auto& con = std::get<PCon>(w.v);
  return std::any_of(con.args.begin(), con.args.end(),
                     [&](const TyPattern& a) { return occurs(st, m, a); });
}

}  // namespace

TyPattern apply_bindings(const UnifyState& st, const TyPattern& p) {
  const TyPattern& w = walk(st, p);
  if (const auto* con = std::get_if<PCon>(&w.v)) {
    std::vector<TyPattern> args;
    for (const auto& a : con->args) args.push_back(apply_bindings(st, a));
    return pat_con(con->ctor, std::move(args));
  }
  return w;
}

bool pattern_ground(const TyPattern& p) {
  const auto* con = std::get_if<PCon>(&p.v);
  if (!con) return false;
  return std::all_of(con->args.begin(), con->args.end(), pattern_ground);
}

Ty pattern_to_ty(const TyPattern& p) {
  const auto& con = std::get<PCon>(p.v);
  Ty t{con.ctor, {}};
  for (const auto& a : con.args) t.args.push_back(pattern_to_ty(a));
  return t;
}

namespace {

// On failure fills *err when non-null; never builds diagnostics otherwise.
bool unify_impl(const TyPattern& p1, const TyPattern& p2, UnifyState& st, TypeError* err) {
  const TyPattern a = walk(st, p1);
  const TyPattern b = walk(st, p2);
  auto ma = as_meta(a);
  auto mb = as_meta(b);
  if (ma && mb && !(*ma < *mb) && !(*mb < *ma)) return true;
  if (ma) {
    if (occurs(st, *ma, b)) {
      if (err)
        *err = TypeError{ErrKind::OccursCheck, {},
                         print_pattern(a) + " occurs in " + print_pattern(b)};
      return false;
    }
    st.bindings.emplace(*ma, b);
    return true;
  }
  if (mb) {
    if (occurs(st, *mb, a)) {
      if (err)
        *err = TypeError{ErrKind::OccursCheck, {},
                         print_pattern(b) + " occurs in " + print_pattern(a)};
      return false;
    }
    st.bindings.emplace(*mb, a);
    return true;
  }
  const auto& ca = std::get<PCon>(a.v);
  const auto& cb = std::get<PCon>(b.v);
  if (ca.ctor != cb.ctor || ca.args.size() != cb.args.size()) {
    if (err)
      *err = TypeError{ErrKind::Mismatch, {}, print_pattern(a) + " vs " + print_pattern(b)};
    return false;
  }
  for (std::size_t i = 0; i < ca.args.size(); ++i)
    if (!unify_impl(ca.args[i], cb.args[i], st, err)) return false;
  return true;
}

}  // namespace

void unify(const TyPattern& p1, const TyPattern& p2, UnifyState& st) {
  TypeError err;
  if (!unify_impl(p1, p2, st, &err)) throw err;
}

bool try_unify(const TyPattern& p1, const TyPattern& p2, UnifyState& st) {
  return unify_impl(p1, p2, st, nullptr);
}

// --- bidirectional checking ------------------------------------------------

namespace {

bool mentions_s(const TyPattern& p, std::size_t j) {
  if (const auto* s = std::get_if<PMetaS>(&p.v)) return s->index == j;
  if (const auto* con = std::get_if<PCon>(&p.v))
    return std::any_of(con->args.begin(), con->args.end(),
                       [&](const TyPattern& a) { return mentions_s(a, j); });
  return false;
}

struct Checker {
  const LanguageDescription& lang;
  std::vector<std::size_t> path;

  [[noreturn]] void fail(ErrKind kind, std::string detail) {
    throw TypeError{kind, path, std::move(detail)};
  }

  TmPtr check(const Ctx& ctx, const ExprPtr& e, const Ty& t) {
    if (e->scope != ctx_size(ctx))
      fail(ErrKind::ContextMismatch, "scope " + std::to_string(e->scope) + " vs context size " +
                                         std::to_string(ctx_size(ctx)));
    if (const auto* var = std::get_if<EVar>(&e->v)) {
      if (var->index >= ctx_size(ctx))
        fail(ErrKind::UnboundVar, "index " + std::to_string(var->index));
      const Ty& got = ctx_type(ctx, var->index);
      if (!(got == t))
        fail(ErrKind::Mismatch, "expected " + print_ty(t) + ", got " + print_ty(got));
      return mk_tvar(t, var->index);
    }
    return con(ctx, std::get<ECon>(e->v), &t);
  }

  std::pair<TmPtr, Ty> infer(const Ctx& ctx, const ExprPtr& e) {
    if (e->scope != ctx_size(ctx))
      fail(ErrKind::ContextMismatch, "scope " + std::to_string(e->scope) + " vs context size " +
                                         std::to_string(ctx_size(ctx)));
    if (const auto* var = std::get_if<EVar>(&e->v)) {
      if (var->index >= ctx_size(ctx))
        fail(ErrKind::UnboundVar, "index " + std::to_string(var->index));
      Ty t = ctx_type(ctx, var->index);
      return {mk_tvar(t, var->index), t};
    }
    TmPtr tm = con(ctx, std::get<ECon>(e->v), nullptr);
    return {tm, tm->ty};
  }

  std::size_t equation_mentioning(const Constraint& c, std::size_t j) {
    for (std::size_t i = 0; i < c.equations.size(); ++i)
      if (mentions_s(c.equations[i].first, j) || mentions_s(c.equations[i].second, j)) return i;
    return 0;
  }

  TmPtr con(const Ctx& ctx, const ECon& econ, const Ty* expected) {
    auto info = follow_path(lang.root, econ.path);
    if (!info) fail(ErrKind::Mismatch, "constructor path not in description");
    const NodeDesc& node = *info->node;
    if (econ.children.size() != node.shape.size())
      fail(ErrKind::Mismatch, "child count mismatch");

    UnifyState st;
    for (const auto& [name, ty] : info->payloads)
      st.bindings.emplace(MetaKey{MetaKey::P, 0, name}, pat_of_ty(ty));
    if (expected) st.bindings.emplace(MetaKey{MetaKey::R, 0, ""}, pat_of_ty(*expected));

    // Solve the node's equations eagerly, before visiting children.
    run_unify(node.constraint, st);

    // A bound variable's type must be known before the first child that can
    // see it; binders invisible to a child (e.g. a let definition) may be
    // pinned later by that child's inferred type.
    auto binder_ty = [&](std::size_t i) {
      TyPattern p = apply_bindings(st, pat_b(i));
      if (!pattern_ground(p))
        fail(ErrKind::AnnotationRequired, "binder type ?B" + std::to_string(i) + " undetermined");
      return pattern_to_ty(p);
    };

    std::vector<TmPtr> children(econ.children.size());
    auto visit_child = [&](std::size_t j) {
      std::vector<Ty> visible;
      for (std::size_t i = 0; i < node.shape[j].size(); ++i)
        if (node.shape[j][i] == Binder::Bound) visible.push_back(binder_ty(i));
      Ctx ctx_j = ctx_extend(ctx, visible);
      path.push_back(j);
      try {
        TyPattern sj = apply_bindings(st, pat_s(j));
        if (pattern_ground(sj)) {
          children[j] = check_child(ctx_j, econ.children[j], pattern_to_ty(sj),
                                    node.constraint, j, st);
        } else {
          auto [tm, ty] = infer(ctx_j, econ.children[j]);
          children[j] = tm;
          unify_at_node(pat_s(j), pat_of_ty(ty), st, node.constraint, j);
        }
      } catch (...) {
        path.pop_back();
        throw;
      }
      path.pop_back();
    };

    // Children go left to right, but an underdetermined child (e.g. an
    // unannotated lambda in function position) is retried after its siblings
    // have pinned more of the node's metavariables.
    std::vector<std::size_t> pending(econ.children.size());
    for (std::size_t j = 0; j < pending.size(); ++j) pending[j] = j;
    while (!pending.empty()) {
      std::vector<std::size_t> deferred;
      std::optional<TypeError> undetermined;
      for (std::size_t j : pending) {
        try {
          visit_child(j);
        } catch (const TypeError& err) {
          if (err.kind != ErrKind::AnnotationRequired) throw;
          undetermined = err;
          deferred.push_back(j);
        }
      }
      if (deferred.size() == pending.size()) throw *undetermined;
      pending = std::move(deferred);
    }

    // Re-verify: late-inferred subterm types may participate in equations.
    for (std::size_t i = 0; i < node.constraint.equations.size(); ++i) {
      TyPattern lhs = apply_bindings(st, node.constraint.equations[i].first);
      TyPattern rhs = apply_bindings(st, node.constraint.equations[i].second);
      if (!pattern_ground(lhs) || !pattern_ground(rhs))
        fail(ErrKind::AnnotationRequired,
             "equation " + std::to_string(i) + " underdetermined: " + print_pattern(lhs) +
                 " = " + print_pattern(rhs));
      if (!(lhs == rhs))
        fail(ErrKind::ConstraintUnsatisfied,
             "equation " + std::to_string(i) + ": " + print_pattern(lhs) + " /= " +
                 print_pattern(rhs));
    }

    std::vector<Ty> ts0;
    for (std::size_t i = 0; i < node.num_binders; ++i) ts0.push_back(binder_ty(i));

    TyPattern rp = apply_bindings(st, pat_r());
    if (!pattern_ground(rp)) fail(ErrKind::AnnotationRequired, "node type undetermined");
    Ty ty = pattern_to_ty(rp);
    if (expected && !(ty == *expected))
      fail(ErrKind::Mismatch, "expected " + print_ty(*expected) + ", got " + print_ty(ty));
    return mk_tcon(std::move(ty), econ.path, std::move(ts0), std::move(children));
  }

  void run_unify(const Constraint& c, UnifyState& st) {
    for (const auto& [lhs, rhs] : c.equations) {
      try {
        unify(lhs, rhs, st);
      } catch (TypeError& err) {
        err.path = path;
        throw;
      }
    }
  }

  void unify_at_node(const TyPattern& a, const TyPattern& b, UnifyState& st,
                     const Constraint& c, std::size_t j) {
    try {
      unify(a, b, st);
    } catch (TypeError& err) {
      // Disagreement between an inferred subterm type and the equation-forced
      // one is a violated node constraint, not a local mismatch.
      throw TypeError{ErrKind::ConstraintUnsatisfied, path,
                      "equation " + std::to_string(equation_mentioning(c, j)) + ": " + err.detail};
    }
  }

  TmPtr check_child(const Ctx& ctx_j, const ExprPtr& child, const Ty& want,
                    const Constraint& c, std::size_t j, UnifyState& st) {
    try {
      return check(ctx_j, child, want);
    } catch (const TypeError& err) {
      if (err.kind != ErrKind::Mismatch || err.path != path) throw;
      // The child's own root type disagrees with the forced type; if it has a
      // well-defined type of its own, report the node constraint instead.
      std::pair<TmPtr, Ty> inferred;
      try {
        inferred = infer(ctx_j, child);
      } catch (const TypeError&) {
        throw err;
      }
      unify_at_node(pat_s(j), pat_of_ty(inferred.second), st, c, j);
      return inferred.first;  // unreachable unless types agree after all
    }
  }
};

}  // namespace

TypedTerm check(const LanguageDescription& lang, const Ctx& ctx, const ExprPtr& e, const Ty& t) {
  Checker ck{lang, {}};
  return TypedTerm{ctx, ck.check(ctx, e, t)};
}

std::pair<TypedTerm, Ty> infer(const LanguageDescription& lang, const Ctx& ctx, const ExprPtr& e) {
  Checker ck{lang, {}};
  auto [tm, ty] = ck.infer(ctx, e);
  return {TypedTerm{ctx, tm}, ty};
}

// --- validation ------------------------------------------------------------

namespace {

struct TypedValidator {
  const LanguageDescription& lang;
  std::vector<TypeError> diags;
  std::vector<std::size_t> path;

  void note(ErrKind kind, std::string detail) {
    diags.push_back(TypeError{kind, path, std::move(detail)});
  }

  std::optional<Ty> instantiate(const TyPattern& p, const std::vector<Ty>& ts0,
                                const std::vector<Ty>& ts, const Ty& self,
                                const std::vector<std::pair<std::string, Ty>>& payloads) {
    if (const auto* con = std::get_if<PCon>(&p.v)) {
      Ty t{con->ctor, {}};
      for (const auto& a : con->args) {
        auto sub = instantiate(a, ts0, ts, self, payloads);
        if (!sub) return std::nullopt;
        t.args.push_back(*sub);
      }
      return t;
    }
    if (const auto* b = std::get_if<PMetaB>(&p.v)) {
      if (b->index >= ts0.size()) return std::nullopt;
      return ts0[b->index];
    }
    if (const auto* s = std::get_if<PMetaS>(&p.v)) {
      if (s->index >= ts.size()) return std::nullopt;
      return ts[s->index];
    }
    if (std::holds_alternative<PMetaR>(p.v)) return self;
    const auto& pp = std::get<PMetaP>(p.v);
    for (const auto& [name, ty] : payloads)
      if (name == pp.name) return ty;
    return std::nullopt;
  }

  void walk(const Ctx& ctx, const Ty& expected, const TmPtr& e) {
    if (!(e->ty == expected)) {
      note(ErrKind::Mismatch,
           "stored type " + print_ty(e->ty) + ", expected " + print_ty(expected));
      return;
    }
    if (const auto* var = std::get_if<TVar>(&e->v)) {
      if (var->index >= ctx_size(ctx)) {
        note(ErrKind::UnboundVar, "index " + std::to_string(var->index));
        return;
      }
      if (!(ctx_type(ctx, var->index) == e->ty))
        note(ErrKind::Mismatch, "variable type " + print_ty(e->ty) + " vs context " +
                                    print_ty(ctx_type(ctx, var->index)));
      return;
    }
    const auto& con = std::get<TCon>(e->v);
    auto info = follow_path(lang.root, con.path);
    if (!info) {
      note(ErrKind::Mismatch, "constructor path not in description");
      return;
    }
    const NodeDesc& node = *info->node;
    if (con.binder_tys.size() != node.num_binders || con.children.size() != node.shape.size()) {
      note(ErrKind::Mismatch, "node arity mismatch");
      return;
    }
    for (const Ty& t : con.binder_tys)
      if (!ty_valid(lang.tysig, t))
        note(ErrKind::Mismatch, "invalid binder type " + print_ty(t));
    std::vector<Ty> ts;
    for (const auto& c : con.children) ts.push_back(c->ty);
    const auto& eqs = node.constraint.equations;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      auto lhs = instantiate(eqs[i].first, con.binder_tys, ts, e->ty, info->payloads);
      auto rhs = instantiate(eqs[i].second, con.binder_tys, ts, e->ty, info->payloads);
      if (!lhs || !rhs) {
        note(ErrKind::ConstraintUnsatisfied, "equation " + std::to_string(i) + " ill-scoped");
        continue;
      }
      if (!(*lhs == *rhs))
        note(ErrKind::ConstraintUnsatisfied, "equation " + std::to_string(i) + ": " +
                                                 print_ty(*lhs) + " /= " + print_ty(*rhs));
    }
    for (std::size_t j = 0; j < con.children.size(); ++j) {
      path.push_back(j);
      walk(ctx_extend(ctx, visible_types(node.shape[j], con.binder_tys)), ts[j],
           con.children[j]);
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<TypeError> validate_typed(const LanguageDescription& lang, const TypedTerm& e) {
  TypedValidator v{lang, {}, {}};
  for (const Ty& t : e.ctx)
    if (!ty_valid(lang.tysig, t))
      v.note(ErrKind::ContextMismatch, "invalid context entry " + print_ty(t));
  v.walk(e.ctx, e.ty(), e.root);
  std::stable_sort(v.diags.begin(), v.diags.end(),
                   [](const TypeError& a, const TypeError& b) { return a.path < b.path; });
  return v.diags;
}

}  // namespace syngen
