#include "syngen/termgen.hpp"

#include <functional>
#include <map>
#include <set>

namespace syngen {

namespace {

/// A root-to-node choice path with unresolved payload slots.
struct ProdTemplate {
  std::vector<SgChoice> skeleton;                        // payloads carry dummy types
  std::vector<std::pair<std::size_t, std::string>> payload_slots;  // skeleton pos -> binder
  const NodeDesc* node = nullptr;
};

void collect_prods(const DescPtr& d, std::vector<SgChoice>& path,
                   std::vector<std::pair<std::size_t, std::string>>& slots,
                   std::vector<ProdTemplate>& out) {
  if (const auto* tag = std::get_if<SgTag>(&d->v)) {
    for (const auto& [name, arm] : tag->arms) {
      path.push_back(choice_tag(name));
      collect_prods(arm, path, slots, out);
      path.pop_back();
    }
  } else if (const auto* sg = std::get_if<SgTy>(&d->v)) {
    slots.emplace_back(path.size(), sg->binder);
    path.push_back(choice_ty(Ty{}));
    collect_prods(sg->rest, path, slots, out);
    path.pop_back();
    slots.pop_back();
  } else {
    out.push_back(ProdTemplate{path, slots, &std::get<NodeDesc>(d->v)});
  }
}

std::vector<ProdTemplate> all_prods(const LanguageDescription& lang) {
  std::vector<ProdTemplate> out;
  std::vector<SgChoice> path;
  std::vector<std::pair<std::size_t, std::string>> slots;
  collect_prods(lang.root, path, slots, out);
  return out;
}

void collect_free_metas(const UnifyState& st, const TyPattern& p, std::vector<MetaKey>& out,
                        std::set<std::string>& seen) {
  TyPattern w = apply_bindings(st, p);
  if (const auto* con = std::get_if<PCon>(&w.v)) {
    for (const auto& a : con->args) collect_free_metas(st, a, out, seen);
    return;
  }
  // apply_bindings leaves only unbound metavariables.
  if (seen.insert(print_pattern(w)).second) {
    if (const auto* b = std::get_if<PMetaB>(&w.v))
      out.push_back(MetaKey{MetaKey::B, b->index, ""});
    else if (const auto* s = std::get_if<PMetaS>(&w.v))
      out.push_back(MetaKey{MetaKey::S, s->index, ""});
    else if (std::holds_alternative<PMetaR>(w.v))
      out.push_back(MetaKey{MetaKey::R, 0, ""});
    else
      out.push_back(MetaKey{MetaKey::P, 0, std::get<PMetaP>(w.v).name});
  }
}

std::vector<SgChoice> fill_payloads(const ProdTemplate& prod, const UnifyState& st) {
  std::vector<SgChoice> path = prod.skeleton;
  for (const auto& [pos, name] : prod.payload_slots) {
    TyPattern p = apply_bindings(st, pat_p(name));
    path[pos] = choice_ty(pattern_to_ty(p));  // caller guarantees groundness
  }
  return path;
}

}  // namespace

struct TypedTermGen::Prod : ProdTemplate {};

TypedTermGen::~TypedTermGen() = default;

TypedTermGen::TypedTermGen(const LanguageDescription& lang, Ctx ctx, Ty ty, GenConfig cfg)
    : lang_(lang), ctx_(std::move(ctx)), ty_(std::move(ty)), cfg_(cfg), rng_(cfg.seed) {
  pool_ = ground_types(lang.tysig, cfg_.ty_depth);
  for (auto& p : all_prods(lang)) prods_.push_back(Prod{std::move(p)});
}

Ty TypedTermGen::random_ty() { return pool_[rng_() % pool_.size()]; }

TmPtr TypedTermGen::generate(const Ctx& ctx, const Ty& t, std::size_t depth) {
  if (fuel_ == 0) return nullptr;  // give up on pathological searches
  --fuel_;
  std::string memo_key = print_ty(t);
  for (const Ty& c : ctx) memo_key += "," + print_ty(c);
  auto memo_it = fail_memo_.find(memo_key);
  if (memo_it != fail_memo_.end() && depth <= memo_it->second) return nullptr;
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (ctx_type(ctx, i) == t) vars.push_back(i);

  const std::size_t attempts = 64;
  for (std::size_t a = 0; a < attempts; ++a) {
    bool pick_var = !vars.empty() && (rng_() % 4 == 0);
    if (pick_var) return mk_tvar(t, vars[rng_() % vars.size()]);

    const Prod& prod = prods_[rng_() % prods_.size()];
    const NodeDesc& node = *prod.node;
    // At depth 0 only leaves remain: variables or childless productions.
    if (depth == 0 && !node.shape.empty()) {
      if (!vars.empty()) return mk_tvar(t, vars[rng_() % vars.size()]);
      continue;
    }
    UnifyState st;
    bool feasible = try_unify(pat_r(), pat_of_ty(t), st);
    for (const auto& [lhs, rhs] : node.constraint.equations)
      feasible = feasible && try_unify(lhs, rhs, st);
    if (!feasible) continue;  // production cannot produce this type

    // Pin binder types and payloads before extending contexts; leftover
    // degrees of freedom are sampled from the ground pool.
    auto ground_all = [&](const TyPattern& p) {
      std::vector<MetaKey> free;
      std::set<std::string> seen;
      collect_free_metas(st, p, free, seen);
      for (const MetaKey& k : free) st.bindings.emplace(k, pat_of_ty(random_ty()));
    };
    for (std::size_t i = 0; i < node.num_binders; ++i) ground_all(pat_b(i));
    for (const auto& [pos, name] : prod.payload_slots) ground_all(pat_p(name));
    std::vector<Ty> ts0;
    for (std::size_t i = 0; i < node.num_binders; ++i)
      ts0.push_back(pattern_to_ty(apply_bindings(st, pat_b(i))));

    std::vector<TmPtr> children;
    bool ok = true;
    for (std::size_t j = 0; j < node.shape.size(); ++j) {
      ground_all(pat_s(j));
      Ty tj = pattern_to_ty(apply_bindings(st, pat_s(j)));
      Ctx ctx_j = ctx_extend(ctx, visible_types(node.shape[j], ts0));
      TmPtr child = generate(ctx_j, tj, depth == 0 ? 0 : depth - 1);
      if (!child) {
        ok = false;
        break;
      }
      children.push_back(std::move(child));
    }
    if (!ok) continue;
    return mk_tcon(t, fill_payloads(prod, st), std::move(ts0), std::move(children));
  }
  // Failure with this much depth implies failure with less.
  auto [it, fresh] = fail_memo_.emplace(std::move(memo_key), depth);
  if (!fresh && it->second < depth) it->second = depth;
  return nullptr;
}

std::optional<TypedTerm> TypedTermGen::next() {
  fuel_ = 6000;
  for (std::size_t attempt = 0; attempt < 128 && fuel_ > 0; ++attempt) {
    fail_memo_.clear();  // a failure under one sampling need not repeat
    // Vary the size target: most draws shallow, up to the configured bound.
    std::size_t depth = rng_() % (cfg_.max_depth + 1);
    if (TmPtr e = generate(ctx_, ty_, depth)) return TypedTerm{ctx_, e};
  }
  return std::nullopt;  // Exhausted
}

// --- exhaustive enumeration -----------------------------------------------

namespace {

class Enumerator {
 public:
  Enumerator(const LanguageDescription& lang, std::size_t ty_depth)
      : lang_(lang), pool_(ground_types(lang.tysig, ty_depth)), prods_(all_prods(lang)) {}

  const std::vector<Ty>& pool() const { return pool_; }

  std::vector<TmPtr> terms(const Ctx& ctx, const Ty& t, std::size_t max_nodes) {
    if (max_nodes == 0) return {};
    std::string key = print_ty(t) + "#" + std::to_string(max_nodes) + "#";
    for (const Ty& c : ctx) key += print_ty(c) + ",";
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::vector<TmPtr> out;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (ctx_type(ctx, i) == t) out.push_back(mk_tvar(t, i));

    for (const ProdTemplate& prod : prods_) {
      UnifyState st;
      bool feasible = try_unify(pat_r(), pat_of_ty(t), st);
      for (const auto& [lhs, rhs] : prod.node->constraint.equations)
        feasible = feasible && try_unify(lhs, rhs, st);
      if (!feasible) continue;
      // Every remaining degree of freedom ranges over the ground pool.
      std::vector<MetaKey> free;
      std::set<std::string> seen;
      for (std::size_t i = 0; i < prod.node->num_binders; ++i)
        collect_free_metas(st, pat_b(i), free, seen);
      for (const auto& [pos, name] : prod.payload_slots)
        collect_free_metas(st, pat_p(name), free, seen);
      for (std::size_t j = 0; j < prod.node->shape.size(); ++j)
        collect_free_metas(st, pat_s(j), free, seen);
      enumerate_assignments(prod, st, free, 0, ctx, t, max_nodes, out);
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  void enumerate_assignments(const ProdTemplate& prod, UnifyState& st,
                             const std::vector<MetaKey>& free, std::size_t idx,
                             const Ctx& ctx, const Ty& t, std::size_t max_nodes,
                             std::vector<TmPtr>& out) {
    if (idx < free.size()) {
      for (const Ty& choice : pool_) {
        st.bindings[free[idx]] = pat_of_ty(choice);
        enumerate_assignments(prod, st, free, idx + 1, ctx, t, max_nodes, out);
      }
      st.bindings.erase(free[idx]);
      return;
    }
    const NodeDesc& node = *prod.node;
    std::vector<Ty> ts0;
    for (std::size_t i = 0; i < node.num_binders; ++i)
      ts0.push_back(pattern_to_ty(apply_bindings(st, pat_b(i))));
    std::vector<Ty> ts;
    for (std::size_t j = 0; j < node.shape.size(); ++j)
      ts.push_back(pattern_to_ty(apply_bindings(st, pat_s(j))));
    std::vector<SgChoice> path = fill_payloads(prod, st);

    std::vector<TmPtr> children;
    std::size_t k = node.shape.size();
    if (max_nodes < 1 + k) return;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t budget) {
      if (j == k) {
        out.push_back(mk_tcon(t, path, ts0, children));
        return;
      }
      Ctx ctx_j = ctx_extend(ctx, visible_types(node.shape[j], ts0));
      // Leave at least one node for each remaining child.
      std::size_t cap = budget - (k - 1 - j);
      for (const TmPtr& c : terms(ctx_j, ts[j], cap)) {
        std::size_t used = node_count(c);
        children.push_back(c);
        rec(j + 1, budget - used);
        children.pop_back();
      }
    };
    rec(0, max_nodes - 1);
  }

  const LanguageDescription& lang_;
  std::vector<Ty> pool_;
  std::vector<ProdTemplate> prods_;
  std::map<std::string, std::vector<TmPtr>> memo_;
};

}  // namespace

std::vector<TmPtr> enum_terms(const LanguageDescription& lang, const Ctx& ctx, const Ty& t,
                              std::size_t max_nodes) {
  Enumerator e(lang, 2);
  return e.terms(ctx, t, max_nodes);
}

std::vector<std::pair<Ty, TypedTerm>> enum_closed(const LanguageDescription& lang,
                                                  std::size_t max_nodes) {
  Enumerator e(lang, 2);
  std::vector<std::pair<Ty, TypedTerm>> out;
  for (const Ty& t : e.pool())
    for (const TmPtr& tm : e.terms({}, t, max_nodes))
      out.emplace_back(t, TypedTerm{{}, tm});
  return out;
}

}  // namespace syngen
