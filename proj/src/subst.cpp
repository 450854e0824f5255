#include "syngen/subst.hpp"

namespace syngen {

namespace {

TmPtr ren_tree(const LanguageDescription& lang, const Ope& rho, const TmPtr& e) {
  if (const auto* var = std::get_if<TVar>(&e->v))
    return mk_tvar(e->ty, ren_var(rho, TypedVar{var->index}).index);
  const auto& con = std::get<TCon>(e->v);
  auto info = follow_path(lang.root, con.path);
  if (!info) throw ContextMismatch("ren: term path not in description");
  const NodeDesc& node = *info->node;
  std::vector<TmPtr> children;
  for (std::size_t i = 0; i < con.children.size(); ++i) {
    Ope rho_i = keep_star(visible_types(node.shape[i], con.binder_tys), rho);
    children.push_back(ren_tree(lang, rho_i, con.children[i]));
  }
  return mk_tcon(e->ty, con.path, con.binder_tys, std::move(children));
}

TmPtr sub_tree(const LanguageDescription& lang, const Subst& sigma, const TmPtr& e) {
  if (const auto* var = std::get_if<TVar>(&e->v))
    return lookup_var(sigma, TypedVar{var->index});
  const auto& con = std::get<TCon>(e->v);
  auto info = follow_path(lang.root, con.path);
  if (!info) throw ContextMismatch("sub: term path not in description");
  const NodeDesc& node = *info->node;
  std::vector<TmPtr> children;
  for (std::size_t i = 0; i < con.children.size(); ++i) {
    Subst sigma_i = shift_star(lang, visible_types(node.shape[i], con.binder_tys), sigma);
    children.push_back(sub_tree(lang, sigma_i, con.children[i]));
  }
  return mk_tcon(e->ty, con.path, con.binder_tys, std::move(children));
}

}  // namespace

TypedTerm ren(const LanguageDescription& lang, const Ope& rho, const TypedTerm& e) {
  if (rho.target() != e.ctx) throw ContextMismatch("ren: target context mismatch");
  return TypedTerm{rho.source(), ren_tree(lang, rho, e.root)};
}

TypedTerm sub(const LanguageDescription& lang, const Subst& sigma, const TypedTerm& e) {
  if (sigma.target != e.ctx) throw ContextMismatch("sub: target context mismatch");
  return TypedTerm{sigma.source, sub_tree(lang, sigma, e.root)};
}

TypedTerm sub1(const LanguageDescription& lang, const TypedTerm& e0, const TypedTerm& body) {
  Ctx expected = e0.ctx;
  expected.push_back(e0.ty());
  if (body.ctx != expected) throw ContextMismatch("sub1: body context mismatch");
  return sub(lang, snoc_sub(refl_sub(e0.ctx), e0), body);
}

}  // namespace syngen
