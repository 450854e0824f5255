#include "syngen/scope.hpp"

#include <algorithm>

#include "syngen/subst.hpp"

namespace syngen {

Ctx Ope::source() const {
  Ctx out;
  for (const auto& s : steps) out.push_back(s.ty);
  return out;
}

Ctx Ope::target() const {
  Ctx out;
  for (const auto& s : steps)
    if (s.keep) out.push_back(s.ty);
  return out;
}

bool operator==(const Ope& a, const Ope& b) {
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i)
    if (a.steps[i].keep != b.steps[i].keep || a.steps[i].ty != b.steps[i].ty) return false;
  return true;
}

Ope refl_ope(const Ctx& ctx) {
  Ope rho;
  for (const Ty& t : ctx) rho.steps.push_back(OpeStep{true, t});
  return rho;
}

TypedVar ren_var(const Ope& rho, TypedVar v) {
  std::size_t remaining = v.index;
  for (std::size_t i = rho.steps.size(); i > 0; --i) {
    if (!rho.steps[i - 1].keep) continue;
    if (remaining == 0) return TypedVar{rho.steps.size() - i};
    --remaining;
  }
  throw ContextMismatch("ren_var: index out of range");
}

Ope keep_star(const std::vector<Ty>& tys, Ope rho) {
  for (const Ty& t : tys) rho.steps.push_back(OpeStep{true, t});
  return rho;
}

Ope compose_ope(const Ope& rho2, const Ope& rho1) {
  if (rho2.target() != rho1.source())
    throw ContextMismatch("compose_ope: middle context mismatch");
  std::vector<OpeStep> out;
  std::size_t i1 = rho1.steps.size();
  for (std::size_t i2 = rho2.steps.size(); i2 > 0; --i2) {
    const OpeStep& s2 = rho2.steps[i2 - 1];
    if (!s2.keep) {
      out.push_back(OpeStep{false, s2.ty});
    } else {
      // A kept entry of rho2's target is decided by the matching rho1 step.
      const OpeStep& s1 = rho1.steps[--i1];
      out.push_back(OpeStep{s1.keep, s2.ty});
    }
  }
  std::reverse(out.begin(), out.end());
  return Ope{std::move(out)};
}

bool subst_equal(const Subst& a, const Subst& b) {
  if (a.source != b.source || a.target != b.target ||
      a.entries.size() != b.entries.size())
    return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    if (!tm_equal(a.entries[i], b.entries[i])) return false;
  return true;
}

TmPtr lookup_var(const Subst& sigma, TypedVar v) {
  if (v.index >= sigma.entries.size())
    throw ContextMismatch("lookup: index out of range");
  return sigma.entries[sigma.entries.size() - 1 - v.index];
}

Subst refl_sub(const Ctx& ctx) {
  Subst sigma{ctx, ctx, {}};
  for (std::size_t i = 0; i < ctx.size(); ++i)
    sigma.entries.push_back(mk_tvar(ctx[i], ctx.size() - 1 - i));
  return sigma;
}

Subst shift_star(const LanguageDescription& lang, const std::vector<Ty>& tys,
                 const Subst& sigma) {
  Subst out;
  out.source = ctx_extend(sigma.source, tys);
  out.target = ctx_extend(sigma.target, tys);
  // Weaken existing entries past the new binders.
  Ope weaken = refl_ope(sigma.source);
  for (const Ty& t : tys) weaken.steps.push_back(OpeStep{false, t});
  for (const TmPtr& e : sigma.entries)
    out.entries.push_back(ren(lang, weaken, TypedTerm{sigma.source, e}).root);
  // Fresh variables for the new binders, innermost getting index 0.
  for (std::size_t j = 0; j < tys.size(); ++j)
    out.entries.push_back(mk_tvar(tys[j], tys.size() - 1 - j));
  return out;
}

Subst compose_sub_ope(const Subst& sigma, const Ope& rho) {
  if (sigma.target != rho.source())
    throw ContextMismatch("compose_sub_ope: middle context mismatch");
  Subst out{sigma.source, rho.target(), {}};
  std::size_t m = out.target.size();
  for (std::size_t i = 0; i < m; ++i)
    out.entries.push_back(lookup_var(sigma, ren_var(rho, TypedVar{m - 1 - i})));
  return out;
}

Subst compose_ope_sub(const LanguageDescription& lang, const Ope& rho, const Subst& sigma) {
  if (rho.target() != sigma.source)
    throw ContextMismatch("compose_ope_sub: middle context mismatch");
  Subst out{rho.source(), sigma.target, {}};
  for (const TmPtr& e : sigma.entries)
    out.entries.push_back(ren(lang, rho, TypedTerm{sigma.source, e}).root);
  return out;
}

Subst compose_sub_sub(const LanguageDescription& lang, const Subst& sigma2,
                      const Subst& sigma1) {
  if (sigma2.target != sigma1.source)
    throw ContextMismatch("compose_sub_sub: middle context mismatch");
  Subst out{sigma2.source, sigma1.target, {}};
  for (const TmPtr& e : sigma1.entries)
    out.entries.push_back(sub(lang, sigma2, TypedTerm{sigma1.source, e}).root);
  return out;
}

Subst snoc_sub(Subst sigma, const TypedTerm& e) {
  if (sigma.source != e.ctx)
    throw ContextMismatch("snoc_sub: entry context mismatch");
  sigma.target.push_back(e.ty());
  sigma.entries.push_back(e.root);
  return sigma;
}

}  // namespace syngen
