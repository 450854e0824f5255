#include "syngen/stlc.hpp"

#include <sstream>

namespace syngen::stlc {

namespace {

DescPtr app_desc() {
  return mk_node(0, Shape{{}, {}},
                 Constraint{{{pat_s(0), pat_con("->", {pat_s(1), pat_r()})}}});
}

DescPtr lam_desc(Style style) {
  Shape shape{{Binder::Bound}};
  if (style == Style::Curry)
    return mk_node(1, shape, Constraint{{{pat_r(), pat_con("->", {pat_b(0), pat_s(0)})}}});
  return mk_sg_ty(
      "t", mk_node(1, shape,
                   Constraint{{{pat_p("t"), pat_b(0)},
                               {pat_r(), pat_con("->", {pat_p("t"), pat_s(0)})}}}));
}

DescPtr let_desc(bool recursive) {
  Binder def_flag = recursive ? Binder::Bound : Binder::Unbound;
  return mk_node(1, Shape{{def_flag}, {Binder::Bound}},
                 Constraint{{{pat_b(0), pat_s(0)}, {pat_r(), pat_s(1)}}});
}

DescPtr bool_lit_desc() {
  return mk_node(0, Shape{}, Constraint{{{pat_r(), pat_con("bool")}}});
}

DescPtr if_desc() {
  return mk_node(0, Shape{{}, {}, {}},
                 Constraint{{{pat_s(0), pat_con("bool")},
                             {pat_s(1), pat_r()},
                             {pat_s(2), pat_r()}}});
}

}  // namespace

LanguageDescription description(const Options& opt) {
  LanguageDescription lang;
  lang.name = builtin_id(opt);
  lang.tysig.ctors.push_back(TyCtor{"base", 0});
  lang.tysig.ctors.push_back(TyCtor{"->", 2});
  if (opt.bools) lang.tysig.ctors.push_back(TyCtor{"bool", 0});
  std::vector<std::pair<std::string, DescPtr>> arms;
  arms.emplace_back("app", app_desc());
  arms.emplace_back("lam", lam_desc(opt.style));
  if (opt.flavour == Flavour::Sugared) arms.emplace_back("let", let_desc(false));
  if (opt.bools) {
    arms.emplace_back("true", bool_lit_desc());
    arms.emplace_back("false", bool_lit_desc());
    arms.emplace_back("if", if_desc());
  }
  if (opt.letrec) arms.emplace_back("letrec", let_desc(true));
  lang.root = mk_sg_tag("stlc", std::move(arms));
  return lang;
}

std::string builtin_id(const Options& opt) {
  std::string id = "stlc:";
  id += opt.flavour == Flavour::Sugared ? "sugared" : "desugared";
  id += opt.style == Style::Curry ? ":Curry" : ":Church";
  if (opt.bools) id += ":bool";
  if (opt.letrec) id += ":letrec";
  return id;
}

std::optional<Options> parse_builtin_id(const std::string& id) {
  std::vector<std::string> parts;
  std::stringstream ss(id);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() < 3 || parts[0] != "stlc") return std::nullopt;
  Options opt;
  if (parts[1] == "sugared")
    opt.flavour = Flavour::Sugared;
  else if (parts[1] == "desugared")
    opt.flavour = Flavour::Desugared;
  else
    return std::nullopt;
  if (parts[2] == "Curry")
    opt.style = Style::Curry;
  else if (parts[2] == "Church")
    opt.style = Style::Church;
  else
    return std::nullopt;
  for (std::size_t i = 3; i < parts.size(); ++i) {
    if (parts[i] == "bool" && !opt.bools)
      opt.bools = true;
    else if (parts[i] == "letrec" && !opt.letrec)
      opt.letrec = true;
    else
      return std::nullopt;
  }
  return opt;
}

Ty ty_base() { return Ty{"base", {}}; }
Ty ty_bool() { return Ty{"bool", {}}; }
Ty ty_arrow(Ty from, Ty to) { return Ty{"->", {std::move(from), std::move(to)}}; }

namespace {

std::optional<std::string> first_tag(const TmPtr& e) {
  const auto* con = std::get_if<TCon>(&e->v);
  if (!con || con->path.empty() || !con->path[0].is_tag()) return std::nullopt;
  return con->path[0].tag();
}

std::vector<SgChoice> lam_path(const Options& opt, const Ty& binder) {
  std::vector<SgChoice> path{choice_tag("lam")};
  if (opt.style == Style::Church) path.push_back(choice_ty(binder));
  return path;
}

}  // namespace

TmPtr tm_app(TmPtr f, TmPtr e) {
  if (f->ty.ctor != "->" || f->ty.args.size() != 2)
    throw std::invalid_argument("tm_app: function type expected");
  Ty result = f->ty.args[1];
  return mk_tcon(std::move(result), {choice_tag("app")}, {}, {std::move(f), std::move(e)});
}

TmPtr tm_lam(const Options& opt, Ty binder, TmPtr body) {
  Ty ty = ty_arrow(binder, body->ty);
  return mk_tcon(std::move(ty), lam_path(opt, binder), {binder}, {std::move(body)});
}

TmPtr tm_let(Ty binder, TmPtr def, TmPtr body) {
  Ty ty = body->ty;
  return mk_tcon(std::move(ty), {choice_tag("let")}, {std::move(binder)},
                 {std::move(def), std::move(body)});
}

TmPtr tm_true() { return mk_tcon(ty_bool(), {choice_tag("true")}, {}, {}); }
TmPtr tm_false() { return mk_tcon(ty_bool(), {choice_tag("false")}, {}, {}); }

TmPtr tm_if(TmPtr cond, TmPtr thn, TmPtr els) {
  Ty ty = thn->ty;
  return mk_tcon(std::move(ty), {choice_tag("if")}, {},
                 {std::move(cond), std::move(thn), std::move(els)});
}

ExprPtr close_expr(const Options& opt, const ExprPtr& e, const std::vector<Ty>& binder_tys) {
  if (opt.style == Style::Church && binder_tys.size() != e->scope)
    throw std::invalid_argument("close_expr: need one annotation per free variable");
  ExprPtr cur = e;
  // Each wrap binds the body's variable 0; annotation i belongs to index i.
  for (std::size_t i = 0; cur->scope > 0; ++i) {
    std::vector<SgChoice> path{choice_tag("lam")};
    if (opt.style == Style::Church) path.push_back(choice_ty(binder_tys[i]));
    cur = mk_econ(cur->scope - 1, std::move(path), {cur});
  }
  return cur;
}

namespace {

TmPtr desugar_tree(const Options& opt, const TmPtr& e) {
  const auto* con = std::get_if<TCon>(&e->v);
  if (!con) return e;
  std::vector<TmPtr> children;
  for (const auto& c : con->children) children.push_back(desugar_tree(opt, c));
  if (first_tag(e) == "let") {
    // letvar e0 body  ~>  (lam body) . e0
    const Ty& u = con->binder_tys[0];
    return tm_app(tm_lam(opt, u, children[1]), children[0]);
  }
  return mk_tcon(e->ty, con->path, con->binder_tys, std::move(children));
}

}  // namespace

TypedTerm desugar(const Options& opt, const TypedTerm& e) {
  return TypedTerm{e.ctx, desugar_tree(opt, e.root)};
}

namespace {

bool is_value_tree(const TmPtr& e) {
  auto tag = first_tag(e);
  return tag == "lam" || tag == "true" || tag == "false";
}

std::optional<std::pair<std::string, TmPtr>> step_tree(const LanguageDescription& lang,
                                                       const TmPtr& e) {
  auto tag = first_tag(e);
  if (tag == "app") {
    const auto& con = std::get<TCon>(e->v);
    const TmPtr& f = con.children[0];
    const TmPtr& a = con.children[1];
    if (first_tag(f) == "lam" && is_value_tree(a)) {
      const auto& lam = std::get<TCon>(f->v);
      TypedTerm body{Ctx{lam.binder_tys[0]}, lam.children[0]};
      return {{"app-lam", sub1(lang, TypedTerm{{}, a}, body).root}};
    }
    if (is_value_tree(f)) {
      if (auto s = step_tree(lang, a))
        return {{"app-arg", mk_tcon(e->ty, con.path, con.binder_tys, {f, s->second})}};
      return std::nullopt;
    }
    if (auto s = step_tree(lang, f))
      return {{"app-fun", mk_tcon(e->ty, con.path, con.binder_tys, {s->second, a})}};
    return std::nullopt;
  }
  if (tag == "if") {
    const auto& con = std::get<TCon>(e->v);
    auto cond_tag = first_tag(con.children[0]);
    if (cond_tag == "true") return {{"if-true", con.children[1]}};
    if (cond_tag == "false") return {{"if-false", con.children[2]}};
    if (auto s = step_tree(lang, con.children[0]))
      return {{"if-cond", mk_tcon(e->ty, con.path, con.binder_tys,
                                  {s->second, con.children[1], con.children[2]})}};
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

bool is_value(const TypedTerm& e) { return is_value_tree(e.root); }

std::optional<std::pair<std::string, TypedTerm>> step(const LanguageDescription& lang,
                                                      const TypedTerm& e) {
  if (!e.ctx.empty()) throw OpenTerm("step: term must be closed");
  auto s = step_tree(lang, e.root);
  if (!s) return std::nullopt;
  return {{s->first, TypedTerm{{}, s->second}}};
}

StepTrace eval(const LanguageDescription& lang, const TypedTerm& e, std::size_t fuel) {
  if (!e.ctx.empty()) throw OpenTerm("eval: term must be closed");
  Ty ty = e.ty();
  StepTrace trace{{}, e};
  TypedTerm cur = e;
  for (std::size_t i = 0; i < fuel; ++i) {
    if (is_value(cur)) {
      trace.result = cur;
      return trace;
    }
    auto s = step(lang, cur);
    if (!s) {
      trace.result = cur;
      trace.stuck = true;
      return trace;
    }
    cur = s->second;
    if (!(cur.ty() == ty) || !validate_typed(lang, cur).empty())
      trace.preservation_violated = true;
    trace.steps.push_back(*s);
  }
  trace.result = cur;
  trace.fuel_exhausted = !is_value(cur);
  return trace;
}

}  // namespace syngen::stlc
