#include "syngen/terms.hpp"

#include <algorithm>
#include <sstream>

namespace syngen {

Ctx ctx_extend(Ctx ctx, const std::vector<Ty>& tys) {
  ctx.insert(ctx.end(), tys.begin(), tys.end());
  return ctx;
}

FormPtr mk_fvar(std::string name) {
  return std::make_shared<Form>(Form{FVar{std::move(name)}});
}
FormPtr mk_fcon(std::vector<SgChoice> path, std::vector<std::string> binders,
                std::vector<FormPtr> children) {
  return std::make_shared<Form>(
      Form{FCon{std::move(path), std::move(binders), std::move(children)}});
}

bool form_equal(const FormPtr& a, const FormPtr& b) {
  if (a->v.index() != b->v.index()) return false;
  if (const auto* va = std::get_if<FVar>(&a->v))
    return va->name == std::get<FVar>(b->v).name;
  const auto& ca = std::get<FCon>(a->v);
  const auto& cb = std::get<FCon>(b->v);
  if (ca.path != cb.path || ca.binders != cb.binders ||
      ca.children.size() != cb.children.size())
    return false;
  for (std::size_t i = 0; i < ca.children.size(); ++i)
    if (!form_equal(ca.children[i], cb.children[i])) return false;
  return true;
}

ExprPtr mk_evar(std::size_t scope, std::size_t index) {
  return std::make_shared<Expr>(Expr{scope, EVar{index}});
}
ExprPtr mk_econ(std::size_t scope, std::vector<SgChoice> path, std::vector<ExprPtr> children) {
  return std::make_shared<Expr>(Expr{scope, ECon{std::move(path), std::move(children)}});
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->scope != b->scope || a->v.index() != b->v.index()) return false;
  if (const auto* va = std::get_if<EVar>(&a->v))
    return va->index == std::get<EVar>(b->v).index;
  const auto& ca = std::get<ECon>(a->v);
  const auto& cb = std::get<ECon>(b->v);
  if (ca.path != cb.path || ca.children.size() != cb.children.size()) return false;
  for (std::size_t i = 0; i < ca.children.size(); ++i)
    if (!expr_equal(ca.children[i], cb.children[i])) return false;
  return true;
}

TmPtr mk_tvar(Ty ty, std::size_t index) {
  return std::make_shared<Tm>(Tm{std::move(ty), TVar{index}});
}
TmPtr mk_tcon(Ty ty, std::vector<SgChoice> path, std::vector<Ty> binder_tys,
              std::vector<TmPtr> children) {
  return std::make_shared<Tm>(
      Tm{std::move(ty), TCon{std::move(path), std::move(binder_tys), std::move(children)}});
}

bool tm_equal(const TmPtr& a, const TmPtr& b) {
  if (a == b) return true;
  if (!(a->ty == b->ty) || a->v.index() != b->v.index()) return false;
  if (const auto* va = std::get_if<TVar>(&a->v))
    return va->index == std::get<TVar>(b->v).index;
  const auto& ca = std::get<TCon>(a->v);
  const auto& cb = std::get<TCon>(b->v);
  if (ca.path != cb.path || ca.binder_tys != cb.binder_tys ||
      ca.children.size() != cb.children.size())
    return false;
  for (std::size_t i = 0; i < ca.children.size(); ++i)
    if (!tm_equal(ca.children[i], cb.children[i])) return false;
  return true;
}

std::size_t node_count(const TmPtr& e) {
  if (std::holds_alternative<TVar>(e->v)) return 1;
  std::size_t n = 1;
  for (const auto& c : std::get<TCon>(e->v).children) n += node_count(c);
  return n;
}

// --- resolve --------------------------------------------------------------

namespace {

ExprPtr resolve_rec(const LanguageDescription& lang, std::vector<std::string>& env,
                    const FormPtr& f) {
  if (const auto* var = std::get_if<FVar>(&f->v)) {
    // Rightmost (innermost) binding wins.
    for (std::size_t i = env.size(); i > 0; --i)
      if (env[i - 1] == var->name) return mk_evar(env.size(), env.size() - i);
    throw ResolveError("UnboundName: " + var->name);
  }
  const auto& con = std::get<FCon>(f->v);
  auto info = follow_path(lang.root, con.path);
  if (!info) throw ResolveError("InvalidPath");
  const NodeDesc& node = *info->node;
  if (con.binders.size() != node.num_binders) throw ResolveError("BinderArityMismatch");
  if (con.children.size() != node.shape.size()) throw ResolveError("ChildArityMismatch");
  std::vector<ExprPtr> children;
  for (std::size_t i = 0; i < con.children.size(); ++i) {
    std::size_t before = env.size();
    for (std::size_t b = 0; b < node.shape[i].size(); ++b)
      if (node.shape[i][b] == Binder::Bound) env.push_back(con.binders[b]);
    children.push_back(resolve_rec(lang, env, con.children[i]));
    env.resize(before);
  }
  return mk_econ(env.size(), con.path, std::move(children));
}

}  // namespace

ExprPtr resolve(const LanguageDescription& lang, const std::vector<std::string>& env,
                const FormPtr& f) {
  std::vector<std::string> scratch = env;
  return resolve_rec(lang, scratch, f);
}

std::size_t untype_var(TypedVar v) { return v.index; }

namespace {

ExprPtr untype_rec(const LanguageDescription& lang, const TmPtr& e, std::size_t scope) {
  if (const auto* var = std::get_if<TVar>(&e->v))
    return mk_evar(scope, untype_var(TypedVar{var->index}));
  const auto& con = std::get<TCon>(e->v);
  auto info = follow_path(lang.root, con.path);
  if (!info) throw ResolveError("InvalidPath");
  const NodeDesc& node = *info->node;
  std::vector<ExprPtr> children;
  for (std::size_t i = 0; i < con.children.size(); ++i)
    children.push_back(
        untype_rec(lang, con.children[i], scope + count_bound(node.shape[i])));
  return mk_econ(scope, con.path, std::move(children));
}

}  // namespace

ExprPtr untype(const LanguageDescription& lang, const TypedTerm& e) {
  return untype_rec(lang, e.root, ctx_size(e.ctx));
}

namespace {

void validate_expr_rec(const LanguageDescription& lang, const ExprPtr& e, std::size_t scope,
                       const std::string& path, std::vector<std::string>& diags) {
  if (e->scope != scope) {
    diags.push_back(path + ": ScopeMismatch: stored " + std::to_string(e->scope) +
                    ", expected " + std::to_string(scope));
    return;
  }
  if (const auto* var = std::get_if<EVar>(&e->v)) {
    if (var->index >= scope)
      diags.push_back(path + ": UnboundVar: index " + std::to_string(var->index) +
                      " at scope " + std::to_string(scope));
    return;
  }
  const auto& con = std::get<ECon>(e->v);
  auto info = follow_path(lang.root, con.path);
  if (!info) {
    diags.push_back(path + ": InvalidPath");
    return;
  }
  const NodeDesc& node = *info->node;
  if (con.children.size() != node.shape.size()) {
    diags.push_back(path + ": ChildArityMismatch");
    return;
  }
  for (std::size_t i = 0; i < con.children.size(); ++i)
    validate_expr_rec(lang, con.children[i], scope + count_bound(node.shape[i]),
                      path + "/" + std::to_string(i), diags);
}

}  // namespace

std::vector<std::string> validate_expr(const LanguageDescription& lang, const ExprPtr& e,
                                       std::size_t scope) {
  std::vector<std::string> diags;
  validate_expr_rec(lang, e, scope, "", diags);
  return diags;
}

// --- concrete syntax ------------------------------------------------------

namespace {

std::string print_head(const std::vector<SgChoice>& path) {
  std::string head;
  for (const auto& c : path)
    if (c.is_tag()) {
      if (!head.empty()) head += ':';
      head += c.tag();
    }
  return head;
}

void print_payloads(const std::vector<SgChoice>& path, std::string& out) {
  for (const auto& c : path)
    if (!c.is_tag()) out += " {" + print_ty(c.payload()) + "}";
}

}  // namespace

std::string print_form(const FormPtr& f) {
  if (const auto* var = std::get_if<FVar>(&f->v)) return "(var " + var->name + ")";
  const auto& con = std::get<FCon>(f->v);
  std::string head = print_head(con.path);
  bool has_payload =
      std::any_of(con.path.begin(), con.path.end(), [](const SgChoice& c) { return !c.is_tag(); });
  if (!has_payload && con.binders.empty() && con.children.empty()) return head;
  std::string out = "(" + head;
  print_payloads(con.path, out);
  if (!con.binders.empty()) {
    out += " [";
    for (std::size_t i = 0; i < con.binders.size(); ++i) {
      if (i) out += ' ';
      out += con.binders[i];
    }
    out += "]";
  }
  for (const auto& c : con.children) out += " " + print_form(c);
  return out + ")";
}

std::string print_expr(const ExprPtr& e) {
  if (const auto* var = std::get_if<EVar>(&e->v))
    return "(var " + std::to_string(var->index) + ")";
  const auto& con = std::get<ECon>(e->v);
  std::string head = print_head(con.path);
  bool has_payload =
      std::any_of(con.path.begin(), con.path.end(), [](const SgChoice& c) { return !c.is_tag(); });
  if (!has_payload && con.children.empty()) return head;
  std::string out = "(" + head;
  print_payloads(con.path, out);
  for (const auto& c : con.children) out += " " + print_expr(c);
  return out + ")";
}

std::string print_tm(const TmPtr& e) {
  if (const auto* var = std::get_if<TVar>(&e->v))
    return "(var " + std::to_string(var->index) + ")";
  const auto& con = std::get<TCon>(e->v);
  std::string head = print_head(con.path);
  bool has_payload =
      std::any_of(con.path.begin(), con.path.end(), [](const SgChoice& c) { return !c.is_tag(); });
  if (!has_payload && con.binder_tys.empty() && con.children.empty()) return head;
  std::string out = "(" + head;
  print_payloads(con.path, out);
  if (!con.binder_tys.empty()) {
    out += " [";
    for (std::size_t i = 0; i < con.binder_tys.size(); ++i) {
      if (i) out += ' ';
      out += print_ty(con.binder_tys[i]);
    }
    out += "]";
  }
  for (const auto& c : con.children) out += " " + print_tm(c);
  return out + ")";
}

namespace {

std::vector<std::string> split_head(const std::string& head) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : head) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

/// Walks the description guided by the head tags, consuming `{ty}` payload
/// items from the argument cursor. Returns the resolved path and node.
struct ConHead {
  std::vector<SgChoice> path;
  const NodeDesc* node;
};

ConHead parse_con_head(const LanguageDescription& lang, const std::string& head,
                       const std::vector<Sexp>& items, std::size_t& cursor) {
  std::vector<std::string> segments = split_head(head);
  std::size_t seg = 0;
  ConHead out;
  const Desc* d = lang.root.get();
  for (;;) {
    if (const auto* tag = std::get_if<SgTag>(&d->v)) {
      if (seg >= segments.size())
        throw ParseError("missing tag for " + tag->label + " in '" + head + "'");
      const Desc* next = nullptr;
      for (const auto& [name, arm] : tag->arms)
        if (name == segments[seg]) next = arm.get();
      if (!next) throw ParseError("unknown constructor: " + segments[seg]);
      out.path.push_back(choice_tag(segments[seg]));
      d = next;
      ++seg;
    } else if (std::holds_alternative<SgTy>(d->v)) {
      if (cursor >= items.size() || items[cursor].delim != '{' ||
          items[cursor].items.size() != 1)
        throw ParseError("expected {type} payload after '" + head + "'");
      out.path.push_back(choice_ty(ty_from_sexp(items[cursor].items[0])));
      d = std::get<SgTy>(d->v).rest.get();
      ++cursor;
    } else {
      if (seg != segments.size()) throw ParseError("trailing tag in '" + head + "'");
      out.node = &std::get<NodeDesc>(d->v);
      return out;
    }
  }
}

FormPtr form_from_sexp(const LanguageDescription& lang, const Sexp& s) {
  if (s.is_atom()) {
    std::size_t cursor = 0;
    ConHead h = parse_con_head(lang, s.atom, {}, cursor);
    if (h.node->num_binders != 0 || !h.node->shape.empty())
      throw ParseError("constructor " + s.atom + " needs arguments");
    return mk_fcon(std::move(h.path), {}, {});
  }
  if (s.delim != '(' || s.items.empty() || !s.items[0].is_atom())
    throw ParseError("malformed term: " + print_sexp(s));
  const std::string& head = s.items[0].atom;
  if (head == "var") {
    if (s.items.size() != 2 || !s.items[1].is_atom())
      throw ParseError("malformed variable: " + print_sexp(s));
    return mk_fvar(s.items[1].atom);
  }
  std::size_t cursor = 1;
  ConHead h = parse_con_head(lang, head, s.items, cursor);
  std::vector<std::string> binders;
  if (h.node->num_binders > 0) {
    if (cursor >= s.items.size() || s.items[cursor].delim != '[')
      throw ParseError("expected [binders] in " + print_sexp(s));
    for (const Sexp& b : s.items[cursor].items) {
      if (!b.is_atom()) throw ParseError("binder names must be atoms");
      binders.push_back(b.atom);
    }
    if (binders.size() != h.node->num_binders)
      throw ParseError("binder count mismatch in " + print_sexp(s));
    ++cursor;
  }
  std::vector<FormPtr> children;
  for (; cursor < s.items.size(); ++cursor)
    children.push_back(form_from_sexp(lang, s.items[cursor]));
  if (children.size() != h.node->shape.size())
    throw ParseError("child count mismatch in " + print_sexp(s));
  return mk_fcon(std::move(h.path), std::move(binders), std::move(children));
}

std::size_t parse_index(const std::string& a) {
  if (a.empty() || !std::all_of(a.begin(), a.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("expected de Bruijn index, got '" + a + "'");
  return std::stoul(a);
}

ExprPtr expr_from_sexp(const LanguageDescription& lang, const Sexp& s, std::size_t scope) {
  if (s.is_atom()) {
    std::size_t cursor = 0;
    ConHead h = parse_con_head(lang, s.atom, {}, cursor);
    if (!h.node->shape.empty())
      throw ParseError("constructor " + s.atom + " needs arguments");
    return mk_econ(scope, std::move(h.path), {});
  }
  if (s.delim != '(' || s.items.empty() || !s.items[0].is_atom())
    throw ParseError("malformed term: " + print_sexp(s));
  const std::string& head = s.items[0].atom;
  if (head == "var") {
    if (s.items.size() != 2 || !s.items[1].is_atom())
      throw ParseError("malformed variable: " + print_sexp(s));
    std::size_t idx = parse_index(s.items[1].atom);
    if (idx >= scope)
      throw ParseError("variable index " + std::to_string(idx) + " out of scope " +
                       std::to_string(scope));
    return mk_evar(scope, idx);
  }
  std::size_t cursor = 1;
  ConHead h = parse_con_head(lang, head, s.items, cursor);
  std::vector<ExprPtr> children;
  std::size_t child = 0;
  for (; cursor < s.items.size(); ++cursor, ++child) {
    if (child >= h.node->shape.size())
      throw ParseError("child count mismatch in " + print_sexp(s));
    children.push_back(
        expr_from_sexp(lang, s.items[cursor], scope + count_bound(h.node->shape[child])));
  }
  if (children.size() != h.node->shape.size())
    throw ParseError("child count mismatch in " + print_sexp(s));
  return mk_econ(scope, std::move(h.path), std::move(children));
}

}  // namespace

FormPtr parse_form(const LanguageDescription& lang, std::string_view input) {
  return form_from_sexp(lang, parse_sexp(input));
}

ExprPtr parse_expr(const LanguageDescription& lang, std::string_view input, std::size_t scope) {
  return expr_from_sexp(lang, parse_sexp(input), scope);
}

}  // namespace syngen
