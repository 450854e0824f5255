#include "syngen/types.hpp"

#include <algorithm>
#include <functional>

namespace syngen {

std::optional<std::size_t> TySig::arity_of(const std::string& name) const {
  for (const auto& c : ctors)
    if (c.name == name) return c.arity;
  return std::nullopt;
}

bool ty_valid(const TySig& sig, const Ty& t) {
  auto arity = sig.arity_of(t.ctor);
  if (!arity || *arity != t.args.size()) return false;
  return std::all_of(t.args.begin(), t.args.end(),
                     [&](const Ty& a) { return ty_valid(sig, a); });
}

std::size_t ty_depth(const Ty& t) {
  std::size_t d = 0;
  for (const Ty& a : t.args) d = std::max(d, ty_depth(a));
  return d + 1;
}

std::string print_ty(const Ty& t) {
  if (t.args.empty()) return t.ctor;
  std::string out = "(" + t.ctor;
  for (const Ty& a : t.args) out += " " + print_ty(a);
  return out + ")";
}

Ty ty_from_sexp(const Sexp& s) {
  if (s.is_atom()) {
    if (s.atom.empty()) throw ParseError("empty type");
    return Ty{s.atom, {}};
  }
  if (s.delim != '(' || s.items.empty() || !s.items[0].is_atom())
    throw ParseError("malformed type: " + print_sexp(s));
  Ty t{s.items[0].atom, {}};
  for (std::size_t i = 1; i < s.items.size(); ++i)
    t.args.push_back(ty_from_sexp(s.items[i]));
  return t;
}

Ty parse_ty(std::string_view input) { return ty_from_sexp(parse_sexp(input)); }

namespace {

void arg_tuples(const std::vector<Ty>& pool, std::size_t arity, std::vector<Ty>& cur,
                const std::function<void(const std::vector<Ty>&)>& emit) {
  if (cur.size() == arity) {
    emit(cur);
    return;
  }
  for (const Ty& t : pool) {
    cur.push_back(t);
    arg_tuples(pool, arity, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Ty> ground_types(const TySig& sig, std::size_t max_depth) {
  std::vector<Ty> acc;
  // Layer by depth: a depth-d type combines arguments of depth < d,
  // at least one of depth exactly d-1.
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::vector<Ty> layer;
    for (const TyCtor& c : sig.ctors) {
      if (c.arity == 0) {
        if (d == 1) layer.push_back(Ty{c.name, {}});
        continue;
      }
      std::vector<Ty> cur;
      arg_tuples(acc, c.arity, cur, [&](const std::vector<Ty>& args) {
        std::size_t maxd = 0;
        for (const Ty& a : args) maxd = std::max(maxd, ty_depth(a));
        if (maxd == d - 1) layer.push_back(Ty{c.name, args});
      });
    }
    acc.insert(acc.end(), layer.begin(), layer.end());
  }
  return acc;
}

}  // namespace syngen
