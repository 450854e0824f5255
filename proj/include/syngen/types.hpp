#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "syngen/sexp.hpp"

namespace syngen {

/// First-order object type over a user-declared signature, e.g. `bool` or
/// `(-> base base)`.
struct Ty {
  std::string ctor;
  std::vector<Ty> args;

  friend bool operator==(const Ty& a, const Ty& b) {
    return a.ctor == b.ctor && a.args == b.args;
  }
  friend bool operator!=(const Ty& a, const Ty& b) { return !(a == b); }
};

struct TyCtor {
  std::string name;
  std::size_t arity = 0;
};

/// Signature of object-type constructors a language is parameterized over.
struct TySig {
  std::vector<TyCtor> ctors;

  std::optional<std::size_t> arity_of(const std::string& name) const;
};

bool ty_valid(const TySig& sig, const Ty& t);

/// Nullary types have depth 1.
std::size_t ty_depth(const Ty& t);

std::string print_ty(const Ty& t);
Ty ty_from_sexp(const Sexp& s);
Ty parse_ty(std::string_view input);

/// All ground types of depth <= max_depth, in a fixed deterministic order.
std::vector<Ty> ground_types(const TySig& sig, std::size_t max_depth);

}  // namespace syngen
