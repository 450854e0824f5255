#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace syngen {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Minimal s-expression tree. Lists remember their opening delimiter so the
/// term syntax can distinguish `(...)` children from `[...]` binder lists and
/// `{...}` type payloads.
struct Sexp {
  char delim = 0;  // 0 = atom, otherwise '(', '[' or '{'
  std::string atom;
  std::vector<Sexp> items;

  bool is_atom() const { return delim == 0; }
};

Sexp parse_sexp(std::string_view input);
std::string print_sexp(const Sexp& s);

}  // namespace syngen
