#include "syngen/sexp.hpp"

#include <cctype>

namespace syngen {

namespace {

struct Cursor {
  std::string_view in;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < in.size() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
  }
  bool done() const { return pos >= in.size(); }
  char peek() const { return in[pos]; }
};

bool is_delim(char c) {
  return c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}';
}

char closer(char open) {
  switch (open) {
    case '(': return ')';
    case '[': return ']';
    default: return '}';
  }
}

Sexp parse_one(Cursor& c) {
  c.skip_ws();
  if (c.done()) throw ParseError("unexpected end of input");
  char ch = c.peek();
  if (ch == ')' || ch == ']' || ch == '}')
    throw ParseError(std::string("unexpected '") + ch + "'");
  if (ch == '(' || ch == '[' || ch == '{') {
    Sexp list;
    list.delim = ch;
    ++c.pos;
    for (;;) {
      c.skip_ws();
      if (c.done()) throw ParseError("unterminated list");
      if (c.peek() == closer(ch)) {
        ++c.pos;
        return list;
      }
      list.items.push_back(parse_one(c));
    }
  }
  Sexp atom;
  std::size_t start = c.pos;
  while (!c.done() && !std::isspace(static_cast<unsigned char>(c.peek())) && !is_delim(c.peek()))
    ++c.pos;
  atom.atom = std::string(c.in.substr(start, c.pos - start));
  return atom;
}

}  // namespace

Sexp parse_sexp(std::string_view input) {
  Cursor c{input};
  Sexp s = parse_one(c);
  c.skip_ws();
  if (!c.done()) throw ParseError("trailing input after expression");
  return s;
}

std::string print_sexp(const Sexp& s) {
  if (s.is_atom()) return s.atom;
  std::string out(1, s.delim);
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += ' ';
    out += print_sexp(s.items[i]);
  }
  out += closer(s.delim);
  return out;
}

}  // namespace syngen
