#include "syngen/desc.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace syngen {

using json = nlohmann::ordered_json;

std::size_t count_bound(const BinderRow& row) {
  return static_cast<std::size_t>(
      std::count(row.begin(), row.end(), Binder::Bound));
}

std::vector<Ty> visible_types(const BinderRow& row, const std::vector<Ty>& ts0) {
  if (row.size() != ts0.size())
    throw std::invalid_argument("visible_types: length mismatch");
  std::vector<Ty> out;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] == Binder::Bound) out.push_back(ts0[i]);
  return out;
}

bool operator==(const TyPattern& a, const TyPattern& b) {
  if (a.v.index() != b.v.index()) return false;
  if (const auto* ca = std::get_if<PCon>(&a.v)) {
    const auto& cb = std::get<PCon>(b.v);
    if (ca->ctor != cb.ctor || ca->args.size() != cb.args.size()) return false;
    for (std::size_t i = 0; i < ca->args.size(); ++i)
      if (!(ca->args[i] == cb.args[i])) return false;
    return true;
  }
  if (const auto* ba = std::get_if<PMetaB>(&a.v))
    return ba->index == std::get<PMetaB>(b.v).index;
  if (const auto* sa = std::get_if<PMetaS>(&a.v))
    return sa->index == std::get<PMetaS>(b.v).index;
  if (std::holds_alternative<PMetaR>(a.v)) return true;
  return std::get<PMetaP>(a.v).name == std::get<PMetaP>(b.v).name;
}

TyPattern pat_con(std::string ctor, std::vector<TyPattern> args) {
  return TyPattern{PCon{std::move(ctor), std::move(args)}};
}
TyPattern pat_b(std::size_t i) { return TyPattern{PMetaB{i}}; }
TyPattern pat_s(std::size_t j) { return TyPattern{PMetaS{j}}; }
TyPattern pat_r() { return TyPattern{PMetaR{}}; }
TyPattern pat_p(std::string name) { return TyPattern{PMetaP{std::move(name)}}; }

TyPattern pat_of_ty(const Ty& t) {
  std::vector<TyPattern> args;
  for (const Ty& a : t.args) args.push_back(pat_of_ty(a));
  return pat_con(t.ctor, std::move(args));
}

std::string print_pattern(const TyPattern& p) {
  if (const auto* c = std::get_if<PCon>(&p.v)) {
    if (c->args.empty()) return c->ctor;
    std::string out = "(" + c->ctor;
    for (const auto& a : c->args) out += " " + print_pattern(a);
    return out + ")";
  }
  if (const auto* b = std::get_if<PMetaB>(&p.v)) return "?B" + std::to_string(b->index);
  if (const auto* s = std::get_if<PMetaS>(&p.v)) return "?S" + std::to_string(s->index);
  if (std::holds_alternative<PMetaR>(p.v)) return "?R";
  return "?P:" + std::get<PMetaP>(p.v).name;
}

DescPtr mk_sg_tag(std::string label, std::vector<std::pair<std::string, DescPtr>> arms) {
  return std::make_shared<Desc>(Desc{SgTag{std::move(label), std::move(arms)}});
}
DescPtr mk_sg_ty(std::string binder, DescPtr rest) {
  return std::make_shared<Desc>(Desc{SgTy{std::move(binder), std::move(rest)}});
}
DescPtr mk_node(std::size_t n, Shape shape, Constraint constraint) {
  return std::make_shared<Desc>(Desc{NodeDesc{n, std::move(shape), std::move(constraint)}});
}

bool operator==(const SgChoice& a, const SgChoice& b) { return a.v == b.v; }

SgChoice choice_tag(std::string name) { return SgChoice{std::move(name)}; }
SgChoice choice_ty(Ty t) { return SgChoice{std::move(t)}; }

std::optional<PathInfo> follow_path(const DescPtr& root, const std::vector<SgChoice>& path) {
  PathInfo info;
  const Desc* d = root.get();
  std::size_t i = 0;
  for (;;) {
    if (!d) return std::nullopt;
    if (const auto* tag = std::get_if<SgTag>(&d->v)) {
      if (i >= path.size() || !path[i].is_tag()) return std::nullopt;
      const Desc* next = nullptr;
      for (const auto& [name, arm] : tag->arms)
        if (name == path[i].tag()) next = arm.get();
      if (!next) return std::nullopt;
      d = next;
      ++i;
    } else if (const auto* sg = std::get_if<SgTy>(&d->v)) {
      if (i >= path.size() || path[i].is_tag()) return std::nullopt;
      info.payloads.emplace_back(sg->binder, path[i].payload());
      d = sg->rest.get();
      ++i;
    } else {
      if (i != path.size()) return std::nullopt;
      info.node = &std::get<NodeDesc>(d->v);
      return info;
    }
  }
}

namespace {

struct Validator {
  const LanguageDescription& lang;
  std::vector<std::string> diags;

  void fail(const std::string& path, const std::string& what) {
    diags.push_back(path + ": " + what);
  }

  void check_pattern(const std::string& path, const TyPattern& p, std::size_t n,
                     std::size_t k, const std::set<std::string>& payload_names) {
    if (const auto* c = std::get_if<PCon>(&p.v)) {
      auto arity = lang.tysig.arity_of(c->ctor);
      if (!arity)
        fail(path, "UnknownTyCtor: " + c->ctor);
      else if (*arity != c->args.size())
        fail(path, "TyCtorArityMismatch: " + c->ctor);
      for (const auto& a : c->args) check_pattern(path, a, n, k, payload_names);
    } else if (const auto* b = std::get_if<PMetaB>(&p.v)) {
      if (b->index >= n) fail(path, "MetaOutOfRange: ?B" + std::to_string(b->index));
    } else if (const auto* s = std::get_if<PMetaS>(&p.v)) {
      if (s->index >= k) fail(path, "MetaOutOfRange: ?S" + std::to_string(s->index));
    } else if (const auto* pp = std::get_if<PMetaP>(&p.v)) {
      if (!payload_names.count(pp->name)) fail(path, "UnknownPayload: " + pp->name);
    }
  }

  void walk(const std::string& path, const Desc& d, std::set<std::string> payload_names) {
    if (const auto* tag = std::get_if<SgTag>(&d.v)) {
      std::set<std::string> seen;
      for (const auto& [name, arm] : tag->arms) {
        if (!seen.insert(name).second) fail(path, "DuplicateTag: " + name);
        if (!arm) {
          fail(path + "/" + name, "MissingArm");
          continue;
        }
        walk(path + "/" + name, *arm, payload_names);
      }
    } else if (const auto* sg = std::get_if<SgTy>(&d.v)) {
      if (!payload_names.insert(sg->binder).second)
        fail(path, "DuplicatePayloadBinder: " + sg->binder);
      if (!sg->rest)
        fail(path, "MissingRest");
      else
        walk(path + "/{" + sg->binder + "}", *sg->rest, payload_names);
    } else {
      const auto& node = std::get<NodeDesc>(d.v);
      for (std::size_t i = 0; i < node.shape.size(); ++i)
        if (node.shape[i].size() != node.num_binders)
          fail(path, "ShapeNotRectangular: row " + std::to_string(i));
      std::size_t k = node.shape.size();
      for (const auto& [lhs, rhs] : node.constraint.equations) {
        check_pattern(path, lhs, node.num_binders, k, payload_names);
        check_pattern(path, rhs, node.num_binders, k, payload_names);
      }
    }
  }
};

}  // namespace

std::vector<std::string> validate_description(const LanguageDescription& lang) {
  Validator v{lang, {}};
  std::set<std::string> ty_names;
  for (const auto& c : lang.tysig.ctors)
    if (!ty_names.insert(c.name).second)
      v.fail("tysig", "DuplicateTyCtor: " + c.name);
  if (!lang.root)
    v.fail("/", "MissingRoot");
  else
    v.walk("/", *lang.root, {});
  return v.diags;
}

// --- JSON -----------------------------------------------------------------

namespace {

json pattern_to_json(const TyPattern& p) {
  json j = json::array();
  if (const auto* c = std::get_if<PCon>(&p.v)) {
    j.push_back("con");
    j.push_back(c->ctor);
    for (const auto& a : c->args) j.push_back(pattern_to_json(a));
  } else if (const auto* b = std::get_if<PMetaB>(&p.v)) {
    j.push_back("B");
    j.push_back(b->index);
  } else if (const auto* s = std::get_if<PMetaS>(&p.v)) {
    j.push_back("S");
    j.push_back(s->index);
  } else if (std::holds_alternative<PMetaR>(p.v)) {
    j.push_back("R");
  } else {
    j.push_back("P");
    j.push_back(std::get<PMetaP>(p.v).name);
  }
  return j;
}

TyPattern pattern_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw ParseError("malformed pattern: " + j.dump());
  const std::string kind = j[0].get<std::string>();
  if (kind == "con") {
    if (j.size() < 2 || !j[1].is_string()) throw ParseError("malformed con pattern");
    std::vector<TyPattern> args;
    for (std::size_t i = 2; i < j.size(); ++i) args.push_back(pattern_from_json(j[i]));
    return pat_con(j[1].get<std::string>(), std::move(args));
  }
  if (kind == "B") return pat_b(j.at(1).get<std::size_t>());
  if (kind == "S") return pat_s(j.at(1).get<std::size_t>());
  if (kind == "R") return pat_r();
  if (kind == "P") return pat_p(j.at(1).get<std::string>());
  throw ParseError("unknown pattern kind: " + kind);
}

json desc_to_json(const Desc& d) {
  json j = json::object();
  if (const auto* tag = std::get_if<SgTag>(&d.v)) {
    json arms = json::object();
    for (const auto& [name, arm] : tag->arms) arms[name] = desc_to_json(*arm);
    j["sg-tag"] = json{{"label", tag->label}, {"arms", std::move(arms)}};
  } else if (const auto* sg = std::get_if<SgTy>(&d.v)) {
    j["sg-ty"] = json{{"binder", sg->binder}, {"rest", desc_to_json(*sg->rest)}};
  } else {
    const auto& node = std::get<NodeDesc>(d.v);
    json shape = json::array();
    for (const auto& row : node.shape) {
      json r = json::array();
      for (Binder b : row) r.push_back(b == Binder::Bound ? "bound" : "unbound");
      shape.push_back(std::move(r));
    }
    json constraint = json::array();
    for (const auto& [lhs, rhs] : node.constraint.equations)
      constraint.push_back(json::array({pattern_to_json(lhs), pattern_to_json(rhs)}));
    j["node"] = json{{"n", node.num_binders},
                     {"shape", std::move(shape)},
                     {"constraint", std::move(constraint)}};
  }
  return j;
}

DescPtr desc_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1)
    throw ParseError("malformed description: " + j.dump());
  if (j.contains("sg-tag")) {
    const json& t = j["sg-tag"];
    std::vector<std::pair<std::string, DescPtr>> arms;
    for (const auto& [name, arm] : t.at("arms").items())
      arms.emplace_back(name, desc_from_json(arm));
    return mk_sg_tag(t.at("label").get<std::string>(), std::move(arms));
  }
  if (j.contains("sg-ty")) {
    const json& t = j["sg-ty"];
    return mk_sg_ty(t.at("binder").get<std::string>(), desc_from_json(t.at("rest")));
  }
  if (j.contains("node")) {
    const json& t = j["node"];
    Shape shape;
    for (const auto& row : t.at("shape")) {
      BinderRow r;
      for (const auto& b : row) {
        const std::string s = b.get<std::string>();
        if (s != "bound" && s != "unbound") throw ParseError("bad binder flag: " + s);
        r.push_back(s == "bound" ? Binder::Bound : Binder::Unbound);
      }
      shape.push_back(std::move(r));
    }
    Constraint constraint;
    for (const auto& eq : t.at("constraint")) {
      if (!eq.is_array() || eq.size() != 2) throw ParseError("malformed equation");
      constraint.equations.emplace_back(pattern_from_json(eq[0]), pattern_from_json(eq[1]));
    }
    return mk_node(t.at("n").get<std::size_t>(), std::move(shape), std::move(constraint));
  }
  throw ParseError("unknown description form: " + j.dump());
}

}  // namespace

LanguageDescription language_from_json(const json& j) {
  LanguageDescription lang;
  lang.name = j.at("name").get<std::string>();
  for (const auto& c : j.at("types"))
    lang.tysig.ctors.push_back(
        TyCtor{c.at("ctor").get<std::string>(), c.at("arity").get<std::size_t>()});
  lang.root = desc_from_json(j.at("desc"));
  return lang;
}

json language_to_json(const LanguageDescription& lang) {
  json types = json::array();
  for (const auto& c : lang.tysig.ctors)
    types.push_back(json{{"ctor", c.name}, {"arity", c.arity}});
  return json{{"name", lang.name}, {"types", std::move(types)}, {"desc", desc_to_json(*lang.root)}};
}

LanguageDescription load_language_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open description file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return language_from_json(j);
}

}  // namespace syngen
