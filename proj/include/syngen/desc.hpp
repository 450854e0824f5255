#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "syngen/types.hpp"

namespace syngen {

enum class Binder { Bound, Unbound };

using BinderRow = std::vector<Binder>;  // one flag per newly bound variable
using Shape = std::vector<BinderRow>;   // one row per subterm

/// Number of `Bound` flags in a row: how many of the node's new variables are
/// in scope in the corresponding subterm.
std::size_t count_bound(const BinderRow& row);

/// Subsequence of `ts0` at the positions flagged `Bound`, order preserved.
/// Throws std::invalid_argument on length mismatch.
std::vector<Ty> visible_types(const BinderRow& row, const std::vector<Ty>& ts0);

// --- typing constraint language ------------------------------------------

struct TyPattern;

struct PCon {
  std::string ctor;
  std::vector<TyPattern> args;
};
struct PMetaB {  // type of newly bound variable i
  std::size_t index;
};
struct PMetaS {  // type of subterm j
  std::size_t index;
};
struct PMetaR {};  // type of the node itself
struct PMetaP {    // type payload stored under the named sg binder
  std::string name;
};

struct TyPattern {
  std::variant<PCon, PMetaB, PMetaS, PMetaR, PMetaP> v;
};

bool operator==(const TyPattern& a, const TyPattern& b);
inline bool operator!=(const TyPattern& a, const TyPattern& b) { return !(a == b); }

TyPattern pat_con(std::string ctor, std::vector<TyPattern> args = {});
TyPattern pat_b(std::size_t i);
TyPattern pat_s(std::size_t j);
TyPattern pat_r();
TyPattern pat_p(std::string name);
TyPattern pat_of_ty(const Ty& t);
std::string print_pattern(const TyPattern& p);

/// Conjunction of type-pattern equations; the node is well typed iff all
/// equations hold under the assignment of its metavariables.
struct Constraint {
  std::vector<std::pair<TyPattern, TyPattern>> equations;
};

// --- descriptions ---------------------------------------------------------

struct Desc;
using DescPtr = std::shared_ptr<const Desc>;

/// Finite choice of grammar productions, one continuation per tag.
struct SgTag {
  std::string label;
  std::vector<std::pair<std::string, DescPtr>> arms;  // insertion order kept
};

/// Stores one object type in the node; referable in constraints via PMetaP.
struct SgTy {
  std::string binder;
  DescPtr rest;
};

struct NodeDesc {
  std::size_t num_binders = 0;  // n
  Shape shape;                  // k rows, each of length n
  Constraint constraint;
};

struct Desc {
  std::variant<SgTag, SgTy, NodeDesc> v;
};

DescPtr mk_sg_tag(std::string label, std::vector<std::pair<std::string, DescPtr>> arms);
DescPtr mk_sg_ty(std::string binder, DescPtr rest);
DescPtr mk_node(std::size_t n, Shape shape, Constraint constraint);

struct LanguageDescription {
  std::string name;
  TySig tysig;
  DescPtr root;
};

/// One step of the choice path leading from the description root to a node:
/// either an SgTag arm name or an SgTy type payload.
struct SgChoice {
  std::variant<std::string, Ty> v;

  bool is_tag() const { return v.index() == 0; }
  const std::string& tag() const { return std::get<std::string>(v); }
  const Ty& payload() const { return std::get<Ty>(v); }
};

bool operator==(const SgChoice& a, const SgChoice& b);
inline bool operator!=(const SgChoice& a, const SgChoice& b) { return !(a == b); }

SgChoice choice_tag(std::string name);
SgChoice choice_ty(Ty t);

/// Result of walking a choice path from the root to a node.
struct PathInfo {
  const NodeDesc* node = nullptr;
  std::vector<std::pair<std::string, Ty>> payloads;  // SgTy binder -> stored type
};

/// Returns nullopt when the path does not lead to a node of the description.
std::optional<PathInfo> follow_path(const DescPtr& root, const std::vector<SgChoice>& path);

/// Empty result = valid. Each violation yields one diagnostic carrying a path
/// into the description tree.
std::vector<std::string> validate_description(const LanguageDescription& lang);

// --- JSON description format ---------------------------------------------

LanguageDescription language_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json language_to_json(const LanguageDescription& lang);
LanguageDescription load_language_file(const std::string& path);

}  // namespace syngen
