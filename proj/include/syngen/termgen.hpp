#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "syngen/typecheck.hpp"

namespace syngen {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_depth = 6;
  std::size_t max_ctx = 4;
  std::size_t ty_depth = 2;  // bound on sampled ground types
  std::size_t count = 100;
};

/// Deterministic top-down generator of well-typed terms of a given type in a
/// given context. Backtracks on dead branches; next() returns nullopt when no
/// term can be found within the configured bounds (Exhausted).
class TypedTermGen {
 public:
  TypedTermGen(const LanguageDescription& lang, Ctx ctx, Ty ty, GenConfig cfg);
  ~TypedTermGen();

  std::optional<TypedTerm> next();

  /// Samples a ground type from the generator's pool.
  Ty random_ty();

 private:
  struct Prod;
  TmPtr generate(const Ctx& ctx, const Ty& t, std::size_t depth);

  const LanguageDescription& lang_;
  Ctx ctx_;
  Ty ty_;
  GenConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<Ty> pool_;
  std::vector<Prod> prods_;
  std::size_t fuel_ = 0;  // caps backtracking work per next() call
  std::map<std::string, std::size_t> fail_memo_;  // (type, ctx) -> max failed depth
};

/// All closed well-typed terms with at most max_nodes nodes, paired with
/// their (depth <= 2) result types, in a fixed deterministic order.
std::vector<std::pair<Ty, TypedTerm>> enum_closed(const LanguageDescription& lang,
                                                  std::size_t max_nodes);

/// Exhaustive enumeration in an arbitrary context (the engine behind
/// enum_closed).
std::vector<TmPtr> enum_terms(const LanguageDescription& lang, const Ctx& ctx, const Ty& t,
                              std::size_t max_nodes);

}  // namespace syngen
