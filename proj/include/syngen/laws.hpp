#pragma once

#include "syngen/subst.hpp"
#include "syngen/termgen.hpp"

namespace syngen {

struct LawResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_counterexample;

  bool passed() const { return failures == 0; }
};

/// Runs the renaming/substitution algebra on generated well-typed terms:
/// ren-refl, sub-refl, the four fusion laws, and type preservation of every
/// ren/sub output. Deterministic for a fixed seed.
std::vector<LawResult> run_subst_laws(const LanguageDescription& lang, std::uint64_t seed,
                                      std::size_t count, std::size_t depth,
                                      std::size_t max_ctx);

/// Exhaustive action-level category laws for embeddings and variable-entry
/// substitutions over all contexts of size <= max_ctx built from ground
/// types of depth <= ty_depth.
std::vector<LawResult> run_category_laws(const LanguageDescription& lang,
                                         std::size_t max_ctx, std::size_t ty_depth);

std::string render_law_results(const std::vector<LawResult>& results);
bool all_passed(const std::vector<LawResult>& results);

}  // namespace syngen
