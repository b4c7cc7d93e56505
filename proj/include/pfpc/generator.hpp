#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pfpc/terms.hpp"
#include "pfpc/typecheck.hpp"

namespace pfpc {

struct GeneratorConfig {
  int max_size = 40;         // rough node budget per term
  int max_depth = 8;         // nesting cap for elimination forms
  bool allow_recursion = false;  // when false, never emits `unfold`
};

/// Type-directed generator of well-typed terms. Every produced term checks
/// against the requested type by construction; injections are always
/// annotated so that the term also infers.
class TermGenerator {
 public:
  TermGenerator(std::uint64_t seed, GeneratorConfig config = {});

  /// A closed, inhabited type from a fixed pool (units, Booleans, naturals,
  /// products and first/second-order functions between them).
  Type random_type();
  Term closed_term(const Type& a);
  Term term(const TermCtx& gamma, const Type& a);
  /// A closed program of some pool type.
  std::pair<Term, Type> closed_program();

  std::mt19937_64& rng() { return rng_; }

 private:
  Term gen(TermCtx& gamma, const Type& a, int budget, int depth);
  std::optional<Term> minimal(TermCtx& gamma, const Type& a, int guard);
  std::optional<Term> pick_var(const TermCtx& gamma, const Type& a);
  Term intro(TermCtx& gamma, const Type& a, int budget, int depth);
  Term with_bound(TermCtx& gamma, const std::string& x, const Type& a, const Type& b, int budget, int depth);
  std::string fresh();
  Rational random_probability();
  int uniform(int lo, int hi);

  std::mt19937_64 rng_;
  GeneratorConfig config_;
  std::vector<Type> pool_;
  std::vector<Type> small_pool_;
  unsigned counter_ = 0;
};

}  // namespace pfpc
