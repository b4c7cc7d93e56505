#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfpc/terms.hpp"
#include "pfpc/types.hpp"

namespace pfpc {

enum class TypeErrorKind {
  UnboundVariable,
  Mismatch,
  IllFormedContext,
  NonClosedType,
  AnnotationMismatch,
};

std::string to_string(TypeErrorKind kind);

/// Names the formation rule that failed (e.g. "application"), the offending
/// subterm or type as `location`, and the expected/actual types when known.
class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, std::string rule, std::string location, std::string detail,
            std::optional<Type> expected = std::nullopt, std::optional<Type> actual = std::nullopt);

  TypeErrorKind kind() const { return kind_; }
  const std::string& rule() const { return rule_; }
  const std::string& location() const { return location_; }
  const std::optional<Type>& expected() const { return expected_; }
  const std::optional<Type>& actual() const { return actual_; }

 private:
  TypeErrorKind kind_;
  std::string rule_;
  std::string location_;
  std::optional<Type> expected_;
  std::optional<Type> actual_;
};

using TypeCtx = std::vector<std::string>;
using TermCtx = std::vector<std::pair<std::string, Type>>;

/// Theta |- A. Throws TypeError. Recursive types may use their variable in
/// any polarity.
void wf_type(const TypeCtx& theta, const Type& a);

/// The unique A with Gamma |- M : A. Throws TypeError.
Type infer(const TermCtx& gamma, const Term& m);

/// Gamma |- M : A, with `a` pushed into unannotated injections and let-bodies.
void check(const TermCtx& gamma, const Term& m, const Type& a);

/// infer in the empty context.
Type check_program(const Term& m);

/// Non-throwing convenience used by property tests.
std::optional<Type> try_check_program(const Term& m);

}  // namespace pfpc
