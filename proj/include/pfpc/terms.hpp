#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pfpc/rational.hpp"
#include "pfpc/types.hpp"

namespace pfpc {

struct TermNode;

/// Immutable handle to a PFPC term. Free variables and the value predicate
/// are computed once, at construction.
class Term {
 public:
  static Term var(std::string name);
  static Term pair(Term first, Term second);
  static Term proj(int index, Term arg);
  static Term inj(int index, Term arg, std::optional<Type> annotation = std::nullopt);
  static Term case_of(Term scrutinee, std::string left_binder, Term left_body, std::string right_binder,
                      Term right_body);
  static Term lam(std::string binder, std::optional<Type> domain, Term body);
  static Term app(Term fn, Term arg);
  static Term fold(Type annotation, Term arg);
  static Term unfold(Term arg);
  static Term choice(Rational p, Term left, Term right);

  const TermNode& node() const { return *node_; }
  const void* identity() const { return node_.get(); }

  template <class Alt>
  const Alt* as() const;

  const std::vector<std::string>& free_vars() const;
  bool has_free(const std::string& x) const;
  bool is_closed() const { return free_vars().empty(); }

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TermNode> node_;
};

namespace tm {
struct Var {
  std::string name;
};
struct Pair {
  Term first, second;
};
struct Proj {
  int index;  // 1 or 2
  Term arg;
};
// `annotation`, when present, is the whole sum type A + B. Injections in
// checking position (under fold, or, case, application argument) may omit it.
struct Inj {
  int index;  // 1 or 2
  Term arg;
  std::optional<Type> annotation;
};
struct Case {
  Term scrutinee;
  std::string left_binder;
  Term left_body;
  std::string right_binder;
  Term right_body;
};
// A missing domain is only admitted as the head of a redex `(fn x => N) M`,
// which is how `let x = M in N` is represented.
struct Lam {
  std::string binder;
  std::optional<Type> domain;
  Term body;
};
struct App {
  Term fn, arg;
};
struct Fold {
  Type annotation;  // the closed mu-type
  Term arg;
};
struct Unfold {
  Term arg;
};
struct Or {
  Rational p;
  Term left, right;
};
}  // namespace tm

struct TermNode {
  std::variant<tm::Var, tm::Pair, tm::Proj, tm::Inj, tm::Case, tm::Lam, tm::App, tm::Fold, tm::Unfold,
               tm::Or>
      shape;
  std::vector<std::string> free;  // sorted, unique
  bool value = false;
};

template <class Alt>
const Alt* Term::as() const {
  return std::get_if<Alt>(&node_->shape);
}

/// V ::= x | (V, W) | in_i V | fold V | fn x => M
inline bool is_value(const Term& m) { return m.node().value; }

/// Capture-avoiding body[v/x].
Term subst_term(const Term& body, const Term& v, const std::string& x);

/// De Bruijn rendering including all annotations; equal iff alpha-equivalent.
std::string alpha_key(const Term& m);
bool alpha_equivalent(const Term& a, const Term& b);

/// Number of AST nodes.
std::size_t term_size(const Term& m);

/// True when the term has no `unfold`. Without unfold a recursive type can
/// never release a stored function, so such terms always terminate.
bool is_recursion_free(const Term& m);

}  // namespace pfpc
