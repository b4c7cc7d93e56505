#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pfpc {

struct TypeNode;

/// Immutable handle to a PFPC type: X | A + B | A * B | A -> B | mu X. A.
/// Copies share structure.
class Type {
 public:
  static Type var(std::string name);
  static Type sum(Type left, Type right);
  static Type prod(Type left, Type right);
  static Type arrow(Type domain, Type codomain);
  static Type mu(std::string binder, Type body);

  const TypeNode& node() const { return *node_; }
  const void* identity() const { return node_.get(); }

  template <class Alt>
  const Alt* as() const;

 private:
  explicit Type(std::shared_ptr<const TypeNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TypeNode> node_;
};

namespace ty {
struct Var {
  std::string name;
};
struct Sum {
  Type left, right;
};
struct Prod {
  Type left, right;
};
struct Arrow {
  Type domain, codomain;
};
struct Mu {
  std::string binder;
  Type body;
};
}  // namespace ty

struct TypeNode {
  std::variant<ty::Var, ty::Sum, ty::Prod, ty::Arrow, ty::Mu> shape;
};

template <class Alt>
const Alt* Type::as() const {
  return std::get_if<Alt>(&node_->shape);
}

std::set<std::string> free_type_vars(const Type& a);
inline bool is_closed(const Type& a) { return free_type_vars(a).empty(); }

/// Capture-avoiding substitution a[b/X].
Type subst_type(const Type& a, const Type& b, const std::string& x);

/// Equality up to renaming of mu-binders.
bool alpha_equal(const Type& a, const Type& b);

/// mu X. A  |->  A[mu X. A / X]. Precondition: `a` is a mu-type.
Type unfold_mu(const Type& a);

/// De Bruijn rendering; equal strings iff alpha-equal.
std::string type_key(const Type& a);

// Named closed types.
Type empty_type();  // 0 = mu X. X
Type unit_type();   // 1 = 0 -> 0
Type bool_type();   // 1 + 1
Type nat_type();    // mu X. 1 + X
Type list_type(const Type& elem);    // mu X. 1 + A * X
Type stream_type(const Type& elem);  // mu X. 1 -> A * X

/// Prints with the abbreviations 0, 1, Bool, Nat where they apply.
std::string pretty(const Type& a);

}  // namespace pfpc
