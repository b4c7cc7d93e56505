#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pfpc/distribution.hpp"
#include "pfpc/operational.hpp"
#include "pfpc/rational.hpp"
#include "pfpc/terms.hpp"

// A definitional interpreter: a term denotes a finite subprobability
// distribution over semantic values. Recursion is approximated by a budget
// of beta steps; running out loses the mass of that path.
namespace pfpc {

struct SemValueNode;

class SemValue;
using Env = std::map<std::string, SemValue>;

class SemValue {
 public:
  static SemValue unit();
  static SemValue pair(SemValue first, SemValue second);
  static SemValue inj(int index, SemValue arg, std::optional<Type> annotation = std::nullopt);
  static SemValue fold(Type annotation, SemValue arg);
  /// The captured environment is cut down to the free variables of the lambda.
  static SemValue closure(const Env& env, std::string binder, std::optional<Type> domain, Term body);

  const SemValueNode& node() const { return *node_; }
  template <class Alt>
  const Alt* as() const;

  /// Canonical text; equal keys mean equal values. Closures compare by the
  /// alpha class of their readback.
  const std::string& key() const;
  bool operator==(const SemValue& other) const { return key() == other.key(); }

 private:
  explicit SemValue(std::shared_ptr<const SemValueNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const SemValueNode> node_;
};

namespace sem {
struct Unit {};
struct Pair {
  SemValue first, second;
};
// The annotation only matters for readback; keys ignore it.
struct Inj {
  int index;  // 1 or 2
  SemValue arg;
  std::optional<Type> annotation;
};
struct Fold {
  Type annotation;
  SemValue arg;
};
struct Closure {
  Env env;
  std::string binder;
  std::optional<Type> domain;
  Term body;
};
}  // namespace sem

struct SemValueNode {
  std::variant<sem::Unit, sem::Pair, sem::Inj, sem::Fold, sem::Closure> shape;
  std::string key;
};

template <class Alt>
const Alt* SemValue::as() const {
  return std::get_if<Alt>(&node_->shape);
}

/// The closed syntactic value a semantic value stands for.
Term readback(const SemValue& v);

struct SemMass {
  SemValue value;
  Rational probability;
};

/// Weights are positive and sum to at most 1.
struct SemDist {
  std::map<std::string, SemMass> entries;  // keyed by SemValue::key

  Rational mass() const;
  Rational at(const std::string& key) const;  // 0 when absent
  void add(const SemValue& v, const Rational& p);
  bool operator==(const SemDist& other) const;
};

/// "1/3 tt + 2/3 ff" style rendering through readback.
std::string to_string(const SemDist& d);

/// Remaining beta steps along one evaluation path.
struct Fuel {
  std::uint64_t steps = 0;
};

/// Raised on terms the interpreter cannot give meaning to (ill-typed input).
class DenotationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every path spends its own copy of the budget, one unit per beta. A path
/// that reaches a beta with nothing left contributes no mass.
SemDist denote(const Env& env, const Term& m, Fuel fuel);
SemDist denote(const Term& closed, Fuel fuel);

/// The point a closed value denotes; throws std::invalid_argument otherwise.
SemValue denote_value(const Term& v);

/// d1(v) <= d2(v) for every v.
bool pointwise_leq(const SemDist& d1, const SemDist& d2);
/// max_v |d1(v) - d2(v)| over the union of supports.
Rational max_pointwise_gap(const SemDist& d1, const SemDist& d2);

/// explore's value masses carried along denote_value.
SemDist operational_dist(const DistReport& report);

struct SoundnessReport {
  RedexKind rule;
  SemDist lhs;  // denote(m, fuel)
  SemDist rhs;  // sum p denote(m', fuel - cost), cost 1 for beta and 0 otherwise
  bool equal = false;
};
/// m closed, well-typed and not a value.
SoundnessReport soundness_check(const Term& m, Fuel fuel);

struct AdequacyReport {
  SemDist denotational;
  SemDist operational;
  Rational max_pointwise_gap;
  Rational mass_gap;
  Rational live_mass;
  bool exact_mode = false;  // recursion-free: equality demanded
  bool denotational_monotone = true;
  bool operational_monotone = true;
  bool pass = false;
};
/// Recursion-free terms must agree exactly with no live mass left. Otherwise
/// the pointwise gap over the union of supports and the total-mass gap must
/// both be <= tol, and the approximants at a quarter, half and the full
/// budget must grow pointwise on both sides.
AdequacyReport adequacy_check(const Term& m, Fuel fuel, unsigned steps, const Rational& tol,
                              const ExploreOptions& options = {});

struct LetCommutativityReport {
  Term first;   // let x1 = m1 in let x2 = m2 in n
  Term second;  // let x2 = m2 in let x1 = m1 in n
  SemDist first_dist;
  SemDist second_dist;
  bool equal = false;
};
/// m1 and m2 closed; n may mention x1 and x2.
LetCommutativityReport let_commutativity_check(const Term& m1, const Term& m2, const std::string& x1,
                                               const std::string& x2, const Term& n, Fuel fuel);

}  // namespace pfpc
