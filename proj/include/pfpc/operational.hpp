#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pfpc/rational.hpp"
#include "pfpc/terms.hpp"

namespace pfpc {

/// Raised when a closed non-value has no redex in evaluation position, which
/// cannot happen for well-typed terms.
class StuckTerm : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// One layer of a call-by-value evaluation context; the hole is the operand
// that is not stored.
namespace frame {
struct PairLeft {
  Term right;
};
struct PairRight {
  Term left;  // a value
};
struct Proj {
  int index;
};
struct AppLeft {
  Term arg;
};
struct AppRight {
  Term fn;  // a value
};
struct Inj {
  int index;
  std::optional<Type> annotation;
};
struct Case {
  std::string left_binder;
  Term left_body;
  std::string right_binder;
  Term right_body;
};
struct Fold {
  Type annotation;
};
struct Unfold {};
}  // namespace frame

using Frame = std::variant<frame::PairLeft, frame::PairRight, frame::Proj, frame::AppLeft, frame::AppRight,
                           frame::Inj, frame::Case, frame::Fold, frame::Unfold>;

/// Outermost frame first.
using EvalContext = std::vector<Frame>;

struct Decomposition {
  EvalContext context;
  Term redex;
};

/// M = E[R] with R a redex, or nullopt when M is a value. Throws StuckTerm.
std::optional<Decomposition> decompose(const Term& m);

/// E[M]
Term plug(const EvalContext& context, const Term& m);

enum class RedexKind { Projection, Case, Unfold, Beta, Choice };
std::string to_string(RedexKind kind);

struct Successor {
  Rational probability;
  Term term;
};

/// All one-step reducts of a non-value. Branch probabilities are positive and
/// sum to 1; degenerate choices or[0]/or[1] give a single branch.
struct WeightedSuccessors {
  RedexKind rule;
  std::vector<Successor> branches;
};

/// Throws std::invalid_argument on values and StuckTerm on stuck terms.
WeightedSuccessors step(const Term& m);

}  // namespace pfpc
