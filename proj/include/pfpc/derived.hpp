#pragma once

#include <string>

#include "pfpc/terms.hpp"

/// Closed terms that the language defines by abbreviation: the unit value,
/// Booleans, naturals, `let`, and the call-by-value fixpoint operator.
namespace pfpc::derived {

Term unit_value();  // fn x : 0 => x
Term ff();          // inl () : Bool
Term tt();          // inr () : Bool
Term zero();        // fold[Nat] (inl ())
Term succ();        // fn n : Nat => fold[Nat] (inr n)
Term numeral(unsigned n);

/// `let x = bound in body`, i.e. (fn x => body) bound with the binder type
/// left to the checker.
Term let(std::string x, Term bound, Term body);

/// fix_{A->B} : ((A -> B) -> A -> B) -> A -> B by self-application through
/// T = mu X. X -> A -> B:
///   fn f => (fn x : T => f (fn a : A => unfold x x a))
///           (fold[T] (fn x : T => f (fn a : A => unfold x x a)))
Term fix(const Type& domain, const Type& codomain);
Type fix_carrier(const Type& domain, const Type& codomain);

/// If `m` is `fix_{A->B}` (up to alpha), returns (A, B).
std::optional<std::pair<Type, Type>> match_fix(const Term& m);

/// coins : 1 -> 1, tossing a fair coin until it shows ff.
Term coins();
/// Counts fair tosses up to and including the first ff; geometric(zero) : Nat.
Term geometric_counter();
/// The diverging program of type 1, through mu X. X -> 1.
Term omega();

}  // namespace pfpc::derived
