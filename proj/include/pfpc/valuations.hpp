#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfpc/law_report.hpp"
#include "pfpc/poset.hpp"
#include "pfpc/rational.hpp"

// Subprobability valuations on finite posets. On a finite poset every
// valuation is simple, so a valuation is stored as its point weights and
// the open-set view is computed from them. The M, W and P completions all
// coincide with V at this scale, so only one structure exists.
namespace pfpc {

class PosetMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A map on opens that is not a valuation; `axiom()` names the first
/// violated condition ("strictness", "monotonicity", "modularity",
/// "subprobability", "totality").
class NotAValuation : public std::invalid_argument {
 public:
  NotAValuation(std::string axiom, const std::string& detail);
  const std::string& axiom() const { return axiom_; }

 private:
  std::string axiom_;
};

class Valuation {
 public:
  /// Nonnegative weights with total at most 1.
  Valuation(PosetRef poset, std::vector<Rational> weights);
  static Valuation zero(PosetRef poset);

  const PosetRef& poset() const { return poset_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(std::size_t i) const { return weights_.at(i); }
  Rational mass() const;

  /// Same order structure and the same weights.
  bool operator==(const Valuation& other) const;

 private:
  PosetRef poset_;
  std::vector<Rational> weights_;
};

/// "1/2 d(a) + 1/4 d(b)", or "0".
std::string to_string(const Valuation& nu);

/// A monotone map into [0,1]; on finite posets monotone is Scott-continuous.
class ScottFunction {
 public:
  ScottFunction(PosetRef poset, std::vector<Rational> values);
  const PosetRef& poset() const { return poset_; }
  const Rational& operator()(std::size_t i) const { return values_.at(i); }
  const std::vector<Rational>& values() const { return values_; }

 private:
  PosetRef poset_;
  std::vector<Rational> values_;
};

/// A total, monotone map D -> V E, stored as its images.
class KleisliMap {
 public:
  /// With `verify`, monotonicity into the stochastic order is checked, which
  /// enumerates the opens of the codomain.
  KleisliMap(PosetRef domain, PosetRef codomain, std::vector<Valuation> images, bool verify = true);

  const PosetRef& domain() const { return domain_; }
  const PosetRef& codomain() const { return codomain_; }
  const Valuation& operator()(std::size_t x) const { return images_.at(x); }
  const std::vector<Valuation>& images() const { return images_; }
  bool operator==(const KleisliMap& other) const;

 private:
  PosetRef domain_;
  PosetRef codomain_;
  std::vector<Valuation> images_;
};

Rational eval_open(const Valuation& nu, UpperSet u);

/// Recovers point weights from a map defined on every open:
/// w(x) = m(up x) - m(up x \ {x}). Throws NotAValuation.
Valuation from_open_map(const PosetRef& poset, const std::map<UpperSet, Rational>& m);

/// Checks strictness, monotonicity and modularity of U |-> nu(U) over every
/// pair of opens; returns the violated axiom or an empty string.
std::string valuation_axiom_violation(const Valuation& nu);

/// The threshold formula sum_k (t_{k+1} - t_k) nu(f^-1((t_k, 1])) over the
/// sorted distinct values {0} U f(X).
Rational choquet(const ScottFunction& f, const Valuation& nu);
/// sum_x nu(x) f(x)
Rational weight_integral(const ScottFunction& f, const Valuation& nu);

Valuation unit(const PosetRef& poset, std::size_t x);
KleisliMap unit_map(const PosetRef& poset);

/// f^dagger(nu): weight of y is sum_x nu(x) f(x)(y).
Valuation kleisli_ext(const KleisliMap& f, const Valuation& nu);
/// U |-> integral of x |-> f(x)(U) d nu, evaluated by choquet on every open.
Valuation kleisli_ext_via_integrals(const KleisliMap& f, const Valuation& nu);

/// g o. f = g^dagger o f
KleisliMap kleisli_compose(const KleisliMap& g, const KleisliMap& f);

/// A simple valuation over valuations, sum r_i d(nu_i).
using ValuationMixture = std::vector<std::pair<Rational, Valuation>>;

/// sum r_i nu_i
Valuation multiply(const ValuationMixture& varpi);
/// id^dagger on the finite subposet {nu_i} of V P ordered stochastically.
Valuation multiply_via_extension(const ValuationMixture& varpi);

/// The componentwise product and disjoint sum, as shared posets.
PosetRef product_of(const PosetRef& d, const PosetRef& e);
PosetRef sum_of(const PosetRef& d, const PosetRef& e);

/// tau(x, nu) on D x E: weight of (x, y) is nu(y).
Valuation strength(const PosetRef& d, std::size_t x, const Valuation& nu);
/// U |-> integral of y |-> chi_U(x, y) d nu.
Valuation strength_via_integral(const PosetRef& d, std::size_t x, const Valuation& nu);
/// tau'(nu, y) on D x E: weight of (x, y) is nu(x).
Valuation costrength(const Valuation& nu, const PosetRef& e, std::size_t y);

/// nu (x) xi: weight of (x, y) is nu(x) xi(y).
Valuation tensor(const Valuation& nu, const Valuation& xi);
/// (x |-> tau(x, xi))^dagger(nu), the double strength taking nu first.
Valuation tensor_left_first(const Valuation& nu, const Valuation& xi);
/// (y |-> tau'(nu, y))^dagger(xi), taking xi first.
Valuation tensor_right_first(const Valuation& nu, const Valuation& xi);
/// U |-> iterated choquet integral of chi_U, on every open of D x E.
Valuation tensor_via_integrals(const Valuation& nu, const Valuation& xi);

/// V(h)(nu) for a monotone h: D -> target given as an index table.
Valuation pushforward(const Valuation& nu, const PosetRef& target, const std::vector<std::size_t>& h);

/// Both iterated integrals of chi_U over D x E, each by nested choquet calls.
std::pair<Rational, Rational> fubini_sides(const Valuation& nu, const Valuation& xi, UpperSet u);
bool check_fubini(const Valuation& nu, const Valuation& xi, UpperSet u);

/// nu1(U) <= nu2(U) on every open.
bool stochastic_leq(const Valuation& nu1, const Valuation& nu2);

// Random rational data for the law suites.
Rational random_weight(std::mt19937_64& rng);
Valuation random_valuation(const PosetRef& poset, std::mt19937_64& rng);
std::vector<std::size_t> random_monotone_map(const FinitePoset& d, const FinitePoset& e, std::mt19937_64& rng);
/// f(x) = s d(phi(x)) + sum_{z <= x} c_z with phi monotone; monotone by construction.
KleisliMap random_kleisli_map(const PosetRef& d, const PosetRef& e, std::mt19937_64& rng);
ValuationMixture random_mixture(const PosetRef& poset, std::mt19937_64& rng);

/// Unit, associativity, extension/integral agreement, multiplication, strength
/// and commutativity laws on `cases` random instances over `poset` (|poset| <= 6).
LawReport law_suite(const PosetRef& poset, std::uint64_t seed, unsigned cases);

/// Both sides of the Fubini equation on every open of P x Q, for every pair of
/// posets of size <= max_size up to isomorphism; `pairs` random valuation
/// pairs per poset pair (and `same_pairs` for P x P).
LawReport fubini_suite(unsigned max_size, unsigned same_pairs, unsigned pairs, std::uint64_t seed);

}  // namespace pfpc
