#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pfpc {

/// Raised when a construction would need to enumerate too many opens.
class SizeGuard : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A partial order on {0, ..., n-1}, n <= 64. Every finite poset is a dcpo and
/// its Scott opens are exactly its upper sets.
class FinitePoset {
 public:
  /// `leq[i][j]` iff i <= j. Throws std::invalid_argument unless the relation
  /// is reflexive, antisymmetric and transitive.
  FinitePoset(std::string name, std::vector<std::string> labels, const std::vector<std::vector<bool>>& leq);

  static FinitePoset chain(unsigned n);
  static FinitePoset antichain(unsigned n);
  static FinitePoset diamond();  // bottom < a, b < top
  static FinitePoset product(const FinitePoset& a, const FinitePoset& b);  // componentwise; index i*|b|+j
  static FinitePoset sum(const FinitePoset& a, const FinitePoset& b);      // disjoint; b shifted by |a|
  /// "chain:N", "antichain:N" or "diamond".
  static FinitePoset parse(std::string_view text);
  /// One representative of every isomorphism class of posets with n elements.
  static std::vector<FinitePoset> all_up_to_iso(unsigned n);

  std::size_t size() const { return labels_.size(); }
  const std::string& name() const { return name_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  bool leq(std::size_t i, std::size_t j) const { return (up_[i] >> j) & 1U; }
  std::uint64_t up(std::size_t i) const { return up_[i]; }
  std::uint64_t full() const { return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1; }
  bool is_upper(std::uint64_t mask) const;

  /// Same carrier size and the same order (labels and names are ignored).
  bool operator==(const FinitePoset& other) const { return up_ == other.up_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> up_;  // bit j of up_[i] set iff i <= j
};

using PosetRef = std::shared_ptr<const FinitePoset>;
PosetRef make_poset(FinitePoset p);

/// A Scott open of a finite poset, as a membership mask.
struct UpperSet {
  std::uint64_t members = 0;

  bool contains(std::size_t i) const { return (members >> i) & 1U; }
  auto operator<=>(const UpperSet&) const = default;
};

/// Every upper set, from the empty set to the whole carrier. |p| <= 16.
std::vector<UpperSet> scott_opens(const FinitePoset& p);

}  // namespace pfpc
