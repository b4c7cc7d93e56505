#include "pfpc/poset.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

namespace pfpc {

FinitePoset::FinitePoset(std::string name, std::vector<std::string> labels, const std::vector<std::vector<bool>>& leq)
    : name_(std::move(name)), labels_(std::move(labels)) {
  std::size_t n = labels_.size();
  if (n > 64) throw std::invalid_argument("posets are limited to 64 elements");
  if (leq.size() != n) throw std::invalid_argument("order matrix does not match the carrier");
  up_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (leq[i].size() != n) throw std::invalid_argument("order matrix does not match the carrier");
    for (std::size_t j = 0; j < n; ++j)
      if (leq[i][j]) up_[i] |= std::uint64_t{1} << j;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!this->leq(i, i)) throw std::invalid_argument("order is not reflexive at " + labels_[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && this->leq(i, j) && this->leq(j, i))
        throw std::invalid_argument("order is not antisymmetric at " + labels_[i] + ", " + labels_[j]);
      if (this->leq(i, j) && (up_[j] & ~up_[i]) != 0)
        throw std::invalid_argument("order is not transitive through " + labels_[j]);
    }
  }
}

namespace {

std::vector<std::string> numbered(const std::string& stem, unsigned n) {
  std::vector<std::string> out;
  for (unsigned i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

std::vector<std::vector<bool>> matrix(std::size_t n, bool diagonal_only) {
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = diagonal_only ? i == j : i <= j;
  return m;
}

unsigned parse_count(std::string_view text) {
  unsigned n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size() || n == 0)
    throw std::invalid_argument("bad poset size '" + std::string(text) + "'");
  return n;
}

}  // namespace

FinitePoset FinitePoset::chain(unsigned n) {
  return FinitePoset("chain:" + std::to_string(n), numbered("c", n), matrix(n, false));
}

FinitePoset FinitePoset::antichain(unsigned n) {
  return FinitePoset("antichain:" + std::to_string(n), numbered("a", n), matrix(n, true));
}

FinitePoset FinitePoset::diamond() {
  std::vector<std::vector<bool>> m(4, std::vector<bool>(4, false));
  for (int i = 0; i < 4; ++i) m[i][i] = true;
  for (int j = 1; j < 4; ++j) m[0][j] = true;
  m[1][3] = m[2][3] = true;
  return FinitePoset("diamond", {"bot", "l", "r", "top"}, m);
}

FinitePoset FinitePoset::product(const FinitePoset& a, const FinitePoset& b) {
  std::size_t n = a.size() * b.size();
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
      for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t l = 0; l < b.size(); ++l)
          m[i * b.size() + j][k * b.size() + l] = a.leq(i, k) && b.leq(j, l);
    }
  return FinitePoset(a.name() + "*" + b.name(), std::move(labels), m);
}

FinitePoset FinitePoset::sum(const FinitePoset& a, const FinitePoset& b) {
  std::size_t n = a.size() + b.size();
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < a.size(); ++i) {
    labels.push_back("in1 " + a.label(i));
    for (std::size_t k = 0; k < a.size(); ++k) m[i][k] = a.leq(i, k);
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    labels.push_back("in2 " + b.label(j));
    for (std::size_t l = 0; l < b.size(); ++l) m[a.size() + j][a.size() + l] = b.leq(j, l);
  }
  return FinitePoset(a.name() + "+" + b.name(), std::move(labels), m);
}

FinitePoset FinitePoset::parse(std::string_view text) {
  if (text == "diamond") return diamond();
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    std::string_view kind = text.substr(0, colon);
    unsigned n = parse_count(text.substr(colon + 1));
    if (n > 64) throw std::invalid_argument("posets are limited to 64 elements");
    if (kind == "chain") return chain(n);
    if (kind == "antichain") return antichain(n);
  }
  throw std::invalid_argument("unknown poset '" + std::string(text) + "' (expected chain:N, antichain:N or diamond)");
}

std::vector<FinitePoset> FinitePoset::all_up_to_iso(unsigned n) {
  if (n > 5) throw SizeGuard("poset enumeration is limited to 5 elements");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);

  std::set<std::vector<std::uint64_t>> seen;
  std::vector<FinitePoset> out;
  std::vector<std::size_t> perm(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
    std::vector<std::vector<bool>> m = matrix(n, true);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((bits >> k) & 1U) m[pairs[k].first][pairs[k].second] = true;
    // Reject non-orders cheaply before constructing.
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && m[i][j] && m[j][i]) ok = false;
        for (std::size_t k = 0; k < n && ok; ++k)
          if (m[i][j] && m[j][k] && !m[i][k]) ok = false;
      }
    if (!ok) continue;

    // Canonical form: lexicographically least relation over all relabelings.
    std::vector<std::uint64_t> best;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::uint64_t> rows(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (m[i][j]) rows[perm[i]] |= std::uint64_t{1} << perm[j];
      if (best.empty() || rows < best) best = rows;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!seen.insert(best).second) continue;

    std::vector<std::vector<bool>> canonical(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) canonical[i][j] = (best[i] >> j) & 1U;
    out.emplace_back("poset" + std::to_string(n) + "#" + std::to_string(out.size()), numbered("p", n), canonical);
  }
  return out;
}

bool FinitePoset::is_upper(std::uint64_t mask) const {
  if ((mask & ~full()) != 0) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (((mask >> i) & 1U) && (up_[i] & ~mask) != 0) return false;
  return true;
}

PosetRef make_poset(FinitePoset p) { return std::make_shared<const FinitePoset>(std::move(p)); }

std::vector<UpperSet> scott_opens(const FinitePoset& p) {
  if (p.size() > 16) throw SizeGuard("open enumeration is limited to posets of at most 16 elements");
  std::vector<UpperSet> out;
  for (std::uint64_t mask = 0; mask <= p.full(); ++mask)
    if (p.is_upper(mask)) out.push_back({mask});
  return out;
}

}  // namespace pfpc
