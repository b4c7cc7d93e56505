#include "pfpc/valuations.hpp"

#include <algorithm>
#include <numeric>

namespace pfpc {

namespace {

void require_same(const PosetRef& a, const PosetRef& b, const char* where) {
  if (a.get() == b.get()) return;
  if (!(*a == *b)) throw PosetMismatch(std::string(where) + ": valuations live on different posets");
}

}  // namespace

NotAValuation::NotAValuation(std::string axiom, const std::string& detail)
    : std::invalid_argument("not a valuation (" + axiom + "): " + detail), axiom_(std::move(axiom)) {}

Valuation::Valuation(PosetRef poset, std::vector<Rational> weights)
    : poset_(std::move(poset)), weights_(std::move(weights)) {
  if (weights_.size() != poset_->size()) throw std::invalid_argument("one weight per poset element is required");
  Rational total = 0;
  for (const Rational& w : weights_) {
    if (w < 0) throw std::invalid_argument("negative weight " + to_string(w));
    total += w;
  }
  if (total > 1) throw std::invalid_argument("total mass " + to_string(total) + " exceeds 1");
}

Valuation Valuation::zero(PosetRef poset) {
  std::size_t n = poset->size();
  return Valuation(std::move(poset), std::vector<Rational>(n, Rational(0)));
}

Rational Valuation::mass() const {
  Rational total = 0;
  for (const Rational& w : weights_) total += w;
  return total;
}

bool Valuation::operator==(const Valuation& other) const {
  if (poset_.get() != other.poset_.get() && !(*poset_ == *other.poset_)) return false;
  return weights_ == other.weights_;
}

std::string to_string(const Valuation& nu) {
  std::string out;
  for (std::size_t i = 0; i < nu.weights().size(); ++i) {
    if (nu.weight(i) == 0) continue;
    if (!out.empty()) out += " + ";
    out += to_string(nu.weight(i)) + " d(" + nu.poset()->label(i) + ")";
  }
  return out.empty() ? "0" : out;
}

ScottFunction::ScottFunction(PosetRef poset, std::vector<Rational> values)
    : poset_(std::move(poset)), values_(std::move(values)) {
  if (values_.size() != poset_->size()) throw std::invalid_argument("one value per poset element is required");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!is_probability(values_[i])) throw std::invalid_argument("Scott function value outside [0,1]");
    for (std::size_t j = 0; j < values_.size(); ++j)
      if (poset_->leq(i, j) && values_[i] > values_[j])
        throw std::invalid_argument("function is not monotone: f(" + poset_->label(i) + ") > f(" +
                                    poset_->label(j) + ")");
  }
}

KleisliMap::KleisliMap(PosetRef domain, PosetRef codomain, std::vector<Valuation> images, bool verify)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_->size()) throw std::invalid_argument("a Kleisli map needs one image per element");
  for (const Valuation& v : images_) require_same(v.poset(), codomain_, "Kleisli map");
  if (!verify) return;
  for (std::size_t x = 0; x < images_.size(); ++x)
    for (std::size_t y = 0; y < images_.size(); ++y)
      if (x != y && domain_->leq(x, y) && !stochastic_leq(images_[x], images_[y]))
        throw std::invalid_argument("Kleisli map is not monotone between " + domain_->label(x) + " and " +
                                    domain_->label(y));
}

bool KleisliMap::operator==(const KleisliMap& other) const {
  return *domain_ == *other.domain_ && *codomain_ == *other.codomain_ && images_ == other.images_;
}

Rational eval_open(const Valuation& nu, UpperSet u) {
  if (!nu.poset()->is_upper(u.members)) throw std::invalid_argument("eval_open: not an upper set of the poset");
  Rational total = 0;
  for (std::size_t i = 0; i < nu.weights().size(); ++i)
    if (u.contains(i)) total += nu.weight(i);
  return total;
}

namespace {

// Pairwise search for the axiom a non-reproducing open map breaks.
std::string diagnose(const std::vector<UpperSet>& opens, const std::map<UpperSet, Rational>& m) {
  for (const UpperSet& u : opens)
    for (const UpperSet& v : opens)
      if ((u.members & ~v.members) == 0 && m.at(u) > m.at(v)) return "monotonicity";
  for (const UpperSet& u : opens)
    for (const UpperSet& v : opens) {
      Rational lhs = m.at(u) + m.at(v);
      Rational rhs = m.at({u.members | v.members}) + m.at({u.members & v.members});
      if (lhs != rhs) return "modularity";
    }
  return "modularity";
}

}  // namespace

Valuation from_open_map(const PosetRef& poset, const std::map<UpperSet, Rational>& m) {
  std::vector<UpperSet> opens = scott_opens(*poset);
  for (const UpperSet& u : opens)
    if (!m.contains(u)) throw NotAValuation("totality", "no value for an open set");
  if (m.at(UpperSet{0}) != 0) throw NotAValuation("strictness", "the empty set has measure " + to_string(m.at({0})));

  std::vector<Rational> w(poset->size());
  for (std::size_t x = 0; x < poset->size(); ++x) {
    std::uint64_t up = poset->up(x);
    std::uint64_t above = up & ~(std::uint64_t{1} << x);
    w[x] = m.at({up}) - m.at({above});
    if (w[x] < 0)
      throw NotAValuation("monotonicity", "the open above " + poset->label(x) + " loses mass when " +
                                              poset->label(x) + " is added");
  }
  for (const UpperSet& u : opens) {
    Rational total = 0;
    for (std::size_t x = 0; x < poset->size(); ++x)
      if (u.contains(x)) total += w[x];
    if (total != m.at(u)) {
      std::string axiom = opens.size() <= 64 ? diagnose(opens, m) : "modularity";
      throw NotAValuation(axiom, "the map is not determined by its point weights");
    }
  }
  if (m.at({poset->full()}) > 1)
    throw NotAValuation("subprobability", "total mass " + to_string(m.at({poset->full()})) + " exceeds 1");
  return Valuation(poset, std::move(w));
}

std::string valuation_axiom_violation(const Valuation& nu) {
  std::vector<UpperSet> opens = scott_opens(*nu.poset());
  std::map<UpperSet, Rational> m;
  for (const UpperSet& u : opens) m[u] = eval_open(nu, u);
  if (m.at({0}) != 0) return "strictness";
  for (const UpperSet& u : opens)
    for (const UpperSet& v : opens) {
      if ((u.members & ~v.members) == 0 && m.at(u) > m.at(v)) return "monotonicity";
      if (m.at(u) + m.at(v) != m.at({u.members | v.members}) + m.at({u.members & v.members})) return "modularity";
    }
  if (m.at({nu.poset()->full()}) > 1) return "subprobability";
  return "";
}

Rational choquet(const ScottFunction& f, const Valuation& nu) {
  require_same(f.poset(), nu.poset(), "choquet");
  std::vector<Rational> ts = f.values();
  ts.push_back(Rational(0));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  Rational total = 0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    std::uint64_t above = 0;
    for (std::size_t x = 0; x < f.values().size(); ++x)
      if (f(x) > ts[k]) above |= std::uint64_t{1} << x;
    total += (ts[k + 1] - ts[k]) * eval_open(nu, {above});
  }
  return total;
}

Rational weight_integral(const ScottFunction& f, const Valuation& nu) {
  require_same(f.poset(), nu.poset(), "weight_integral");
  Rational total = 0;
  for (std::size_t x = 0; x < nu.weights().size(); ++x) total += nu.weight(x) * f(x);
  return total;
}

Valuation unit(const PosetRef& poset, std::size_t x) {
  std::vector<Rational> w(poset->size(), Rational(0));
  w.at(x) = 1;
  return Valuation(poset, std::move(w));
}

KleisliMap unit_map(const PosetRef& poset) {
  std::vector<Valuation> images;
  for (std::size_t x = 0; x < poset->size(); ++x) images.push_back(unit(poset, x));
  return KleisliMap(poset, poset, std::move(images), false);
}

Valuation kleisli_ext(const KleisliMap& f, const Valuation& nu) {
  require_same(f.domain(), nu.poset(), "kleisli_ext");
  std::vector<Rational> w(f.codomain()->size(), Rational(0));
  for (std::size_t x = 0; x < nu.weights().size(); ++x) {
    if (nu.weight(x) == 0) continue;
    for (std::size_t y = 0; y < w.size(); ++y) w[y] += nu.weight(x) * f(x).weight(y);
  }
  return Valuation(f.codomain(), std::move(w));
}

Valuation kleisli_ext_via_integrals(const KleisliMap& f, const Valuation& nu) {
  require_same(f.domain(), nu.poset(), "kleisli_ext_via_integrals");
  std::map<UpperSet, Rational> m;
  for (const UpperSet& u : scott_opens(*f.codomain())) {
    std::vector<Rational> g;
    for (std::size_t x = 0; x < f.domain()->size(); ++x) g.push_back(eval_open(f(x), u));
    m[u] = choquet(ScottFunction(f.domain(), std::move(g)), nu);
  }
  return from_open_map(f.codomain(), m);
}

KleisliMap kleisli_compose(const KleisliMap& g, const KleisliMap& f) {
  require_same(f.codomain(), g.domain(), "kleisli_compose");
  std::vector<Valuation> images;
  for (std::size_t x = 0; x < f.domain()->size(); ++x) images.push_back(kleisli_ext(g, f(x)));
  return KleisliMap(f.domain(), g.codomain(), std::move(images), false);
}

Valuation multiply(const ValuationMixture& varpi) {
  if (varpi.empty()) throw std::invalid_argument("multiply needs at least one component");
  const PosetRef& p = varpi.front().second.poset();
  std::vector<Rational> w(p->size(), Rational(0));
  Rational total = 0;
  for (const auto& [r, nu] : varpi) {
    require_same(p, nu.poset(), "multiply");
    if (r < 0) throw std::invalid_argument("negative mixture coefficient");
    total += r;
    for (std::size_t x = 0; x < w.size(); ++x) w[x] += r * nu.weight(x);
  }
  if (total > 1) throw std::invalid_argument("mixture coefficients sum above 1");
  return Valuation(p, std::move(w));
}

Valuation multiply_via_extension(const ValuationMixture& varpi) {
  if (varpi.empty()) throw std::invalid_argument("multiply needs at least one component");
  const PosetRef& p = varpi.front().second.poset();
  // The support as a finite poset under the stochastic order.
  std::vector<Valuation> points;
  std::vector<Rational> coefficients;
  for (const auto& [r, nu] : varpi) {
    auto it = std::find(points.begin(), points.end(), nu);
    if (it == points.end()) {
      points.push_back(nu);
      coefficients.push_back(r);
    } else {
      coefficients[static_cast<std::size_t>(it - points.begin())] += r;
    }
  }
  std::size_t n = points.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("nu" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = stochastic_leq(points[i], points[j]);
  }
  PosetRef q = make_poset(FinitePoset("support", labels, leq));
  KleisliMap id(q, p, points, true);
  return kleisli_ext(id, Valuation(q, coefficients));
}

PosetRef product_of(const PosetRef& d, const PosetRef& e) { return make_poset(FinitePoset::product(*d, *e)); }
PosetRef sum_of(const PosetRef& d, const PosetRef& e) { return make_poset(FinitePoset::sum(*d, *e)); }

Valuation strength(const PosetRef& d, std::size_t x, const Valuation& nu) {
  PosetRef prod = product_of(d, nu.poset());
  std::size_t m = nu.poset()->size();
  std::vector<Rational> w(prod->size(), Rational(0));
  for (std::size_t y = 0; y < m; ++y) w[x * m + y] = nu.weight(y);
  return Valuation(prod, std::move(w));
}

Valuation strength_via_integral(const PosetRef& d, std::size_t x, const Valuation& nu) {
  PosetRef prod = product_of(d, nu.poset());
  std::size_t m = nu.poset()->size();
  std::map<UpperSet, Rational> out;
  for (const UpperSet& u : scott_opens(*prod)) {
    std::vector<Rational> chi;
    for (std::size_t y = 0; y < m; ++y) chi.push_back(Rational(u.contains(x * m + y) ? 1 : 0));
    out[u] = choquet(ScottFunction(nu.poset(), std::move(chi)), nu);
  }
  return from_open_map(prod, out);
}

Valuation costrength(const Valuation& nu, const PosetRef& e, std::size_t y) {
  PosetRef prod = product_of(nu.poset(), e);
  std::size_t m = e->size();
  std::vector<Rational> w(prod->size(), Rational(0));
  for (std::size_t x = 0; x < nu.poset()->size(); ++x) w[x * m + y] = nu.weight(x);
  return Valuation(prod, std::move(w));
}

Valuation tensor(const Valuation& nu, const Valuation& xi) {
  PosetRef prod = product_of(nu.poset(), xi.poset());
  std::size_t m = xi.poset()->size();
  std::vector<Rational> w(prod->size(), Rational(0));
  for (std::size_t x = 0; x < nu.poset()->size(); ++x)
    for (std::size_t y = 0; y < m; ++y) w[x * m + y] = nu.weight(x) * xi.weight(y);
  return Valuation(prod, std::move(w));
}

Valuation tensor_left_first(const Valuation& nu, const Valuation& xi) {
  PosetRef prod = product_of(nu.poset(), xi.poset());
  std::vector<Valuation> images;
  for (std::size_t x = 0; x < nu.poset()->size(); ++x) images.push_back(strength(nu.poset(), x, xi));
  return kleisli_ext(KleisliMap(nu.poset(), prod, std::move(images), false), nu);
}

Valuation tensor_right_first(const Valuation& nu, const Valuation& xi) {
  PosetRef prod = product_of(nu.poset(), xi.poset());
  std::vector<Valuation> images;
  for (std::size_t y = 0; y < xi.poset()->size(); ++y) images.push_back(costrength(nu, xi.poset(), y));
  return kleisli_ext(KleisliMap(xi.poset(), prod, std::move(images), false), xi);
}

Valuation tensor_via_integrals(const Valuation& nu, const Valuation& xi) {
  PosetRef prod = product_of(nu.poset(), xi.poset());
  std::map<UpperSet, Rational> m;
  for (const UpperSet& u : scott_opens(*prod)) m[u] = fubini_sides(nu, xi, u).first;
  return from_open_map(prod, m);
}

Valuation pushforward(const Valuation& nu, const PosetRef& target, const std::vector<std::size_t>& h) {
  const FinitePoset& d = *nu.poset();
  if (h.size() != d.size()) throw std::invalid_argument("pushforward: map has the wrong arity");
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (h[x] >= target->size()) throw std::invalid_argument("pushforward: image out of range");
    for (std::size_t y = 0; y < d.size(); ++y)
      if (d.leq(x, y) && !target->leq(h[x], h[y])) throw std::invalid_argument("pushforward: map is not monotone");
  }
  std::vector<Rational> w(target->size(), Rational(0));
  for (std::size_t x = 0; x < d.size(); ++x) w[h[x]] += nu.weight(x);
  return Valuation(target, std::move(w));
}

std::pair<Rational, Rational> fubini_sides(const Valuation& nu, const Valuation& xi, UpperSet u) {
  const PosetRef& d = nu.poset();
  const PosetRef& e = xi.poset();
  std::size_t n = d->size();
  std::size_t m = e->size();
  if (n * m > 64) throw SizeGuard("product too large");
  {
    FinitePoset prod = FinitePoset::product(*d, *e);
    if (!prod.is_upper(u.members)) throw std::invalid_argument("check_fubini: not an upper set of the product");
  }
  auto chi = [&](std::size_t x, std::size_t y) { return Rational(u.contains(x * m + y) ? 1 : 0); };

  // x outside, y inside.
  std::vector<Rational> inner_y;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Rational> section;
    for (std::size_t y = 0; y < m; ++y) section.push_back(chi(x, y));
    inner_y.push_back(choquet(ScottFunction(e, std::move(section)), xi));
  }
  Rational left = choquet(ScottFunction(d, std::move(inner_y)), nu);

  // y outside, x inside.
  std::vector<Rational> inner_x;
  for (std::size_t y = 0; y < m; ++y) {
    std::vector<Rational> section;
    for (std::size_t x = 0; x < n; ++x) section.push_back(chi(x, y));
    inner_x.push_back(choquet(ScottFunction(d, std::move(section)), nu));
  }
  Rational right = choquet(ScottFunction(e, std::move(inner_x)), xi);
  return {left, right};
}

bool check_fubini(const Valuation& nu, const Valuation& xi, UpperSet u) {
  auto [left, right] = fubini_sides(nu, xi, u);
  return left == right;
}

bool stochastic_leq(const Valuation& nu1, const Valuation& nu2) {
  require_same(nu1.poset(), nu2.poset(), "stochastic_leq");
  for (const UpperSet& u : scott_opens(*nu1.poset()))
    if (eval_open(nu1, u) > eval_open(nu2, u)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// random data

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// A random probability vector of length n with small denominators.
std::vector<Rational> random_simplex(std::size_t n, std::mt19937_64& rng) {
  std::vector<unsigned> raw(n);
  unsigned sum = 0;
  for (unsigned& r : raw) {
    r = static_cast<unsigned>(pick(rng, 7));
    sum += r;
  }
  if (sum == 0) {
    raw[pick(rng, n)] = 1;
    sum = 1;
  }
  std::vector<Rational> out;
  for (unsigned r : raw) out.push_back(Rational(r, sum));
  for (Rational& q : out) q.canonicalize();
  return out;
}

}  // namespace

Rational random_weight(std::mt19937_64& rng) {
  static const unsigned dens[] = {1, 2, 3, 4, 5, 6, 8, 12};
  unsigned den = dens[pick(rng, 8)];
  Rational r(static_cast<unsigned>(pick(rng, den + 1)), den);
  r.canonicalize();
  return r;
}

Valuation random_valuation(const PosetRef& poset, std::mt19937_64& rng) {
  std::size_t n = poset->size();
  switch (pick(rng, 8)) {
    case 0: return Valuation::zero(poset);
    case 1: return unit(poset, pick(rng, n));
    default: break;
  }
  Rational total = pick(rng, 2) == 0 ? Rational(1) : random_weight(rng);
  std::vector<Rational> w = random_simplex(n, rng);
  for (Rational& q : w) q *= total;
  return Valuation(poset, std::move(w));
}

std::vector<std::size_t> random_monotone_map(const FinitePoset& d, const FinitePoset& e, std::mt19937_64& rng) {
  std::size_t n = d.size();
  // Ordering by the size of the down-set is a linear extension.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto below = [&](std::size_t x) {
    std::size_t c = 0;
    for (std::size_t z = 0; z < n; ++z) c += d.leq(z, x) ? 1 : 0;
    return c;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below(a) < below(b); });
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<std::size_t> phi(n, 0);
    bool ok = true;
    for (std::size_t x : order) {
      std::vector<std::size_t> candidates;
      for (std::size_t j = 0; j < e.size(); ++j) {
        bool above_all = true;
        for (std::size_t z = 0; z < n && above_all; ++z)
          if (z != x && d.leq(z, x) && !e.leq(phi[z], j)) above_all = false;
        if (above_all) candidates.push_back(j);
      }
      if (candidates.empty()) {
        ok = false;
        break;
      }
      phi[x] = candidates[pick(rng, candidates.size())];
    }
    if (ok) return phi;
  }
  return std::vector<std::size_t>(n, pick(rng, e.size()));
}

KleisliMap random_kleisli_map(const PosetRef& d, const PosetRef& e, std::mt19937_64& rng) {
  std::size_t n = d->size();
  std::vector<std::size_t> phi = random_monotone_map(*d, *e, rng);
  Rational total = pick(rng, 2) == 0 ? Rational(1) : random_weight(rng);
  std::vector<Rational> share = random_simplex(n + 1, rng);
  Rational s = share[0] * total;
  std::vector<std::vector<Rational>> c;
  for (std::size_t z = 0; z < n; ++z) {
    std::vector<Rational> w = random_simplex(e->size(), rng);
    Rational scale = share[z + 1] * total;
    for (Rational& q : w) q *= scale;
    c.push_back(std::move(w));
  }
  std::vector<Valuation> images;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Rational> w(e->size(), Rational(0));
    w[phi[x]] += s;
    for (std::size_t z = 0; z < n; ++z)
      if (d->leq(z, x))
        for (std::size_t y = 0; y < e->size(); ++y) w[y] += c[z][y];
    images.emplace_back(e, std::move(w));
  }
  return KleisliMap(d, e, std::move(images), e->size() <= 16);
}

ValuationMixture random_mixture(const PosetRef& poset, std::mt19937_64& rng) {
  std::size_t k = 1 + pick(rng, 3);
  Rational total = pick(rng, 2) == 0 ? Rational(1) : random_weight(rng);
  std::vector<Rational> coeff = random_simplex(k, rng);
  ValuationMixture out;
  for (std::size_t i = 0; i < k; ++i) {
    Rational r = coeff[i] * total;
    out.emplace_back(r, random_valuation(poset, rng));
  }
  return out;
}

// ---------------------------------------------------------------------------
// suites

LawReport law_suite(const PosetRef& poset, std::uint64_t seed, unsigned cases) {
  if (poset->size() > 6) throw SizeGuard("law_suite is limited to posets of at most 6 elements");
  std::mt19937_64 rng(seed);
  LawReport report;
  report.suite = "valuations";
  report.subject = poset->name();
  report.seed = seed;
  report.cases = cases;
  const bool small_product = poset->size() * poset->size() <= 16;
  PosetRef prod = product_of(poset, poset);
  std::vector<std::size_t> second(prod->size());
  for (std::size_t i = 0; i < prod->size(); ++i) second[i] = i % poset->size();

  for (unsigned c = 0; c < cases; ++c) {
    KleisliMap f = random_kleisli_map(poset, poset, rng);
    KleisliMap g = random_kleisli_map(poset, poset, rng);
    Valuation nu = random_valuation(poset, rng);
    Valuation xi = random_valuation(poset, rng);
    std::size_t x = pick(rng, poset->size());
    std::size_t y = pick(rng, poset->size());
    std::string tag = "case " + std::to_string(c) + ": nu = " + to_string(nu);

    report.check("left unit").record(kleisli_ext(f, unit(poset, x)) == f(x), tag + ", x = " + poset->label(x));
    report.check("right unit").record(kleisli_ext(unit_map(poset), nu) == nu, tag);
    report.check("associativity")
        .record(kleisli_ext(kleisli_compose(g, f), nu) == kleisli_ext(g, kleisli_ext(f, nu)), tag);
    report.check("extension = integral").record(kleisli_ext(f, nu) == kleisli_ext_via_integrals(f, nu), tag);

    ValuationMixture varpi = random_mixture(poset, rng);
    report.check("multiply = id extension").record(multiply(varpi) == multiply_via_extension(varpi), tag);

    report.check("strength unit")
        .record(strength(poset, x, unit(poset, y)) == unit(prod, x * poset->size() + y), tag);
    report.check("strength projection").record(pushforward(strength(poset, x, nu), poset, second) == nu, tag);
    {
      std::vector<Valuation> images;
      for (std::size_t z = 0; z < poset->size(); ++z) images.push_back(strength(poset, x, g(z)));
      KleisliMap lifted(poset, prod, std::move(images), false);
      report.check("strength naturality")
          .record(strength(poset, x, kleisli_ext(g, nu)) == kleisli_ext(lifted, nu), tag);
    }
    Valuation t = tensor(nu, xi);
    report.check("commutativity")
        .record(tensor_left_first(nu, xi) == t && tensor_right_first(nu, xi) == t, tag + ", xi = " + to_string(xi));
    if (small_product) {
      report.check("strength = integral").record(strength(poset, x, nu) == strength_via_integral(poset, x, nu), tag);
      report.check("tensor = integral").record(t == tensor_via_integrals(nu, xi), tag + ", xi = " + to_string(xi));
    }
  }
  return report;
}

LawReport fubini_suite(unsigned max_size, unsigned same_pairs, unsigned pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LawReport report;
  report.suite = "fubini";
  report.subject = "all posets of size <= " + std::to_string(max_size);
  report.seed = seed;
  report.cases = same_pairs;
  std::vector<PosetRef> posets;
  for (unsigned n = 1; n <= max_size; ++n)
    for (FinitePoset& p : FinitePoset::all_up_to_iso(n)) posets.push_back(make_poset(std::move(p)));

  for (std::size_t i = 0; i < posets.size(); ++i)
    for (std::size_t j = 0; j < posets.size(); ++j) {
      const PosetRef& d = posets[i];
      const PosetRef& e = posets[j];
      std::vector<UpperSet> opens = scott_opens(FinitePoset::product(*d, *e));
      unsigned count = i == j ? same_pairs : pairs;
      for (unsigned c = 0; c < count; ++c) {
        Valuation nu = random_valuation(d, rng);
        Valuation xi = random_valuation(e, rng);
        Valuation t = tensor(nu, xi);
        for (const UpperSet& u : opens) {
          auto [left, right] = fubini_sides(nu, xi, u);
          bool agree = left == right;
          bool matches = left == eval_open(t, u);
          std::string tag;
          if (!agree || !matches)
            tag = d->name() + " x " + e->name() + ", open " + std::to_string(u.members) + ", nu = " + to_string(nu) +
                  ", xi = " + to_string(xi);
          report.check("iterated integrals agree").record(agree, tag);
          report.check("iterated integral = tensor weight").record(matches, tag);
        }
      }
    }
  return report;
}

}  // namespace pfpc
