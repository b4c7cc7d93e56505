#include "pfpc/kegelspitze.hpp"

namespace pfpc {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

void require_same(const PosetRef& a, const PosetRef& b, const char* what) {
  if (!(*a == *b)) throw PosetMismatch(std::string(what) + ": " + a->name() + " vs " + b->name());
}

std::vector<PosetRef> small_posets(unsigned max_size) {
  std::vector<PosetRef> out;
  for (unsigned n = 1; n <= max_size; ++n)
    for (FinitePoset& p : FinitePoset::all_up_to_iso(n)) out.push_back(make_poset(std::move(p)));
  return out;
}

}  // namespace

Rational UnitInterval::combine(const Rational& a, const Rational& r, const Rational& b) const {
  if (!is_probability(r)) throw std::invalid_argument("combine weight outside [0,1]");
  return r * a + (1 - r) * b;
}

Valuation ValuationSpace::combine(const Valuation& a, const Rational& r, const Valuation& b) const {
  if (!is_probability(r)) throw std::invalid_argument("combine weight outside [0,1]");
  require_same(a.poset(), poset_, "combine");
  require_same(b.poset(), poset_, "combine");
  std::vector<Rational> w;
  for (std::size_t i = 0; i < poset_->size(); ++i) w.push_back(r * a.weight(i) + (1 - r) * b.weight(i));
  return Valuation(poset_, std::move(w));
}

CountableSumResult countable_convex_sum(const std::function<std::pair<Rational, Rational>(std::size_t)>& term,
                                        const std::function<Rational(std::size_t)>& tail_mass, const Rational& tol,
                                        std::size_t max_terms) {
  CountableSumResult out;
  out.value = 0;
  Rational used = 0;
  for (std::size_t i = 0;; ++i) {
    if (tail_mass(i) <= tol) {
      out.converged = true;
      break;
    }
    if (i == max_terms) break;
    auto [r, x] = term(i);
    if (!is_probability(r) || !is_probability(x)) throw std::invalid_argument("countable sum term outside [0,1]");
    used += r;
    if (used > 1) throw std::invalid_argument("countable sum coefficients exceed 1");
    out.value += r * x;
    out.terms = i + 1;
  }
  return out;
}

Rational random_coefficient(std::mt19937_64& rng) {
  static const unsigned dens[] = {1, 2, 3, 4, 5, 6, 8, 12};
  unsigned den = dens[pick(rng, 8)];
  Rational r(static_cast<unsigned>(pick(rng, den + 1)), den);
  r.canonicalize();
  return r;
}

Rational random_unit_point(std::mt19937_64& rng) { return random_coefficient(rng); }

KleisliMap combine_maps(const KleisliMap& f, const Rational& r, const KleisliMap& g) {
  require_same(f.domain(), g.domain(), "combine_maps domain");
  require_same(f.codomain(), g.codomain(), "combine_maps codomain");
  ValuationSpace space(f.codomain());
  std::vector<Valuation> images;
  for (std::size_t x = 0; x < f.domain()->size(); ++x) images.push_back(space.combine(f(x), r, g(x)));
  return KleisliMap(f.domain(), f.codomain(), std::move(images), false);
}

KleisliMap kleisli_product(const KleisliMap& f, const KleisliMap& h) {
  PosetRef domain = product_of(f.domain(), h.domain());
  PosetRef codomain = product_of(f.codomain(), h.codomain());
  std::vector<Valuation> images;
  for (std::size_t a = 0; a < f.domain()->size(); ++a)
    for (std::size_t c = 0; c < h.domain()->size(); ++c) {
      Valuation t = tensor(f(a), h(c));
      images.emplace_back(codomain, t.weights());
    }
  return KleisliMap(domain, codomain, std::move(images), false);
}

KleisliMap kleisli_coproduct(const KleisliMap& f, const KleisliMap& h) {
  PosetRef domain = sum_of(f.domain(), h.domain());
  PosetRef codomain = sum_of(f.codomain(), h.codomain());
  std::size_t left = f.codomain()->size();
  std::vector<std::size_t> in1, in2;
  for (std::size_t y = 0; y < left; ++y) in1.push_back(y);
  for (std::size_t y = 0; y < h.codomain()->size(); ++y) in2.push_back(left + y);
  std::vector<Valuation> images;
  for (std::size_t a = 0; a < f.domain()->size(); ++a) images.push_back(pushforward(f(a), codomain, in1));
  for (std::size_t c = 0; c < h.domain()->size(); ++c) images.push_back(pushforward(h(c), codomain, in2));
  return KleisliMap(domain, codomain, std::move(images), false);
}

LawReport kleisli_convexity_suite(std::uint64_t seed, unsigned cases, unsigned max_size) {
  std::vector<PosetRef> posets = small_posets(max_size);
  std::mt19937_64 rng(seed);
  LawReport report;
  report.suite = "kleisli convexity";
  report.subject = "posets of size <= " + std::to_string(max_size);
  report.seed = seed;
  report.cases = cases;
  for (unsigned c = 0; c < cases; ++c) {
    PosetRef d = posets[pick(rng, posets.size())];
    PosetRef e = posets[pick(rng, posets.size())];
    PosetRef x = posets[pick(rng, posets.size())];
    KleisliMap f = random_kleisli_map(d, e, rng);
    KleisliMap g = random_kleisli_map(d, e, rng);
    KleisliMap h = random_kleisli_map(e, x, rng);
    KleisliMap k = random_kleisli_map(x, d, rng);
    KleisliMap other = random_kleisli_map(x, e, rng);
    Rational r = random_coefficient(rng);
    KleisliMap fg = combine_maps(f, r, g);
    std::string tag = "case " + std::to_string(c) + ": " + d->name() + " -> " + e->name() + ", r = " + to_string(r);

    report.check("h . (f +r g) = h . f +r h . g")
        .record(kleisli_compose(h, fg) == combine_maps(kleisli_compose(h, f), r, kleisli_compose(h, g)), tag);
    report.check("(f +r g) . k = f . k +r g . k")
        .record(kleisli_compose(fg, k) == combine_maps(kleisli_compose(f, k), r, kleisli_compose(g, k)), tag);
    report.check("(f +r g) x h = f x h +r g x h")
        .record(kleisli_product(fg, other) ==
                    combine_maps(kleisli_product(f, other), r, kleisli_product(g, other)),
                tag);
    report.check("h x (f +r g) = h x f +r h x g")
        .record(kleisli_product(other, fg) ==
                    combine_maps(kleisli_product(other, f), r, kleisli_product(other, g)),
                tag);
    report.check("(f +r g) + h = f + h +r g + h")
        .record(kleisli_coproduct(fg, other) ==
                    combine_maps(kleisli_coproduct(f, other), r, kleisli_coproduct(g, other)),
                tag);
    report.check("h + (f +r g) = h + f +r h + g")
        .record(kleisli_coproduct(other, fg) ==
                    combine_maps(kleisli_coproduct(other, f), r, kleisli_coproduct(other, g)),
                tag);
  }
  return report;
}

std::vector<LawReport> kegelspitze_suites(std::uint64_t seed, unsigned cases) {
  std::vector<LawReport> out;
  auto both = [&](const auto& k, const std::string& subject, const auto& sample) {
    using E = typename std::decay_t<decltype(k)>::Element;
    std::function<E(std::mt19937_64&)> s = sample;
    out.push_back(axiom_suite(k, subject, s, seed, cases));
    out.push_back(em_law_suite(k, subject, s, seed + 1, cases));
  };

  both(UnitInterval{}, "unit-interval", [](std::mt19937_64& g) { return random_unit_point(g); });
  both(TrivialKegelspitze{}, "trivial", [](std::mt19937_64&) { return TrivialKegelspitze::Element{}; });
  PointwiseFunctions<UnitInterval> cube(UnitInterval{}, 3);
  both(cube, "unit-interval^3", [](std::mt19937_64& g) {
    return std::vector<Rational>{random_unit_point(g), random_unit_point(g), random_unit_point(g)};
  });

  for (const PosetRef& p : small_posets(3)) {
    ValuationSpace space(p);
    both(space, space.name(), [p](std::mt19937_64& g) { return random_valuation(p, g); });

    LawReport coherence;
    coherence.suite = "barycenter coherence";
    coherence.subject = space.name();
    coherence.seed = seed + 2;
    coherence.cases = cases;
    std::mt19937_64 rng(seed + 2);
    for (unsigned c = 0; c < cases; ++c) {
      ValuationMixture m = random_mixture(p, rng);
      Valuation b = barycenter(space, m);
      coherence.check("barycenter = multiply").record(b == multiply(m), "case " + std::to_string(c) + ": " + to_string(b));
    }
    out.push_back(std::move(coherence));
  }

  PosetRef diamond = make_poset(FinitePoset::diamond());
  PointwiseFunctions<ValuationSpace> maps(ValuationSpace(diamond), 2);
  both(maps, "valuations(diamond)^2", [diamond](std::mt19937_64& g) {
    return std::vector<Valuation>{random_valuation(diamond, g), random_valuation(diamond, g)};
  });

  out.push_back(kleisli_convexity_suite(seed + 3, cases, 3));
  return out;
}

}  // namespace pfpc
