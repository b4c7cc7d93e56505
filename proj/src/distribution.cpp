#include "pfpc/distribution.hpp"

#include <cstdlib>
#include <random>

#include "pfpc/operational.hpp"

namespace pfpc {

ResourceLimit::ResourceLimit(unsigned depth, std::size_t frontier)
    : std::runtime_error("exploration frontier of " + std::to_string(frontier) + " terms at depth " +
                         std::to_string(depth) + " exceeds the cap (set PFPC_MAX_FRONTIER to raise it)"),
      depth_(depth),
      frontier_(frontier) {}

Rational DistReport::halted_mass() const {
  Rational total = 0;
  for (const auto& [key, vm] : values) total += vm.probability;
  return total;
}

std::size_t default_max_frontier() {
  if (const char* env = std::getenv("PFPC_MAX_FRONTIER")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 20;
}

namespace {

struct Live {
  Term term;
  Rational weight;
};

void add_value(DistReport& report, const Term& v, const Rational& w) {
  std::string key = alpha_key(v);
  auto it = report.values.find(key);
  if (it == report.values.end())
    report.values.emplace(std::move(key), ValueMass{v, w});
  else
    it->second.probability += w;
}

}  // namespace

DistReport explore(const Term& m, unsigned steps, const ExploreOptions& options) {
  DistReport report;
  Rational halted = 0;
  // Ordered by alpha key when merging, so runs are reproducible.
  std::map<std::string, Live> merged;
  std::vector<Live> plain;
  auto push = [&](const Term& t, const Rational& w) {
    if (is_value(t)) {
      add_value(report, t, w);
      halted += w;
      return;
    }
    if (options.merge_alpha_equivalent) {
      std::string key = alpha_key(t);
      auto it = merged.find(key);
      if (it == merged.end())
        merged.emplace(std::move(key), Live{t, w});
      else
        it->second.weight += w;
    } else {
      plain.push_back({t, w});
    }
  };
  auto frontier_size = [&] { return options.merge_alpha_equivalent ? merged.size() : plain.size(); };

  push(m, Rational(1));
  report.per_depth_halt.push_back(halted);
  unsigned depth = 0;
  while (depth < steps && frontier_size() > 0) {
    std::vector<Live> current;
    current.reserve(frontier_size());
    if (options.merge_alpha_equivalent) {
      for (auto& [key, live] : merged) current.push_back(std::move(live));
      merged.clear();
    } else {
      current.swap(plain);
    }
    for (const Live& live : current) {
      WeightedSuccessors next = step(live.term);
      for (const Successor& s : next.branches) {
        Rational w = live.weight * s.probability;
        push(s.term, w);
      }
    }
    ++depth;
    report.per_depth_halt.push_back(halted);
    if (frontier_size() > options.max_frontier) throw ResourceLimit(depth, frontier_size());
  }

  report.depth = depth;
  report.frontier_size = frontier_size();
  report.live_mass = 0;
  if (options.merge_alpha_equivalent)
    for (const auto& [key, live] : merged) report.live_mass += live.weight;
  else
    for (const Live& live : plain) report.live_mass += live.weight;
  return report;
}

Rational halt_lower_bound(const Term& m, unsigned steps, const ExploreOptions& options) {
  return explore(m, steps, options).halted_mass();
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

SampledTrace sample_trace(const Term& m, unsigned max_steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  static const mpz_class two64 = mpz_class(1) << 64;
  SampledTrace trace{m, {}, false};
  Term cur = m;
  for (unsigned n = 0;; ++n) {
    if (is_value(cur)) {
      trace.halted = true;
      return trace;
    }
    if (n == max_steps) return trace;
    WeightedSuccessors next = step(cur);
    std::size_t taken = 0;
    if (next.branches.size() > 1) {
      // u / 2^64 < num / den  <=>  u * den < num * 2^64
      mpz_class u;
      std::uint64_t draw = rng();
      mpz_import(u.get_mpz_t(), 1, 1, sizeof draw, 0, 0, &draw);
      const Rational& p = next.branches[0].probability;
      taken = u * p.get_den() < p.get_num() * two64 ? 0 : 1;
    }
    cur = next.branches[taken].term;
    trace.steps.push_back({next.rule, next.branches[taken].probability, cur});
  }
}

Outcome sample_run(const Term& m, unsigned max_steps, std::uint64_t seed) {
  SampledTrace t = sample_trace(m, max_steps, seed);
  unsigned n = static_cast<unsigned>(t.steps.size());
  if (!t.halted) return {std::nullopt, n};
  return {n == 0 ? t.start : t.steps.back().term, n};
}

DistReport estimate(const Term& m, unsigned trials, unsigned max_steps, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("estimate needs at least one trial");
  DistReport report;
  std::vector<unsigned> halted_at(max_steps + 1, 0);
  unsigned timeouts = 0;
  std::map<std::string, std::pair<Term, unsigned>> counts;
  for (unsigned i = 0; i < trials; ++i) {
    Outcome o = sample_run(m, max_steps, trial_seed(seed, i));
    if (!o.value) {
      ++timeouts;
      continue;
    }
    ++halted_at[o.steps];
    std::string key = alpha_key(*o.value);
    auto it = counts.find(key);
    if (it == counts.end())
      counts.emplace(std::move(key), std::make_pair(*o.value, 1u));
    else
      ++it->second.second;
  }
  Rational n = trials;
  for (const auto& [key, tc] : counts) report.values.emplace(key, ValueMass{tc.first, Rational(tc.second) / n});
  unsigned running = 0;
  for (unsigned d = 0; d <= max_steps; ++d) {
    running += halted_at[d];
    report.per_depth_halt.push_back(Rational(running) / n);
  }
  report.depth = max_steps;
  report.live_mass = Rational(timeouts) / n;
  report.frontier_size = 0;
  return report;
}

}  // namespace pfpc
