#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfpc/operational.hpp"
#include "pfpc/rational.hpp"
#include "pfpc/terms.hpp"

namespace pfpc {

/// Exploration exceeded its frontier cap. Carries the depth reached.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(unsigned depth, std::size_t frontier);
  unsigned depth() const { return depth_; }
  std::size_t frontier() const { return frontier_; }

 private:
  unsigned depth_;
  std::size_t frontier_;
};

struct ValueMass {
  Term value;
  Rational probability;
};

struct DistReport {
  unsigned depth = 0;  // steps actually explored; less than requested once nothing is live
  std::map<std::string, ValueMass> values;  // keyed by alpha_key
  Rational live_mass;
  std::size_t frontier_size = 0;
  std::vector<Rational> per_depth_halt;  // [i] = P(M ->_{<=i} some value)

  Rational halted_mass() const;
};

/// Frontier cap: PFPC_MAX_FRONTIER if set, otherwise 2^20 distinct live terms.
std::size_t default_max_frontier();

struct ExploreOptions {
  std::size_t max_frontier = default_max_frontier();
  bool merge_alpha_equivalent = true;
};

/// Breadth-first expansion of the reduction tree up to `steps` steps. Every
/// value's mass is the exact sum over paths of length <= steps reaching it.
DistReport explore(const Term& m, unsigned steps, const ExploreOptions& options = {});

/// P(M ->_{<=steps} some value).
Rational halt_lower_bound(const Term& m, unsigned steps, const ExploreOptions& options = {});

struct Outcome {
  std::optional<Term> value;  // nullopt: no value within the step budget
  unsigned steps = 0;
};

struct TraceStep {
  RedexKind rule;
  Rational probability;  // of the branch taken
  Term term;             // the term after the step
};

struct SampledTrace {
  Term start;
  std::vector<TraceStep> steps;
  bool halted = false;  // the last term is a value
};

/// One random run with its reduction sequence, drawn as in sample_run.
SampledTrace sample_trace(const Term& m, unsigned max_steps, std::uint64_t seed);

/// One random run; each choice draws u uniform in [0, 2^64) and takes the
/// left branch iff u / 2^64 < p, compared exactly.
Outcome sample_run(const Term& m, unsigned max_steps, std::uint64_t seed);

/// Seed of trial `index` in a batch; each trial owns an independent stream.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// Empirical frequencies over `trials` runs, in the same shape as explore's
/// report (live_mass is the timeout fraction, frontier_size is 0).
DistReport estimate(const Term& m, unsigned trials, unsigned max_steps, std::uint64_t seed);

}  // namespace pfpc
