#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfpc/rational.hpp"
#include "pfpc/terms.hpp"

// The bundled example programs and what running them must produce.
namespace pfpc {

struct CorpusEntry {
  std::string name;         // file stem under the corpus directory
  std::string description;
  std::string type;         // expected type, surface syntax
  unsigned steps = 0;       // exploration budget
  std::uint64_t fuel = 0;   // denotational budget giving the same masses
  // Exact masses at the budgets above, values in surface syntax.
  std::vector<std::pair<std::string, Rational>> masses;
  std::optional<Rational> halt_exactly;
  std::optional<Rational> halt_at_least;
  bool finishes = false;    // no live mass left at `steps`
};

const std::vector<CorpusEntry>& corpus_entries();

/// PFPC_CORPUS if set, else the directory the build was configured with.
std::string corpus_dir();

/// The program text of `name`.pfpc, parsed.
Term load_corpus_program(const std::string& dir, const std::string& name);

struct CorpusResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
};

/// Type, operational masses and halting bounds, and the denotational masses
/// at the entry's fuel.
CorpusResult run_corpus_entry(const CorpusEntry& entry, const std::string& dir);

}  // namespace pfpc
