#include "pfpc/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pfpc/denotational.hpp"
#include "pfpc/derived.hpp"
#include "pfpc/distribution.hpp"
#include "pfpc/syntax.hpp"
#include "pfpc/typecheck.hpp"

#ifndef PFPC_CORPUS_DIR
#define PFPC_CORPUS_DIR "corpus"
#endif

namespace pfpc {

namespace {

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string nat(unsigned n) { return pretty(derived::numeral(n)); }

std::vector<CorpusEntry> build() {
  std::vector<CorpusEntry> out;
  {
    CorpusEntry e{"unit", "the unit value", "1", 0, 0, {{"()", 1}}, Rational(1), std::nullopt, true};
    out.push_back(e);
  }
  {
    CorpusEntry e{"fair", "one biased choice", "Bool", 1, 0, {{"tt", q(1, 3)}, {"ff", q(2, 3)}}, Rational(1),
                  std::nullopt, true};
    out.push_back(e);
  }
  {
    // the fixpoint unfolds to a lambda in three steps
    CorpusEntry e{"coins", "the coin-tossing function itself", "1 -> 1", 3, 3, {}, Rational(1), std::nullopt, true};
    out.push_back(e);
  }
  {
    // ten rounds: 6 steps for the first, 7 for each later one; 4 betas per round
    CorpusEntry e{"coins_run", "coins (), ten complete rounds", "1", 69, 40,
                  {{"()", 1 - pow2_inverse(10)}}, 1 - pow2_inverse(10), 1 - pow2_inverse(10), false};
    out.push_back(e);
  }
  {
    CorpusEntry e{"geometric", "tosses until the first ff", "Nat", 200, 200, {}, std::nullopt, std::nullopt, false};
    e.masses.emplace_back(nat(0), 0);
    for (unsigned n = 1; n <= 8; ++n) e.masses.emplace_back(nat(n), pow2_inverse(n));
    e.halt_at_least = 1 - pow2_inverse(20);
    out.push_back(e);
  }
  {
    CorpusEntry e{"omega", "diverges", "1", 200, 200, {}, Rational(0), std::nullopt, false};
    out.push_back(e);
  }
  {
    CorpusEntry e{"bool_and", "conjunction of two coins", "Bool", 5, 2, {{"tt", q(1, 6)}, {"ff", q(5, 6)}},
                  Rational(1), std::nullopt, true};
    out.push_back(e);
  }
  {
    CorpusEntry e{"nat_sum", "sum of two fair bits", "Nat", 21, 14,
                  {{nat(0), q(1, 4)}, {nat(1), q(1, 2)}, {nat(2), q(1, 4)}}, Rational(1), std::nullopt, true};
    out.push_back(e);
  }
  for (const char* name : {"let_order_a", "let_order_b"}) {
    CorpusEntry e{name, "two lets, either order", "Bool * Bool", 4, 2,
                  {{"(tt, tt)", q(1, 6)}, {"(tt, ff)", q(1, 3)}, {"(ff, tt)", q(1, 6)}, {"(ff, ff)", q(1, 3)}},
                  Rational(1), std::nullopt, true};
    out.push_back(e);
  }
  return out;
}

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

std::string corpus_dir() {
  if (const char* env = std::getenv("PFPC_CORPUS")) return env;
  return PFPC_CORPUS_DIR;
}

Term load_corpus_program(const std::string& dir, const std::string& name) {
  std::string path = dir + "/" + name + ".pfpc";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream text;
  text << in.rdbuf();
  return parse_term(text.str());
}

CorpusResult run_corpus_entry(const CorpusEntry& entry, const std::string& dir) {
  CorpusResult result{entry.name, true, {}};
  auto fail = [&](std::string what) {
    result.passed = false;
    result.failures.push_back(std::move(what));
  };
  Term m = load_corpus_program(dir, entry.name);

  Type expected = parse_type(entry.type);
  std::optional<Type> actual = try_check_program(m);
  if (!actual)
    fail("does not typecheck");
  else if (!alpha_equal(*actual, expected))
    fail("type " + pretty(*actual) + ", expected " + entry.type);

  DistReport r = explore(m, entry.steps);
  SemDist op = operational_dist(r);
  SemDist den = denote(m, Fuel{entry.fuel});
  for (const auto& [text, p] : entry.masses) {
    std::string key = denote_value(parse_term(text)).key();
    if (op.at(key) != p) fail("operational mass of " + text + " is " + to_string(op.at(key)) + ", expected " + to_string(p));
    if (den.at(key) != p)
      fail("denotational mass of " + text + " is " + to_string(den.at(key)) + ", expected " + to_string(p));
  }
  Rational halted = r.halted_mass();
  if (entry.halt_exactly && halted != *entry.halt_exactly)
    fail("halted mass " + to_string(halted) + ", expected " + to_string(*entry.halt_exactly));
  if (entry.halt_at_least && halted < *entry.halt_at_least)
    fail("halted mass " + to_string(halted) + " below " + to_string(*entry.halt_at_least));
  if (entry.finishes && r.live_mass != 0) fail("live mass " + to_string(r.live_mass) + " left");
  if (entry.finishes && !(den == op)) fail("denotation differs from the explored distribution");
  if (halted + r.live_mass != 1) fail("mass not conserved");
  return result;
}

}  // namespace pfpc
