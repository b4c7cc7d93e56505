#include <doctest.h>

#include <filesystem>
#include <set>

#include "pfpc/corpus.hpp"

using namespace pfpc;

TEST_CASE("every corpus expectation holds") {
  for (const CorpusEntry& e : corpus_entries()) {
    CorpusResult r = run_corpus_entry(e, corpus_dir());
    std::string failures;
    for (const std::string& f : r.failures) failures += f + "; ";
    INFO(e.name << ": " << failures);
    CHECK(r.passed);
    CHECK(r.failures.empty());
  }
}

TEST_CASE("corpus files and expectations match one to one") {
  std::set<std::string> files, names;
  for (const auto& p : std::filesystem::directory_iterator(corpus_dir()))
    if (p.path().extension() == ".pfpc") files.insert(p.path().stem().string());
  for (const CorpusEntry& e : corpus_entries()) names.insert(e.name);
  CHECK(files == names);
}

TEST_CASE("a wrong expectation is reported") {
  CorpusEntry e = corpus_entries().at(1);
  e.masses[0].second = 1;
  e.type = "1";
  CorpusResult r = run_corpus_entry(e, corpus_dir());
  CHECK_FALSE(r.passed);
  CHECK(r.failures.size() == 3);
  CHECK_THROWS(load_corpus_program(corpus_dir(), "no_such_program"));
}
