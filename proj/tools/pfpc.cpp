// pfpc: check, run and compare PFPC programs; check the valuation and
// barycentric-algebra law suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pfpc/corpus.hpp"
#include "pfpc/denotational.hpp"
#include "pfpc/distribution.hpp"
#include "pfpc/kegelspitze.hpp"
#include "pfpc/syntax.hpp"
#include "pfpc/typecheck.hpp"
#include "pfpc/valuations.hpp"

using namespace pfpc;
using json = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Raised for unreadable inputs and unwritable outputs.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the program is rejected; the diagnostic is already printed.
struct Rejected {
  json error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

struct Program {
  std::string path;
  std::string hash;
  Term term;
  Type type;
};

json type_error_json(const TypeError& e) {
  json j;
  j["kind"] = to_string(e.kind());
  j["rule"] = e.rule();
  j["location"] = e.location();
  j["message"] = e.what();
  if (e.expected()) j["expected"] = pretty(*e.expected());
  if (e.actual()) j["actual"] = pretty(*e.actual());
  return j;
}

// Parses and typechecks, printing a diagnostic on rejection.
Program load(const std::string& path) {
  std::string text = read_file(path);
  Program p{path, fnv1a64(text), Term::var("_"), unit_type()};
  try {
    p.term = parse_term(text);
  } catch (const ParseError& e) {
    std::cout << path << ":" << e.line() << ":" << e.column() << ": parse error: " << e.what() << "\n";
    throw Rejected{json{{"kind", "parse"}, {"line", e.line()}, {"column", e.column()}, {"message", e.what()}}};
  }
  try {
    p.type = check_program(p.term);
  } catch (const TypeError& e) {
    std::cout << path << ": type error (" << to_string(e.kind()) << ", rule " << e.rule() << "): " << e.what()
              << "\n";
    if (e.expected()) std::cout << "  expected: " << pretty(*e.expected()) << "\n";
    if (e.actual()) std::cout << "  actual:   " << pretty(*e.actual()) << "\n";
    throw Rejected{type_error_json(e)};
  }
  return p;
}

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("cannot write " + path);
}

json envelope(const std::string& command, const json& inputs) {
  json j;
  j["command"] = command;
  j["inputs"] = inputs;
  return j;
}

json file_inputs(const Program& p) { return json{{"file", p.path}, {"file_hash", p.hash}}; }

json dist_json(const DistReport& r) {
  json values = json::array();
  for (const auto& [key, vm] : r.values)
    values.push_back(json{{"value", pretty(vm.value)}, {"prob", to_string(vm.probability)}});
  json halts = json::array();
  for (const Rational& h : r.per_depth_halt) halts.push_back(to_string(h));
  return json{{"depth", r.depth}, {"values", values}, {"live", to_string(r.live_mass)}, {"per_depth_halt", halts}};
}

json sem_json(const SemDist& d) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [key, e] : d.entries) rows.emplace_back(pretty(readback(e.value)), to_string(e.probability));
  std::sort(rows.begin(), rows.end());
  json values = json::array();
  for (const auto& [v, p] : rows) values.push_back(json{{"value", v}, {"prob", p}});
  return values;
}

void print_sem(const std::string& title, const SemDist& d) {
  std::cout << title << " (mass " << to_string(d.mass()) << ")\n";
  for (const json& row : sem_json(d))
    std::cout << "  " << row["prob"].get<std::string>() << "  " << row["value"].get<std::string>() << "\n";
}

json report_json(const LawReport& r) {
  json checks = json::array();
  for (const LawCheck& c : r.checks) {
    json cj{{"law", c.law}, {"checked", c.checked}, {"failed", c.failed}};
    cj["counterexample"] = c.counterexample ? json(*c.counterexample) : json(nullptr);
    checks.push_back(cj);
  }
  return json{{"suite", r.suite}, {"subject", r.subject}, {"seed", r.seed}, {"cases", r.cases},
              {"passed", r.passed()}, {"checks", checks}};
}

void print_report(const LawReport& r) {
  std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << " on " << r.subject << " (seed " << r.seed << ", "
            << r.total_checked() << " checks)\n";
  for (const LawCheck& c : r.checks)
    if (c.failed > 0)
      std::cout << "  " << c.law << ": " << c.failed << "/" << c.checked << " failed; first: "
                << c.counterexample.value_or("") << "\n";
}

// ---------------------------------------------------------------------------

struct Options {
  std::string file;
  std::string json_path;
  std::uint64_t seed = 0;
  unsigned steps = 100;
  std::uint64_t fuel = 1000;
  std::string tol = "1/1000000";
  std::string poset;
  unsigned cases = 200;
  std::string suite = "all";
  bool run = false;
  bool list = false;
  std::string dir;
};

int cmd_check(const Options& o) {
  json j = envelope("check", json{{"file", o.file}, {"file_hash", fnv1a64(read_file(o.file))}, {"seed", o.seed}});
  try {
    Program p = load(o.file);
    std::cout << pretty(p.type) << "\n";
    j["type"] = pretty(p.type);
    j["pass"] = true;
    write_json(o.json_path, j);
    return kPass;
  } catch (const Rejected& r) {
    j["error"] = r.error;
    j["pass"] = false;
    write_json(o.json_path, j);
    return kFail;
  }
}

int cmd_trace(const Options& o) {
  Program p = load(o.file);
  SampledTrace t = sample_trace(p.term, o.steps, o.seed);
  json inputs = file_inputs(p);
  inputs["steps"] = o.steps;
  inputs["seed"] = o.seed;
  json j = envelope("trace", inputs);
  json steps = json::array();
  std::cout << "0: " << pretty(t.start) << "\n";
  Rational path = 1;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const TraceStep& s = t.steps[i];
    path *= s.probability;
    std::cout << i + 1 << ": [" << to_string(s.rule) << ", p = " << to_string(s.probability) << "] "
              << pretty(s.term) << "\n";
    steps.push_back(json{{"rule", to_string(s.rule)}, {"prob", to_string(s.probability)}, {"term", pretty(s.term)}});
  }
  std::cout << (t.halted ? "value" : "no value") << " after " << t.steps.size() << " steps; path probability "
            << to_string(path) << "\n";
  j["start"] = pretty(t.start);
  j["steps"] = steps;
  j["halted"] = t.halted;
  j["path_prob"] = to_string(path);
  write_json(o.json_path, j);
  return kPass;
}

int cmd_dist(const Options& o) {
  Program p = load(o.file);
  DistReport r = explore(p.term, o.steps);
  json inputs = file_inputs(p);
  inputs["steps"] = o.steps;
  inputs["seed"] = o.seed;
  json j = envelope("dist", inputs);
  j.update(dist_json(r));
  std::cout << "depth " << r.depth << "\n";
  for (const json& v : j["values"])
    std::cout << "  " << v["prob"].get<std::string>() << "  " << v["value"].get<std::string>() << "\n";
  std::cout << "live " << to_string(r.live_mass) << "\n";
  write_json(o.json_path, j);
  return kPass;
}

int cmd_adequacy(const Options& o) {
  Rational tol;
  try {
    tol = parse_rational(o.tol);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--tol", "not a rational: " + o.tol);
  }
  Program p = load(o.file);
  AdequacyReport r = adequacy_check(p.term, Fuel{o.fuel}, o.steps, tol);
  json inputs = file_inputs(p);
  inputs["fuel"] = o.fuel;
  inputs["steps"] = o.steps;
  inputs["tol"] = to_string(tol);
  inputs["seed"] = o.seed;
  json j = envelope("adequacy", inputs);
  j["denotational"] = sem_json(r.denotational);
  j["operational"] = sem_json(r.operational);
  j["max_pointwise_gap"] = to_string(r.max_pointwise_gap);
  j["mass_gap"] = to_string(r.mass_gap);
  j["live"] = to_string(r.live_mass);
  j["exact_mode"] = r.exact_mode;
  j["monotone"] = r.denotational_monotone && r.operational_monotone;
  j["pass"] = r.pass;
  print_sem("denotational", r.denotational);
  print_sem("operational", r.operational);
  std::cout << "max pointwise gap " << to_string(r.max_pointwise_gap) << ", mass gap " << to_string(r.mass_gap)
            << (r.exact_mode ? " (exact mode)" : "") << "\n"
            << (r.pass ? "PASS" : "FAIL") << "\n";
  write_json(o.json_path, j);
  return r.pass ? kPass : kFail;
}

int cmd_laws(const Options& o) {
  if (o.suite != "valuations" && o.suite != "kegelspitze" && o.suite != "all")
    throw CLI::ValidationError("--suite", "expected valuations, kegelspitze or all");
  std::vector<PosetRef> posets;
  if (!o.poset.empty()) {
    try {
      posets.push_back(make_poset(FinitePoset::parse(o.poset)));
    } catch (const std::exception& e) {
      throw CLI::ValidationError("--poset", e.what());
    }
  } else {
    for (unsigned n = 1; n <= 3; ++n)
      for (FinitePoset& p : FinitePoset::all_up_to_iso(n)) posets.push_back(make_poset(std::move(p)));
  }
  std::vector<LawReport> reports;
  if (o.suite != "kegelspitze") {
    for (const PosetRef& p : posets) reports.push_back(law_suite(p, o.seed, o.cases));
    unsigned max_size = 0;
    for (const PosetRef& p : posets) max_size = std::max<unsigned>(max_size, static_cast<unsigned>(p->size()));
    reports.push_back(fubini_suite(std::min(max_size, 3u), std::max(o.cases / 10, 1u), std::max(o.cases / 50, 1u),
                                   o.seed));
  }
  if (o.suite != "valuations")
    for (LawReport& r : kegelspitze_suites(o.seed, o.cases)) reports.push_back(std::move(r));

  bool pass = true;
  json arr = json::array();
  for (const LawReport& r : reports) {
    print_report(r);
    arr.push_back(report_json(r));
    pass = pass && r.passed();
  }
  std::cout << (pass ? "all laws hold" : "some laws fail") << "\n";
  json inputs{{"poset", o.poset.empty() ? json("all of size <= 3") : json(o.poset)},
              {"suite", o.suite},
              {"cases", o.cases},
              {"seed", o.seed}};
  json j = envelope("laws", inputs);
  j["reports"] = arr;
  j["pass"] = pass;
  write_json(o.json_path, j);
  return pass ? kPass : kFail;
}

int cmd_corpus(const Options& o) {
  std::string dir = o.dir.empty() ? corpus_dir() : o.dir;
  json j = envelope("corpus", json{{"dir", dir}, {"run", o.run}, {"seed", o.seed}});
  json entries = json::array();
  bool pass = true;
  for (const CorpusEntry& e : corpus_entries()) {
    json ej{{"name", e.name}, {"description", e.description}, {"type", e.type}, {"steps", e.steps},
            {"fuel", e.fuel}};
    if (o.run) {
      CorpusResult r = run_corpus_entry(e, dir);
      pass = pass && r.passed;
      std::cout << (r.passed ? "PASS " : "FAIL ") << e.name << "\n";
      for (const std::string& f : r.failures) std::cout << "  " << f << "\n";
      ej["pass"] = r.passed;
      ej["failures"] = r.failures;
    } else {
      std::cout << e.name << " : " << e.type << "  -- " << e.description << "\n";
    }
    entries.push_back(ej);
  }
  j["entries"] = entries;
  if (o.run) j["pass"] = pass;
  write_json(o.json_path, j);
  return pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pfpc: a probabilistic lambda calculus with recursive types"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--json", o.json_path, "write a JSON report to this path");
    sub->add_option("--seed", o.seed, "random seed");
  };

  CLI::App* check = app.add_subcommand("check", "print the type of a program");
  check->add_option("FILE", o.file)->required();
  add_common(check);

  CLI::App* trace = app.add_subcommand("trace", "print one sampled reduction sequence");
  trace->add_option("FILE", o.file)->required();
  trace->add_option("--steps", o.steps, "maximum number of steps")->capture_default_str();
  add_common(trace);

  CLI::App* dist = app.add_subcommand("dist", "exact distribution over values within a step budget");
  dist->add_option("FILE", o.file)->required();
  dist->add_option("--steps", o.steps, "exploration depth")->capture_default_str();
  add_common(dist);

  CLI::App* adequacy = app.add_subcommand("adequacy", "compare the denotation with the explored distribution");
  adequacy->add_option("FILE", o.file)->required();
  adequacy->add_option("--fuel", o.fuel, "beta steps per evaluation path")->capture_default_str();
  adequacy->add_option("--steps", o.steps, "exploration depth")->capture_default_str();
  adequacy->add_option("--tol", o.tol, "tolerance for recursive programs")->capture_default_str();
  add_common(adequacy);

  CLI::App* laws = app.add_subcommand("laws", "check the monad and algebra laws");
  laws->add_option("--poset", o.poset, "chain:N, antichain:N or diamond; default all posets of size <= 3");
  laws->add_option("--cases", o.cases, "random instances per suite")->capture_default_str();
  laws->add_option("--suite", o.suite, "valuations, kegelspitze or all")->capture_default_str();
  add_common(laws);

  CLI::App* corpus = app.add_subcommand("corpus", "list or run the bundled programs");
  corpus->add_flag("--run", o.run, "run every expectation");
  corpus->add_flag("--list", o.list, "list the programs (default)");
  corpus->add_option("--dir", o.dir, "corpus directory");
  add_common(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  auto started = std::chrono::steady_clock::now();
  int code = kUsage;
  try {
    if (*check) code = cmd_check(o);
    else if (*trace) code = cmd_trace(o);
    else if (*dist) code = cmd_dist(o);
    else if (*adequacy) code = cmd_adequacy(o);
    else if (*laws) code = cmd_laws(o);
    else if (*corpus) code = cmd_corpus(o);
  } catch (const Rejected&) {
    code = kFail;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "pfpc: " << e.what() << "\n";
    code = kUsage;
  } catch (const IoError& e) {
    std::cerr << "pfpc: " << e.what() << "\n";
    code = kUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "pfpc: " << e.what() << "\n";
    code = kUsage;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  std::cerr << "elapsed " << elapsed.count() << " ms\n";
  return code;
}
