#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pfpc {

struct LawCheck {
  std::string law;
  unsigned checked = 0;
  unsigned failed = 0;
  std::optional<std::string> counterexample;  // the first failure

  void record(bool ok, const std::string& witness);
};

struct LawReport {
  std::string suite;
  std::string subject;  // poset or carrier
  std::uint64_t seed = 0;
  unsigned cases = 0;
  std::vector<LawCheck> checks;

  LawCheck& check(const std::string& law);
  bool passed() const;
  unsigned total_checked() const;
};

}  // namespace pfpc
