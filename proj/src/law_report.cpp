#include "pfpc/law_report.hpp"

namespace pfpc {

void LawCheck::record(bool ok, const std::string& witness) {
  ++checked;
  if (ok) return;
  ++failed;
  if (!counterexample) counterexample = witness;
}

LawCheck& LawReport::check(const std::string& law) {
  for (LawCheck& c : checks)
    if (c.law == law) return c;
  checks.push_back({law, 0, 0, std::nullopt});
  return checks.back();
}

bool LawReport::passed() const {
  for (const LawCheck& c : checks)
    if (c.failed > 0) return false;
  return true;
}

unsigned LawReport::total_checked() const {
  unsigned n = 0;
  for (const LawCheck& c : checks) n += c.checked;
  return n;
}

}  // namespace pfpc
