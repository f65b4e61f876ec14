// Acceptance run: every suite, one PASS/FAIL line per criterion.
// Writes the full check list to acceptance_report.json in the working directory.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include "engel/verify.hpp"

using namespace engel;

namespace {

const std::map<int, std::string> kCriteria = {
    {1, "PSL2(7): Γ1 has 37 SCCs, Γ2 has 9, Γ3 strongly connected, < 5 s"},
    {2, "PSL3(4): Γ1 has 3257 SCCs, Γ2 has 961, Γ3 strongly connected, < 10 min"},
    {3, "PSU4(2): Γ1 has 1297 SCCs, Γ2 strongly connected, < 10 min"},
    {4, "PSL2(q) odd q <= 29: Γ2/Γ3 connectivity matrix; q = 13 up to n = 6; < 15 min"},
    {5, "PSL2(q), q in {4,8,16}: Γ not strongly connected, weakly connected, diameter <= 10"},
    {6, "Sz(8): normalizer certificate and full SCC; Aut(Sz(8)) certificate"},
    {7, "Γ2 strongly connected for PGL2(5), PGL2(7), PGL2(9), PΣL2(9)"},
    {8, "witness suite transcripts"},
    {9, "2-element commutator orders for q = 7, 11, 13, 17"},
    {10, "Δ instances: hypotheses, vertex count, component structure, c >= |V|^2/|A|"},
    {11, "property suites on groups of order <= 2000"},
    {12, "oracle agrees with computation on >= 20 groups"},
};

}  // namespace

int main() {
  verify::Runner R;
  R.on_check = [](const verify::Check& c) {
    if (!c.pass) std::cerr << "  failed check " << c.name << ": " << c.note << "\n";
  };
  for (const auto& s : verify::suite_names()) verify::run_suite(R, s);

  std::map<int, std::vector<const verify::Check*>> by;
  for (const auto& c : R.checks()) by[c.criterion].push_back(&c);
  bool all = true;
  for (const auto& [id, text] : kCriteria) {
    const auto& cs = by[id];
    std::size_t failed = 0;
    double secs = 0;
    for (const auto* c : cs) {
      failed += !c->pass;
      secs += c->seconds;
    }
    const bool pass = !cs.empty() && failed == 0;
    all = all && pass;
    std::cout << "criterion " << std::setw(2) << id << ": " << (pass ? "PASS" : "FAIL") << "  " << text << "  (" << cs.size()
              << " checks, " << failed << " failed, " << std::fixed << std::setprecision(1) << secs << " s)\n";
    for (const auto* c : cs)
      if (!c->pass) std::cout << "    failed: " << c->name << (c->note.empty() ? "" : " - " + c->note) << "\n";
  }
  std::ofstream("acceptance_report.json") << R.to_json().dump(2) << "\n";
  return all ? 0 : 1;
}
