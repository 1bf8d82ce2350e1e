// One PASS/FAIL line per acceptance criterion, with the worst record.
#include <cmath>
#include <cstdio>

#include "causal/verify.hpp"

int main() {
  const auto& checks = causal::verify::acceptance_checks();
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto records = causal::verify::run_check(checks[i]);
    bool ok = !records.empty();
    // Worst record: any failure first, then the largest deviation/threshold.
    const causal::verify::Record* worst = nullptr;
    auto score = [](const causal::verify::Record& r) {
      const double ratio = r.threshold > 0.0 ? r.deviation / r.threshold : r.deviation;
      return (r.pass ? 0.0 : 1e300) + (std::isnan(ratio) ? 1e299 : ratio);
    };
    for (const auto& r : records) {
      ok = ok && r.pass;
      if (!worst || score(r) > score(*worst)) worst = &r;
    }
    failed += ok ? 0 : 1;
    std::printf("%s [%02zu] %s", ok ? "PASS" : "FAIL", i + 1, checks[i].name.c_str());
    if (worst) {
      std::printf("  (worst: %s, deviation %.3g vs threshold %.3g)", worst->name.c_str(),
                  worst->deviation, worst->threshold);
    }
    std::printf("\n");
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
