// Runs the thirteen acceptance criteria and prints one line per criterion.

#include "fixpoint/verify.hpp"

#include <cstdio>
#include <cstdlib>

int main() {
    std::uint64_t seed = 0;
    if (const char* s = std::getenv("FIXPOINT_SEED")) seed = std::strtoull(s, nullptr, 10);
    int failed = 0;
    for (int id = 1; id <= fixpoint::kCriterionCount; ++id) {
        const auto r = fixpoint::run_criterion(id, seed);
        std::printf("criterion %2d %s  %s  [%s]\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.summary.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    std::printf("%d of %d criteria passed\n", fixpoint::kCriterionCount - failed, fixpoint::kCriterionCount);
    return failed == 0 ? 0 : 1;
}
