#include "tarski/testing/acceptance.hpp"

#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
  tarski::testing::SuiteOptions opt;
  for (int i = 1; i < argc; ++i) opt.filters.emplace_back(argv[i]);
  bool all = true;
  auto outcomes = tarski::testing::run_suite(opt, [&](const tarski::testing::CriterionOutcome& o) {
    std::printf("[%s] C%-2u %-34s %7.2f s (limit %3.0f s)  %s\n", o.passed() ? "PASS" : "FAIL", o.id, o.name.c_str(),
                o.seconds, o.limit_seconds, o.detail.c_str());
    std::fflush(stdout);
    all = all && o.passed();
  });
  std::printf("%zu criteria run, %s\n", outcomes.size(), all ? "all passed" : "FAILURES");
  return all ? 0 : 1;
}
