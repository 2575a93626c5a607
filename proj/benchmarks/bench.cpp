#include <benchmark/benchmark.h>
#include "radineq/grid.hpp"
int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
