#include <benchmark/benchmark.h>

#include "lextag/generator.h"
#include "lextag/parser.h"
#include "lextag/resources.h"
#include "lextag/transfer.h"

namespace lextag {
namespace {

std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(LEXTAG_BENCH_DATA) / name;
}

const Language& language(const std::string& code) {
  static std::map<std::string, Language> cache;
  auto it = cache.find(code);
  if (it == cache.end()) it = cache.emplace(code, load_language(data(code + ".json"))).first;
  return it->second;
}

void BM_ParseVase(benchmark::State& state) {
  auto tokens = tokenize("John broke the vase");
  ParseOptions opts;
  opts.defer_unification = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(parse(tokens, language("en"), opts));
}
BENCHMARK(BM_ParseVase)->Arg(0)->Arg(1);

void BM_BruteForceVase(benchmark::State& state) {
  auto tokens = tokenize("John broke the vase");
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_parse(tokens, language("en"), tokens.size()));
  }
}
BENCHMARK(BM_BruteForceVase);

void BM_TranslateEnZh(benchmark::State& state) {
  TransferTable t = load_transfer(data("en-zh.json"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        translate("John broke the vase", language("en"), language("zh"), t));
  }
}
BENCHMARK(BM_TranslateEnZh);

void BM_TranslateZhEn(benchmark::State& state) {
  TransferTable t = load_transfer(data("zh-en.json"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        translate("Ji-Yong da sui huapin", language("zh"), language("en"), t));
  }
}
BENCHMARK(BM_TranslateZhEn);

}  // namespace
}  // namespace lextag

BENCHMARK_MAIN();
