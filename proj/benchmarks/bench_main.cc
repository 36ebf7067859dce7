// Copyright 2026 The crec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "crec/clone_detector.h"
#include "crec/learner.h"
#include "crec/levenshtein.h"
#include "crec/multiset_diff.h"
#include "crec/random.h"

namespace {

std::string word(crec::Rng& rng, std::size_t vocab) {
  return "w" + std::to_string(rng.below(vocab));
}

// Seeds of 40-80 words, each followed by a mutated copy half of the time.
std::vector<crec::CodeBlock> block_corpus(std::size_t n, std::uint64_t seed) {
  crec::Rng rng(seed);
  std::vector<crec::CodeBlock> blocks;
  int line = 1;
  while (blocks.size() < n) {
    std::vector<std::string> words(40 + rng.below(41));
    for (auto& w : words) w = word(rng, 300);
    const int copies = rng.below(2) ? 2 : 1;
    for (int c = 0; c < copies && blocks.size() < n; ++c) {
      std::string text = "{\n";
      for (std::size_t i = 0; i < words.size(); ++i) {
        const std::string& w = (c > 0 && rng.below(10) == 0) ? word(rng, 300) : words[i];
        text += w + (i % 5 == 4 ? ";\n" : " ");
      }
      text += "\n}\n";
      const std::string path = "src/F" + std::to_string(blocks.size() % 17) + ".java";
      blocks.push_back(crec::block_from_text(path, text, line));
      line += 30;
    }
  }
  return blocks;
}

void BM_DetectClones(benchmark::State& state) {
  const auto blocks = block_corpus(static_cast<std::size_t>(state.range(0)), 1);
  crec::DetectOptions options;
  options.min_tokens = 30;
  options.min_lines = 6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(crec::detect_clones(blocks, options));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DetectClones)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_MultisetDiff(benchmark::State& state) {
  crec::Rng rng(2);
  const std::size_t members = static_cast<std::size_t>(state.range(0));
  const std::size_t length = static_cast<std::size_t>(state.range(1));
  std::vector<std::vector<crec::DiffToken>> seqs(members);
  for (auto& s : seqs) {
    for (std::size_t i = 0; i < length; ++i) {
      s.push_back({rng.below(8) ? "t" + std::to_string(i) : word(rng, 50),
                   crec::IdentifierClass::kVariable});
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(crec::multiset_diff(seqs));
  }
}
BENCHMARK(BM_MultisetDiff)->Args({2, 100})->Args({5, 100})->Args({2, 1000})->Args({5, 1000});

void BM_Levenshtein(benchmark::State& state) {
  crec::Rng rng(3);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::string a(n, 'a'), b(n, 'a');
  for (auto& c : a) c = static_cast<char>('a' + rng.below(26));
  for (auto& c : b) c = static_cast<char>('a' + rng.below(26));
  for (auto _ : state) {
    benchmark::DoNotOptimize(crec::levenshtein(a, b));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Levenshtein)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

std::vector<crec::LabeledExample> examples(std::size_t n) {
  crec::Rng rng(4);
  std::vector<crec::LabeledExample> out(n);
  for (auto& e : out) {
    for (auto& x : e.vector.f) x = rng.unit();
    e.label = e.vector.at(13) > 0.4 ? 1 : 0;
  }
  return out;
}

void BM_BestStump(benchmark::State& state) {
  const auto data = examples(static_cast<std::size_t>(state.range(0)));
  const std::vector<double> w(data.size(), 1.0 / data.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(crec::best_stump(data, w));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BestStump)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_TrainAdaBoost(benchmark::State& state) {
  const auto data = examples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(crec::train_adaboost(data));
  }
}
BENCHMARK(BM_TrainAdaBoost)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
