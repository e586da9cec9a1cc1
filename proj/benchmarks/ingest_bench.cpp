#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "threadlens/ingest.hpp"

namespace tl = threadlens;

namespace {

struct Dump {
  std::vector<std::string> posts, comments;
};

const Dump& dump(std::size_t n_comments) {
  static std::map<std::size_t, Dump> cache;
  auto [it, fresh] = cache.try_emplace(n_comments);
  if (!fresh) return it->second;
  std::mt19937_64 rng(1);
  const std::size_t n_posts = std::max<std::size_t>(1, n_comments / 10);
  for (std::size_t i = 0; i < n_posts; ++i) {
    it->second.posts.push_back(tl::to_json_line(
        tl::PostRecord{"t3_" + std::to_string(i), "u" + std::to_string(i % 997), 1'200'000'000 + static_cast<tl::UnixSeconds>(i), 0, "s", 1, "title", ""}));
  }
  for (std::size_t j = 0; j < n_comments; ++j) {
    const std::string link = "t3_" + std::to_string(rng() % n_posts);
    it->second.comments.push_back(tl::to_json_line(tl::CommentRecord{
        "t1_" + std::to_string(j), "c" + std::to_string(rng() % 5000),
        1'200'000'000 + static_cast<tl::UnixSeconds>(rng() % 1'000'000), link, link, "a comment body", "s", 1}));
  }
  return it->second;
}

void BM_ParseCommentLine(benchmark::State& state) {
  const auto& d = dump(10000);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tl::parse_comment_line(d.comments[i++ % d.comments.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ParseCommentLine);

void BM_IngestAndStats(benchmark::State& state) {
  const auto& d = dump(static_cast<std::size_t>(state.range(0)));
  const std::vector<std::string_view> posts(d.posts.begin(), d.posts.end());
  const std::vector<std::string_view> comments(d.comments.begin(), d.comments.end());
  const auto window = tl::AnalysisWindow::make(1'100'000'000, 1'300'000'000);
  for (auto _ : state) {
    const auto corpus = tl::ingest_lines(posts, comments, window, static_cast<unsigned>(state.range(1)));
    benchmark::DoNotOptimize(tl::corpus_stats(corpus));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IngestAndStats)->Args({100000, 1})->Args({100000, 4})->Unit(benchmark::kMillisecond);

}  // namespace
