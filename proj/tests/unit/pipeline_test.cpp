#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "threadlens/csv.hpp"
#include "threadlens/error.hpp"
#include "threadlens/pipeline.hpp"
#include "threadlens/synth.hpp"

using namespace threadlens;

namespace {

struct Lines {
  std::vector<std::string> posts, comments;
  std::vector<std::string_view> post_views() const { return {posts.begin(), posts.end()}; }
  std::vector<std::string_view> comment_views() const { return {comments.begin(), comments.end()}; }
};

const SynthConfig& config() {
  static const SynthConfig cfg = [] {
    SynthConfig c;
    c.seed = 31;
    c.n_posts = 1500;
    c.n_authors = 400;
    c.cyborg.count = 20;
    c.fast_human = 10;
    c.lifecycle = {2, 2, 2};
    c.controversial.count = 30;
    c.bursty.push_back({IntervalLaw::Exponential, 2, 110, 3600, 1.5});
    c.stray_comments = 20;
    c.late_comments = 20;
    return c;
  }();
  return cfg;
}

Lines synth_lines() {
  const auto synth = generate(config());
  Lines l;
  for (const auto& p : synth.posts) l.posts.push_back(to_json_line(p));
  for (const auto& c : synth.comments) l.comments.push_back(to_json_line(c));
  return l;
}

}  // namespace

TEST(Pipeline, ShardCountAndInputOrderDoNotMatter) {
  Lines lines = synth_lines();
  const auto window = config().window;
  const Corpus base = ingest_lines(lines.post_views(), lines.comment_views(), window, 1);
  const ReportSet ref = render_all(base, {}, 1);
  EXPECT_EQ(ref.size(), 21u);

  std::mt19937_64 rng(1);
  for (unsigned shards : {2u, 8u}) {
    std::shuffle(lines.posts.begin(), lines.posts.end(), rng);
    std::shuffle(lines.comments.begin(), lines.comments.end(), rng);
    const Corpus c = ingest_lines(lines.post_views(), lines.comment_views(), window, shards);
    const ReportSet got = render_all(c, {}, shards);
    ASSERT_EQ(got.size(), ref.size());
    for (const auto& [name, text] : ref) EXPECT_EQ(got.at(name), text) << name;
  }
}

TEST(Pipeline, CsvFilesHaveHeaders) {
  const Lines lines = synth_lines();
  const Corpus corpus = ingest_lines(lines.post_views(), lines.comment_views(), config().window);
  for (const auto& [name, text] : render_all(corpus, {})) {
    if (!name.ends_with(".csv")) continue;
    const auto rows = parse_csv(text);
    ASSERT_FALSE(rows.empty()) << name;
    for (const auto& cell : rows[0]) {
      EXPECT_FALSE(cell.empty()) << name;
      EXPECT_EQ(cell.find_first_of(" ,\""), std::string::npos) << name << ": " << cell;
    }
    for (const auto& row : rows) EXPECT_EQ(row.size(), rows[0].size()) << name;
  }
}

TEST(WriteReports, StagesAndCleansUp) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "threadlens_write_reports_test";
  fs::remove_all(dir);
  write_reports({{"a.csv", "x\n1\n"}, {"b.json", "{}\n"}}, dir);
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"a.csv", "b.json"}));

  // A file name that cannot be created fails the whole write.
  EXPECT_THROW(write_reports({{"ok.csv", "x\n"}, {"missing/sub.csv", "y\n"}}, dir), Error);
  EXPECT_FALSE(fs::exists(dir / "ok.csv"));
  std::size_t n = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++n;
  EXPECT_EQ(n, 2u);
  fs::remove_all(dir);
}
