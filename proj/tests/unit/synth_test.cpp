#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "threadlens/controversy.hpp"
#include "threadlens/cyborg.hpp"
#include "threadlens/error.hpp"
#include "threadlens/lifecycle.hpp"
#include "threadlens/synth.hpp"
#include "threadlens/tree.hpp"

using namespace threadlens;
using namespace threadlens::testing;

namespace {

SynthConfig planted(std::uint64_t seed) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.n_posts = 600;
  cfg.n_authors = 300;
  cfg.cyborg.count = 40;
  cfg.fast_human = 30;
  cfg.lifecycle.early = 4;
  cfg.lifecycle.steady = 4;
  cfg.lifecycle.late = 4;
  cfg.controversial.count = 40;
  cfg.bursty.push_back({IntervalLaw::Regular, 1, 120, 3600, 1.5});
  cfg.bursty.push_back({IntervalLaw::Pareto, 1, 150, 600, 1.5});
  cfg.stray_comments = 30;
  cfg.late_comments = 30;
  return cfg;
}

std::vector<std::string_view> lines_of(const std::string& text) {
  std::vector<std::string_view> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    out.push_back(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view() : rest.substr(nl + 1);
  }
  return out;
}

}  // namespace

TEST(SynthRng, UniformStaysInRange) {
  SynthRng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.uniform(-3, 4);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 4);
  }
}

TEST(Synth, TenPostsThreeCyborgs) {
  SynthConfig cfg;
  cfg.seed = 3;
  cfg.n_posts = 10;
  cfg.n_authors = 20;
  cfg.cyborg.count = 3;
  const auto synth = generate(cfg);
  const Corpus corpus = build_corpus(synth.posts, synth.comments, cfg.window);
  std::set<std::string> truth, detected;
  for (const auto& [id, t] : synth.truth.posts)
    if (t.cyborg) truth.insert(id);
  for (std::size_t i = 0; i < corpus.posts().size(); ++i) {
    if (is_cyborg_like(corpus.posts()[i], corpus.comments_of(i)).is_cyborg_like) detected.insert(corpus.posts()[i].name);
  }
  EXPECT_EQ(truth.size(), 3u);
  EXPECT_EQ(detected, truth);
}

TEST(Synth, SameSeedSameBytes) {
  const auto a = generate(planted(9));
  const auto b = generate(planted(9));
  EXPECT_EQ(a.posts_jsonl(), b.posts_jsonl());
  EXPECT_EQ(a.comments_jsonl(), b.comments_jsonl());
  EXPECT_EQ(to_json(a.truth), to_json(b.truth));
  EXPECT_NE(a.comments_jsonl(), generate(planted(10)).comments_jsonl());
}

TEST(Synth, LimelightBranchSizes) {
  SynthRng rng(5);
  const auto sizes = limelight_branch_sizes(rng, 100, 0.6);
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  EXPECT_EQ(total, 100u);
  EXPECT_EQ(sizes[0], 60u);
  for (std::size_t i = 1; i < sizes.size(); ++i) EXPECT_LT(sizes[i], sizes[0]);

  // Materialize as chains and measure.
  const auto post = make_post("t3_p", "op", 10);
  std::vector<CommentRecord> comments;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    std::string parent = post.name;
    for (std::size_t i = 0; i < sizes[b]; ++i) {
      const std::string id = "t1_" + std::to_string(b) + "_" + std::to_string(i);
      comments.push_back(make_comment(id, "u", 20, post.name, parent));
      parent = id;
    }
  }
  const double score = limelight_score(build_tree(post, comments));
  EXPECT_GE(score, 0.59);
  EXPECT_LE(score, 0.61);
}

TEST(Synth, InvalidConfig) {
  SynthConfig cfg;
  cfg.n_posts = 5;
  cfg.cyborg.count = 6;
  EXPECT_THROW(generate(cfg), Error);
  EXPECT_THROW(synth_config_from_json("{\"n_posts\": -1}"), Error);
  EXPECT_THROW(synth_config_from_json("{nope"), Error);
}

TEST(Synth, ConfigJsonRoundTrip) {
  const auto cfg = planted(4);
  EXPECT_EQ(to_json(synth_config_from_json(to_json(cfg))), to_json(cfg));
}

TEST(Synth, OutputParsesAndMatchesTruth) {
  const auto cfg = planted(21);
  const auto synth = generate(cfg);
  const std::string posts = synth.posts_jsonl(), comments = synth.comments_jsonl();
  const Corpus corpus = ingest_lines(lines_of(posts), lines_of(comments), cfg.window, 2);
  EXPECT_EQ(corpus.diagnostics().malformed_post_lines, 0u);
  EXPECT_EQ(corpus.diagnostics().malformed_comment_lines, 0u);
  EXPECT_EQ(corpus.diagnostics().duplicate_comments, 0u);
  EXPECT_EQ(corpus.posts().size(), cfg.n_posts);
  EXPECT_EQ(corpus.orphan_count(), 0u);

  std::size_t popular = 0;
  for (std::size_t i = 0; i < corpus.posts().size(); ++i) {
    const auto& post = corpus.posts()[i];
    const auto thread = corpus.comments_of(i);
    const auto& truth = synth.truth.posts.at(post.name);
    ASSERT_EQ(thread.size(), truth.n_comments) << post.name;
    EXPECT_EQ(is_cyborg_like(post, thread).is_cyborg_like, truth.cyborg) << post.name;
    if (truth.successful) EXPECT_EQ(is_successful(post, thread), *truth.successful);
    if (truth.controversial) EXPECT_EQ(is_controversial(thread), *truth.controversial) << post.name;
    if (truth.lifecycle) {
      ++popular;
      const auto e = classify_evolution(post, thread);
      EXPECT_EQ(e.cls, *truth.lifecycle) << post.name;
      EXPECT_EQ(e.t_threshold, *truth.t75_seconds);
      const auto m = measure(build_tree(post, thread));
      EXPECT_DOUBLE_EQ(*m.limelight_score, *truth.limelight_exact);
      EXPECT_LE(std::abs(*m.limelight_score - *truth.limelight_target), 0.01);
      EXPECT_EQ(m.hog->same_as_post_author, *truth.hog_is_post_author);
    } else {
      EXPECT_LT(thread.size(), 500u);
    }
  }
  EXPECT_EQ(popular, 12u);
}
