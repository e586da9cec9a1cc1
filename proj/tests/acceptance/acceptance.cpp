// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if a gating criterion fails. Tolerances are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "tree_oracle.hpp"
#include "threadlens/authors.hpp"
#include "threadlens/controversy.hpp"
#include "threadlens/cyborg.hpp"
#include "threadlens/error.hpp"
#include "threadlens/lifecycle.hpp"
#include "threadlens/pipeline.hpp"
#include "threadlens/synth.hpp"
#include "threadlens/temporal.hpp"
#include "threadlens/tree.hpp"

namespace tl = threadlens;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kTrees = 1000;
constexpr std::size_t kMaxTreeNodes = 5000;
constexpr double kTreeSeconds = 60.0;
constexpr std::size_t kRegularIntervals = 10000;
constexpr std::size_t kExponentialIntervals = 100000;
constexpr double kExponentialTolerance = 0.02;
constexpr double kScaleTolerance = 1e-12;
constexpr std::size_t kMinPosts = 10000;
constexpr std::size_t kMinComments = 200000;
constexpr double kLimelightTolerance = 0.01;
constexpr int kWindows = 100;
constexpr std::size_t kThroughputLines = 1000000;
constexpr double kMinRecordsPerSecond = 100000;
constexpr double kMaxThroughputSeconds = 30.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<std::string_view> views(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

Outcome tree_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  const tl::PostRecord post{"t3_root", "op", 1, 0, "s", 1, "t", ""};
  int mismatches = 0;
  std::size_t nodes = 0;
  for (int i = 0; i < kTrees; ++i) {
    const std::size_t n = rng() % (kMaxTreeNodes + 1);
    const auto comments = tl::testing::random_thread(rng, post, n, i % 4 == 0);
    nodes += comments.size();
    const auto m = tl::measure(tl::build_tree(post, comments));
    const auto o = tl::testing::TreeOracle(post, comments).measure();
    if (m.depth != o.depth || m.breadth != o.breadth || m.limelight_score != o.limelight || m.n_comments != o.attached)
      ++mismatches;
  }
  const double secs = seconds_since(start);
  return {mismatches == 0 && secs < kTreeSeconds,
          fmt("%d mismatches over %d trees (%zu comments), %.1f s (limit %.0f s)", mismatches, kTrees, nodes, secs,
              kTreeSeconds)};
}

Outcome burstiness() {
  const std::vector<double> regular(kRegularIntervals, 37.0);
  const double b_regular = tl::burstiness(regular).b;

  std::mt19937_64 rng(2002);
  std::exponential_distribution<double> exp(1.0 / 3600);
  std::vector<double> taus(kExponentialIntervals);
  for (auto& t : taus) t = exp(rng);
  const double b_exp = tl::burstiness(taus).b;

  double worst = 0;
  for (double c : {2.0, 1000.0}) {
    std::vector<double> scaled(taus);
    for (auto& t : scaled) t *= c;
    worst = std::max(worst, std::abs(tl::burstiness(scaled).b - b_exp));
  }
  return {b_regular == -1.0 && std::abs(b_exp) < kExponentialTolerance && worst < kScaleTolerance,
          fmt("regular B=%.17g, exponential |B|=%.5f (< %.2f), max scale drift %.3g (< %.0e)", b_regular,
              std::abs(b_exp), kExponentialTolerance, worst, kScaleTolerance)};
}

tl::SynthConfig acceptance_config() {
  tl::SynthConfig cfg;
  cfg.seed = 20080615;
  cfg.n_posts = 12000;
  cfg.n_authors = 4000;
  cfg.mean_comments = 12;
  cfg.cyborg.count = 300;
  cfg.fast_human = 300;
  cfg.lifecycle.early = 60;
  cfg.lifecycle.steady = 60;
  cfg.lifecycle.late = 60;
  cfg.controversial.count = 500;
  cfg.bursty.push_back({tl::IntervalLaw::Regular, 3, 120, 3600, 1.5});
  cfg.bursty.push_back({tl::IntervalLaw::Exponential, 3, 120, 3600, 1.5});
  cfg.bursty.push_back({tl::IntervalLaw::Pareto, 3, 150, 600, 1.5});
  cfg.stray_comments = 1000;
  cfg.late_comments = 1000;
  return cfg;
}

struct Confusion {
  std::size_t tp = 0, fp = 0, fn = 0;
  void add(bool truth, bool predicted) {
    tp += truth && predicted;
    fp += !truth && predicted;
    fn += truth && !predicted;
  }
  bool perfect() const { return fp == 0 && fn == 0 && tp > 0; }
  double precision() const { return tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 1.0; }
  double recall() const { return tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 1.0; }
};

Outcome planted(const tl::SynthCorpus& synth, const tl::Corpus& corpus) {
  Confusion cyborg, controversial;
  Confusion lifecycle[3];
  double worst_limelight = 0;
  std::size_t limelight_checked = 0;
  for (std::size_t i = 0; i < corpus.posts().size(); ++i) {
    const auto& post = corpus.posts()[i];
    const auto thread = corpus.comments_of(i);
    const auto& truth = synth.truth.posts.at(post.name);
    cyborg.add(truth.cyborg, tl::is_cyborg_like(post, thread).is_cyborg_like);
    if (!thread.empty()) controversial.add(truth.controversial.value_or(false), tl::is_controversial(thread));

    std::optional<tl::EvolutionClass> measured;
    if (thread.size() >= 500) measured = tl::classify_evolution(post, thread).cls;
    for (int k = 0; k < 3; ++k) {
      const auto cls = static_cast<tl::EvolutionClass>(k);
      lifecycle[k].add(truth.lifecycle == cls, measured == cls);
    }
    if (truth.limelight_target) {
      const auto score = tl::measure(tl::build_tree(post, thread)).limelight_score;
      const double err = score ? std::abs(*score - *truth.limelight_target) : 1.0;
      worst_limelight = std::max(worst_limelight, err);
      ++limelight_checked;
    }
  }
  const bool size_ok = corpus.posts().size() >= kMinPosts && corpus.comments().size() >= kMinComments;
  const bool pass = size_ok && cyborg.perfect() && controversial.perfect() && lifecycle[0].perfect() &&
                    lifecycle[1].perfect() && lifecycle[2].perfect() && limelight_checked > 0 &&
                    worst_limelight <= kLimelightTolerance;
  return {pass,
          fmt("%zu posts / %zu comments; cyborg P=%.4f R=%.4f (n=%zu); controversial P=%.4f R=%.4f (n=%zu); "
              "early/steady/late P=%.2f/%.2f/%.2f R=%.2f/%.2f/%.2f; limelight max err %.4f over %zu posts (<= %.2f)",
              corpus.posts().size(), corpus.comments().size(), cyborg.precision(), cyborg.recall(), cyborg.tp,
              controversial.precision(), controversial.recall(), controversial.tp, lifecycle[0].precision(),
              lifecycle[1].precision(), lifecycle[2].precision(), lifecycle[0].recall(), lifecycle[1].recall(),
              lifecycle[2].recall(), worst_limelight, limelight_checked, kLimelightTolerance)};
}

Outcome determinism(std::vector<std::string> posts, std::vector<std::string> comments, const tl::AnalysisWindow& w) {
  const tl::ReportSet ref = tl::render_all(tl::ingest_lines(views(posts), views(comments), w, 1), {}, 1);
  std::mt19937_64 rng(4004);
  int differing = 0;
  std::string runs;
  auto check = [&](unsigned shards, bool shuffle) {
    if (shuffle) {
      std::shuffle(posts.begin(), posts.end(), rng);
      std::shuffle(comments.begin(), comments.end(), rng);
    }
    const auto got = tl::render_all(tl::ingest_lines(views(posts), views(comments), w, shards), {}, shards);
    if (got != ref) ++differing;
    runs += fmt("%s%u%s", runs.empty() ? "" : ",", shards, shuffle ? "s" : "");
  };
  check(2, false);
  check(8, false);
  check(1, true);
  check(2, true);
  check(8, true);
  std::size_t bytes = 0;
  for (const auto& [name, text] : ref) bytes += text.size();
  return {differing == 0, fmt("%d of 5 runs (shards %s; s = shuffled) differ from the 1-shard baseline (%zu files, %zu bytes)",
                              differing, runs.c_str(), ref.size(), bytes)};
}

Outcome window_soundness() {
  std::mt19937_64 rng(5005);
  std::size_t violations = 0, retained = 0;
  for (int trial = 0; trial < kWindows; ++trial) {
    // Fuzzed corpus: overlapping time ranges, duplicate ids, dangling links.
    std::vector<tl::PostRecord> posts;
    std::vector<tl::CommentRecord> comments;
    const int n_posts = 50 + static_cast<int>(rng() % 200);
    for (int i = 0; i < n_posts; ++i) {
      const std::string id = "t3_" + std::to_string(rng() % 300);
      posts.push_back({id, "u" + std::to_string(rng() % 20), 1 + static_cast<tl::UnixSeconds>(rng() % 100000), 0, "s", 1, "", ""});
    }
    const int n_comments = static_cast<int>(rng() % 3000);
    for (int j = 0; j < n_comments; ++j) {
      const std::string link = "t3_" + std::to_string(rng() % 320);
      const std::string parent = rng() % 3 ? link : "t1_" + std::to_string(rng() % 4000);
      comments.push_back({"t1_" + std::to_string(rng() % 4000), "v", 1 + static_cast<tl::UnixSeconds>(rng() % 120000),
                          link, parent, "b", "s", 1});
    }
    const tl::UnixSeconds a = static_cast<tl::UnixSeconds>(rng() % 110000);
    const auto w = tl::AnalysisWindow::make(a, a + 1 + static_cast<tl::UnixSeconds>(rng() % 100000));
    const tl::Corpus corpus = tl::build_corpus(posts, comments, w);
    for (std::size_t i = 0; i < corpus.posts().size(); ++i) {
      const auto& p = corpus.posts()[i];
      if (!w.contains(p.created_utc)) ++violations;
      for (const auto& c : corpus.comments_of(i)) {
        ++retained;
        if (!w.contains(c.created_utc) || c.link_id != p.name) ++violations;
      }
    }
    for (const auto& c : corpus.comments()) {
      const auto idx = corpus.find_post(c.link_id);
      if (!idx || !w.contains(corpus.posts()[*idx].created_utc)) ++violations;
    }
  }
  return {violations == 0, fmt("%zu violations over %d random windows (%zu retained comments checked)", violations,
                               kWindows, retained)};
}

Outcome formulas() {
  int failures = 0;
  auto expect = [&](bool ok) { failures += !ok; };
  auto profile = [](std::uint64_t a, std::uint64_t b) {
    tl::AuthorProfile p;
    p.effective_received = a;
    p.comments_on_others = b;
    return p;
  };
  expect(tl::interaction_score(profile(0, 5)) == 0.0);
  expect(tl::interaction_score(profile(5, 0)) == 1.0);
  expect(tl::interaction_score(profile(3, 3)) == 0.5);
  const std::pair<std::uint64_t, int> buckets[] = {{10, 1},  {11, 2},   {100, 2},  {101, 3},
                                                   {1000, 3}, {1001, 4}, {2000, 4}, {2001, 5}};
  for (const auto& [n, cat] : buckets) expect(tl::subreddit_popularity_category(n) == cat);
  expect(!tl::is_controversial(0.2));
  expect(tl::is_controversial(std::nextafter(0.2, 1.0)));
  std::vector<tl::CommentRecord> ten(10);
  for (int i = 0; i < 10; ++i) ten[i] = {"t1_" + std::to_string(i), "u", 5, "t3_a", "t3_a", i < 2 ? "[deleted]" : "x", "s", 1};
  expect(!tl::is_controversial(ten));
  ten[2].body = "[removed]";
  expect(tl::is_controversial(ten));
  return {failures == 0, fmt("%d of 16 exact checks failed (interaction 0/1/0.5, buckets 10/11..2000/2001, theta 0.2 strict)",
                             failures)};
}

Outcome throughput() {
  std::vector<std::string> comment_lines;
  comment_lines.reserve(kThroughputLines);
  std::vector<std::string> post_lines;
  std::mt19937_64 rng(7007);
  const std::size_t n_posts = kThroughputLines / 10;
  for (std::size_t i = 0; i < n_posts; ++i) {
    post_lines.push_back(tl::to_json_line(tl::PostRecord{"t3_" + std::to_string(i), "u" + std::to_string(i % 5000),
                                                         1'200'000'000 + static_cast<tl::UnixSeconds>(i), 0, "s", 1,
                                                         "title", ""}));
  }
  for (std::size_t j = 0; j < kThroughputLines; ++j) {
    const std::string link = "t3_" + std::to_string(rng() % n_posts);
    comment_lines.push_back(tl::to_json_line(tl::CommentRecord{
        "t1_" + std::to_string(j), "c" + std::to_string(rng() % 50000), 1'200'000'000 + static_cast<tl::UnixSeconds>(rng() % 2'000'000),
        link, link, "some comment text of moderate length, like most comments are", "s", 1}));
  }
  const unsigned shards = std::max(1u, std::thread::hardware_concurrency());
  const auto start = Clock::now();
  const tl::Corpus corpus = tl::ingest_lines(views(post_lines), views(comment_lines),
                                             tl::AnalysisWindow::make(1'100'000'000, 1'300'000'000), shards);
  const auto stats = tl::corpus_stats(corpus);
  const double secs = seconds_since(start);
  const double rate = static_cast<double>(kThroughputLines) / secs;
  return {rate >= kMinRecordsPerSecond && secs < kMaxThroughputSeconds && stats.n_comments == kThroughputLines,
          fmt("%zu comment lines (+%zu posts) in %.2f s = %.0f rec/s on %u thread(s) (target >= %.0f rec/s, < %.0f s)",
              kThroughputLines, n_posts, secs, rate, shards, kMinRecordsPerSecond, kMaxThroughputSeconds)};
}

}  // namespace

int main() {
  bool gating_ok = true;
  auto report = [&](int id, const char* name, bool gating, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (gating && !o.pass) gating_ok = false;
    std::printf("criterion %d %s: %s%s | %s\n", id, name, o.pass ? "PASS" : "FAIL",
                gating || o.pass ? "" : " (non-gating)", o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "tree-metric oracle equivalence", true, tree_oracle);
  report(2, "burstiness analytics", true, burstiness);

  const tl::SynthConfig cfg = acceptance_config();
  const tl::SynthCorpus synth = tl::generate(cfg);
  std::vector<std::string> post_lines, comment_lines;
  for (const auto& p : synth.posts) post_lines.push_back(tl::to_json_line(p));
  for (const auto& c : synth.comments) comment_lines.push_back(tl::to_json_line(c));
  const tl::Corpus corpus = tl::ingest_lines(views(post_lines), views(comment_lines), cfg.window, 4);

  report(3, "planted-behavior recovery", true, [&] { return planted(synth, corpus); });
  report(4, "determinism and mergeability", true, [&] { return determinism(post_lines, comment_lines, cfg.window); });
  report(5, "window soundness", true, window_soundness);
  report(6, "formula spot checks", true, formulas);
  report(7, "throughput", false, throughput);
  return gating_ok ? 0 : 1;
}
