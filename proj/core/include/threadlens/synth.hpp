#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "threadlens/ingest.hpp"
#include "threadlens/lifecycle.hpp"

namespace threadlens {

/// Deterministic pseudorandom stream used by the generator.
///
/// Raw draws come from std::mt19937_64 (whose output sequence is fixed by the
/// C++ standard). Every derived draw is computed here rather than with the
/// implementation-defined <random> distributions, so a seed yields the same
/// corpus on every conforming toolchain:
///   uniform01      = (raw >> 11) * 2^-53
///   uniform(lo,hi) = lo + raw % span, rejecting raw >= span * floor(2^64/span)
///   exponential(m) = -m * ln(1 - uniform01)
///   pareto(xm, a)  = xm * (1 - uniform01)^(-1/a)
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed);

  std::uint64_t next();
  double uniform01();
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);  // inclusive
  bool bernoulli(double p);
  double exponential(double mean);
  double pareto(double x_min, double alpha);

 private:
  std::mt19937_64 engine_;
};

enum class IntervalLaw { Regular, Exponential, Pareto };

std::string_view to_string(IntervalLaw law) noexcept;

struct SubredditSpec {
  std::string name;
  double weight = 1.0;
};

struct CyborgPlant {
  std::size_t count = 0;
  double success_fraction = 0.4;
  UnixSeconds latency_max = 6;
  std::size_t min_chars = 100;  // planted first comments are strictly longer
  std::size_t max_chars = 400;
};

struct LifecyclePlant {
  std::size_t early = 0;
  std::size_t steady = 0;
  std::size_t late = 0;
  std::size_t min_comments = 520;
  std::size_t max_comments = 700;
  double limelight_min = 0.1;
  double limelight_max = 0.9;
  double hog_same_author_fraction = 0.03;
};

struct ControversyPlant {
  std::size_t count = 0;
  std::size_t min_comments = 10;
  std::size_t max_comments = 60;
};

struct BurstyPlant {
  IntervalLaw law = IntervalLaw::Regular;
  std::size_t authors = 1;
  std::size_t posts_per_author = 120;
  double scale = 3600;  // interval, mean interval, or Pareto x_min (seconds)
  double alpha = 1.5;   // Pareto only
};

/// Seeded description of a synthetic corpus and the behaviors planted in it.
/// Everything not planted is background: posts whose first comment comes
/// after 7 s or more and whose deletion share stays at or below 20%.
struct SynthConfig {
  std::uint64_t seed = 1;
  std::size_t n_posts = 1000;
  std::size_t n_authors = 500;
  AnalysisWindow window{1199145600, 1230768000};  // calendar year 2008
  std::vector<SubredditSpec> subreddits;          // empty: n_subreddits with 1/k weights
  std::size_t n_subreddits = 12;

  double zero_comment_fraction = 0.4;
  double mean_comments = 8;
  std::size_t max_comments = 200;  // background posts; must stay below 500
  double deleted_author_post_fraction = 0.15;
  double background_deletion = 0.05;
  double self_reply_fraction = 0.05;

  std::size_t fast_human = 0;  // first comment within 6 s that is not cyborg-like
  CyborgPlant cyborg;
  LifecyclePlant lifecycle;
  ControversyPlant controversial;
  std::vector<BurstyPlant> bursty;

  std::size_t stray_comments = 0;  // in-window comments on posts created before the window
  std::size_t late_comments = 0;   // comments after the window end on in-window posts

  /// Throws Error{InvalidConfig}.
  void validate() const;
};

/// Accepts a JSON object; absent keys keep their defaults. Throws
/// Error{InvalidConfig} for malformed JSON, wrong types, or failed validation.
SynthConfig synth_config_from_json(std::string_view text);
std::string to_json(const SynthConfig& config);

struct PostTruth {
  std::string role;
  std::size_t n_comments = 0;
  std::size_t n_deleted = 0;
  bool cyborg = false;
  std::optional<bool> successful;        // planted cyborg posts
  std::optional<bool> controversial;     // posts with comments
  std::optional<EvolutionClass> lifecycle;
  std::optional<UnixSeconds> t75_seconds;
  std::optional<double> limelight_target;
  std::optional<double> limelight_exact;  // largest planted branch / comments
  std::optional<bool> hog_is_post_author;
};

struct AuthorTruth {
  IntervalLaw law = IntervalLaw::Regular;
  std::size_t n_posts = 0;
  double scale = 0;
  double alpha = 0;
};

struct GroundTruth {
  std::map<std::string, PostTruth> posts;      // in-window posts only
  std::map<std::string, AuthorTruth> authors;  // planted bursty authors
};

std::string to_json(const GroundTruth& truth);

struct SynthCorpus {
  std::vector<PostRecord> posts;
  std::vector<CommentRecord> comments;
  GroundTruth truth;

  std::string posts_jsonl() const;
  std::string comments_jsonl() const;
};

/// Branch sizes for a comment tree of n comments whose largest first-level
/// branch holds round(target * n) comments (at least 2) and every other branch
/// is strictly smaller. The first entry is the dominant branch.
std::vector<std::size_t> limelight_branch_sizes(SynthRng& rng, std::size_t n, double target);

/// Same config (including seed) gives byte-identical output.
SynthCorpus generate(const SynthConfig& config);

/// Writes posts.jsonl, comments.jsonl and ground_truth.json into `dir`.
void write_synth(const SynthCorpus& corpus, const std::filesystem::path& dir);

}  // namespace threadlens
