#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "threadlens/ingest.hpp"

namespace threadlens {

struct ControversyParams {
  std::set<std::string, std::less<>> deletion_markers{std::string(kDeletedMarker),
                                                      std::string(kRemovedMarker)};
  double theta = 0.2;  // controversial iff score > theta
  std::size_t min_subreddit_posts = 100;  // at least this many scored posts
  std::size_t min_author_posts = 50;      // strictly more than this many scored posts
  std::size_t min_scatter_comments = 500;
};

/// Body equal to a deletion marker, or a deleted author with an empty body.
bool is_deleted_comment(const CommentRecord& comment, const ControversyParams& params = {});

struct PostControversy {
  std::size_t n_comments = 0;
  std::size_t n_deleted = 0;
  std::size_t n_unique_authors = 0;  // distinct non-deleted comment authors
  double score = 0;                  // n_deleted / n_comments
};

/// Throws Error{NoComments}.
PostControversy post_controversiality(std::span<const CommentRecord> comments,
                                      const ControversyParams& params = {});

/// Strictly greater than theta.
inline bool is_controversial(double score, double theta = 0.2) noexcept { return score > theta; }

/// Throws Error{NoComments} for a post without comments.
bool is_controversial(std::span<const CommentRecord> comments, const ControversyParams& params = {});

/// 1: 1-10 posts, 2: 11-100, 3: 101-1000, 4: 1001-2000, 5: above 2000.
/// Throws Error{ZeroPosts}.
int subreddit_popularity_category(std::uint64_t n_posts);

/// Controversy tallies for one group of posts (a subreddit or an author).
struct ControversyTally {
  std::uint64_t n_posts = 0;        // all posts, scored or not
  std::uint64_t n_scored = 0;       // posts with at least one comment
  std::uint64_t n_controversial = 0;

  std::optional<double> fraction() const;
  ControversyTally& operator+=(const ControversyTally& other);
  bool operator==(const ControversyTally&) const = default;
};

struct ControversyRollup {
  std::map<std::string, ControversyTally> by_subreddit;
  std::map<std::string, ControversyTally> by_author;  // deleted marker excluded
};

ControversyRollup controversy_rollup(const Corpus& corpus, const ControversyParams& params = {});

/// Fraction of the subreddit's scored posts that are controversial. Throws
/// Error{BelowThreshold} when fewer than min_subreddit_posts posts are scored.
double subreddit_controversiality(const Corpus& corpus, const std::string& subreddit,
                                  const ControversyParams& params = {});

/// Fraction of the author's scored posts that are controversial. Throws
/// Error{BelowThreshold} unless more than min_author_posts posts are scored.
double author_controversiality(const Corpus& corpus, const std::string& author,
                               const ControversyParams& params = {});

/// Threshold checks shared by the corpus queries and the CLI tables.
std::optional<double> subreddit_fraction(const ControversyTally& tally, const ControversyParams& params);
std::optional<double> author_fraction(const ControversyTally& tally, const ControversyParams& params);

struct ScatterRow {
  std::string post_id;
  std::size_t n_unique_authors = 0;
  double score = 0;
  std::size_t n_comments = 0;
  int popularity_category = 1;
};

/// One row per post with at least min_scatter_comments comments, ordered by
/// post id.
std::vector<ScatterRow> controversy_scatter(const Corpus& corpus, const ControversyParams& params = {});

}  // namespace threadlens
