#include "threadlens/controversy.hpp"

#include <unordered_set>

namespace threadlens {

bool is_deleted_comment(const CommentRecord& c, const ControversyParams& params) {
  if (params.deletion_markers.contains(c.body)) return true;
  return is_deleted_author(c.author) && c.body.empty();
}

PostControversy post_controversiality(std::span<const CommentRecord> comments,
                                      const ControversyParams& params) {
  if (comments.empty()) throw Error(ErrorCode::NoComments, "controversiality needs a comment");
  PostControversy out;
  out.n_comments = comments.size();
  std::unordered_set<std::string_view> authors;
  for (const auto& c : comments) {
    if (is_deleted_comment(c, params)) ++out.n_deleted;
    if (!is_deleted_author(c.author)) authors.insert(c.author);
  }
  out.n_unique_authors = authors.size();
  out.score = static_cast<double>(out.n_deleted) / static_cast<double>(out.n_comments);
  return out;
}

bool is_controversial(std::span<const CommentRecord> comments, const ControversyParams& params) {
  return is_controversial(post_controversiality(comments, params).score, params.theta);
}

int subreddit_popularity_category(std::uint64_t n_posts) {
  if (n_posts == 0) throw Error(ErrorCode::ZeroPosts, "popularity category needs a post");
  if (n_posts <= 10) return 1;
  if (n_posts <= 100) return 2;
  if (n_posts <= 1000) return 3;
  if (n_posts <= 2000) return 4;
  return 5;
}

std::optional<double> ControversyTally::fraction() const {
  if (n_scored == 0) return std::nullopt;
  return static_cast<double>(n_controversial) / static_cast<double>(n_scored);
}

ControversyTally& ControversyTally::operator+=(const ControversyTally& o) {
  n_posts += o.n_posts;
  n_scored += o.n_scored;
  n_controversial += o.n_controversial;
  return *this;
}

ControversyRollup controversy_rollup(const Corpus& corpus, const ControversyParams& params) {
  ControversyRollup out;
  const auto posts = corpus.posts();
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const auto& post = posts[i];
    ControversyTally t;
    t.n_posts = 1;
    const auto thread = corpus.comments_of(i);
    if (!thread.empty()) {
      t.n_scored = 1;
      t.n_controversial = is_controversial(thread, params) ? 1 : 0;
    }
    out.by_subreddit[post.subreddit] += t;
    if (!is_deleted_author(post.author)) out.by_author[post.author] += t;
  }
  return out;
}

std::optional<double> subreddit_fraction(const ControversyTally& tally, const ControversyParams& params) {
  if (tally.n_scored < params.min_subreddit_posts || tally.n_scored == 0) return std::nullopt;
  return tally.fraction();
}

std::optional<double> author_fraction(const ControversyTally& tally, const ControversyParams& params) {
  if (tally.n_scored <= params.min_author_posts || tally.n_scored == 0) return std::nullopt;
  return tally.fraction();
}

namespace {

ControversyTally tally_where(const Corpus& corpus, const ControversyParams& params, auto&& keep) {
  ControversyTally t;
  const auto posts = corpus.posts();
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (!keep(posts[i])) continue;
    ++t.n_posts;
    const auto thread = corpus.comments_of(i);
    if (thread.empty()) continue;
    ++t.n_scored;
    if (is_controversial(thread, params)) ++t.n_controversial;
  }
  return t;
}

}  // namespace

double subreddit_controversiality(const Corpus& corpus, const std::string& subreddit,
                                  const ControversyParams& params) {
  const auto t = tally_where(corpus, params, [&](const PostRecord& p) { return p.subreddit == subreddit; });
  const auto f = subreddit_fraction(t, params);
  if (!f) {
    throw Error(ErrorCode::BelowThreshold, "subreddit '" + subreddit + "' has " +
                                               std::to_string(t.n_scored) + " scored posts");
  }
  return *f;
}

double author_controversiality(const Corpus& corpus, const std::string& author,
                               const ControversyParams& params) {
  const auto t = tally_where(corpus, params, [&](const PostRecord& p) { return p.author == author; });
  const auto f = author_fraction(t, params);
  if (!f) {
    throw Error(ErrorCode::BelowThreshold,
                "author '" + author + "' has " + std::to_string(t.n_scored) + " scored posts");
  }
  return *f;
}

std::vector<ScatterRow> controversy_scatter(const Corpus& corpus, const ControversyParams& params) {
  std::map<std::string, std::uint64_t> subreddit_posts;
  for (const auto& p : corpus.posts()) ++subreddit_posts[p.subreddit];

  std::vector<ScatterRow> rows;
  const auto posts = corpus.posts();
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const auto thread = corpus.comments_of(i);
    if (thread.empty() || thread.size() < params.min_scatter_comments) continue;
    const auto pc = post_controversiality(thread, params);
    rows.push_back({posts[i].name, pc.n_unique_authors, pc.score, pc.n_comments,
                    subreddit_popularity_category(subreddit_posts[posts[i].subreddit])});
  }
  return rows;  // posts() is already ordered by id
}

}  // namespace threadlens
