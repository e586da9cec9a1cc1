#include "threadlens/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "threadlens/parallel.hpp"

namespace threadlens {

AnalysisWindow AnalysisWindow::make(UnixSeconds start, UnixSeconds end) {
  if (!(start < end)) {
    throw Error(ErrorCode::BadWindow,
                "window start " + std::to_string(start) + " is not before end " + std::to_string(end));
  }
  return AnalysisWindow{start, end};
}

IngestDiagnostics& IngestDiagnostics::operator+=(const IngestDiagnostics& other) {
  malformed_post_lines += other.malformed_post_lines;
  malformed_comment_lines += other.malformed_comment_lines;
  duplicate_posts += other.duplicate_posts;
  duplicate_comments += other.duplicate_comments;
  out_of_window_posts += other.out_of_window_posts;
  out_of_window_comments += other.out_of_window_comments;
  return *this;
}

std::optional<std::size_t> Corpus::find_post(std::string_view id) const {
  auto it = post_index_.find(std::string(id));
  if (it == post_index_.end()) return std::nullopt;
  return it->second;
}

void CorpusBuilder::add_post(PostRecord post) {
  if (!window_.contains(post.created_utc)) {
    ++diagnostics_.out_of_window_posts;
    return;
  }
  auto key = post.name;
  if (!posts_.try_emplace(std::move(key), std::move(post)).second) ++diagnostics_.duplicate_posts;
}

void CorpusBuilder::add_comment(CommentRecord comment) {
  if (!window_.contains(comment.created_utc)) {
    ++diagnostics_.out_of_window_comments;
    return;
  }
  auto key = comment.name;
  if (!comments_.try_emplace(std::move(key), std::move(comment)).second) {
    ++diagnostics_.duplicate_comments;
  }
}

namespace {

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace

void CorpusBuilder::add_post_line(std::string_view line) {
  if (blank(line)) return;
  try {
    add_post(parse_post_line(line));
  } catch (const Error&) {
    note_malformed_post();
  }
}

void CorpusBuilder::add_comment_line(std::string_view line) {
  if (blank(line)) return;
  try {
    add_comment(parse_comment_line(line));
  } catch (const Error&) {
    note_malformed_comment();
  }
}

void CorpusBuilder::merge(CorpusBuilder&& later) {
  // `later` follows this builder in input order, so existing ids win.
  for (auto& [id, post] : later.posts_) {
    if (!posts_.try_emplace(id, std::move(post)).second) ++diagnostics_.duplicate_posts;
  }
  for (auto& [id, comment] : later.comments_) {
    if (!comments_.try_emplace(id, std::move(comment)).second) ++diagnostics_.duplicate_comments;
  }
  diagnostics_ += later.diagnostics_;
  later.posts_.clear();
  later.comments_.clear();
}

Corpus CorpusBuilder::build() && {
  Corpus corpus;
  corpus.window_ = window_;
  corpus.diagnostics_ = diagnostics_;
  corpus.in_window_comments_ = comments_.size();

  corpus.posts_.reserve(posts_.size());
  for (auto& entry : posts_) corpus.posts_.push_back(std::move(entry.second));
  posts_.clear();
  std::sort(corpus.posts_.begin(), corpus.posts_.end(),
            [](const PostRecord& a, const PostRecord& b) { return a.name < b.name; });
  corpus.post_index_.reserve(corpus.posts_.size());
  for (std::size_t i = 0; i < corpus.posts_.size(); ++i) {
    corpus.post_index_.emplace(corpus.posts_[i].name, i);
  }

  struct Keyed {
    std::size_t post;
    CommentRecord comment;
  };
  std::vector<Keyed> kept;
  kept.reserve(comments_.size());
  for (auto& entry : comments_) {
    auto it = corpus.post_index_.find(entry.second.link_id);
    if (it == corpus.post_index_.end()) continue;
    kept.push_back({it->second, std::move(entry.second)});
  }
  comments_.clear();
  std::sort(kept.begin(), kept.end(), [](const Keyed& a, const Keyed& b) {
    if (a.post != b.post) return a.post < b.post;
    if (a.comment.created_utc != b.comment.created_utc) {
      return a.comment.created_utc < b.comment.created_utc;
    }
    return a.comment.name < b.comment.name;
  });

  corpus.offsets_.assign(corpus.posts_.size() + 1, 0);
  corpus.comments_.reserve(kept.size());
  for (auto& k : kept) {
    ++corpus.offsets_[k.post + 1];
    corpus.comments_.push_back(std::move(k.comment));
  }
  std::partial_sum(corpus.offsets_.begin(), corpus.offsets_.end(), corpus.offsets_.begin());

  std::unordered_map<std::string_view, std::string_view> thread_of;
  thread_of.reserve(corpus.comments_.size());
  for (const auto& c : corpus.comments_) thread_of.emplace(c.name, c.link_id);

  corpus.orphan_.assign(corpus.comments_.size(), 0);
  for (std::size_t i = 0; i < corpus.comments_.size(); ++i) {
    const auto& c = corpus.comments_[i];
    bool resolved = false;
    if (has_prefix(c.parent_id, kPostPrefix)) {
      resolved = c.parent_id == c.link_id;
    } else {
      auto it = thread_of.find(c.parent_id);
      resolved = it != thread_of.end() && it->second == c.link_id;
    }
    if (!resolved) {
      corpus.orphan_[i] = 1;
      ++corpus.orphan_total_;
    }
  }
  return corpus;
}

Corpus build_corpus(std::span<const PostRecord> posts, std::span<const CommentRecord> comments,
                    const AnalysisWindow& window) {
  CorpusBuilder builder(window);
  for (const auto& p : posts) builder.add_post(p);
  for (const auto& c : comments) builder.add_comment(c);
  return std::move(builder).build();
}

Corpus ingest_lines(std::span<const std::string_view> post_lines,
                    std::span<const std::string_view> comment_lines, const AnalysisWindow& window,
                    unsigned shards) {
  // Posts and comments are sharded independently; a shard's partial state
  // holds a contiguous slice of each file.
  auto post_parts = map_shards<CorpusBuilder>(post_lines.size(), shards, [&](ShardRange r) {
    CorpusBuilder part(window);
    for (std::size_t i = r.begin; i < r.end; ++i) part.add_post_line(post_lines[i]);
    return part;
  });
  auto comment_parts = map_shards<CorpusBuilder>(comment_lines.size(), shards, [&](ShardRange r) {
    CorpusBuilder part(window);
    for (std::size_t i = r.begin; i < r.end; ++i) part.add_comment_line(comment_lines[i]);
    return part;
  });
  CorpusBuilder total(window);
  for (auto& part : post_parts) total.merge(std::move(part));
  for (auto& part : comment_parts) total.merge(std::move(part));
  return std::move(total).build();
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(std::move(line));
  if (in.bad()) throw Error(ErrorCode::Io, "read failure on '" + path.string() + "'");
  return lines;
}

Corpus ingest_files(const std::filesystem::path& posts, const std::filesystem::path& comments,
                    const AnalysisWindow& window, unsigned shards) {
  const auto post_lines = read_lines(posts);
  const auto comment_lines = read_lines(comments);
  std::vector<std::string_view> post_views(post_lines.begin(), post_lines.end());
  std::vector<std::string_view> comment_views(comment_lines.begin(), comment_lines.end());
  return ingest_lines(post_views, comment_views, window, shards);
}

BasicStats& BasicStats::operator+=(const BasicStats& other) {
  n_posts += other.n_posts;
  n_deleted_author_posts += other.n_deleted_author_posts;
  n_zero_comment_posts += other.n_zero_comment_posts;
  n_one_comment_posts += other.n_one_comment_posts;
  n_comments += other.n_comments;
  n_comments_on_period_posts += other.n_comments_on_period_posts;
  n_disconnected_posts += other.n_disconnected_posts;
  n_removed_comments += other.n_removed_comments;
  return *this;
}

BasicStats corpus_stats(const Corpus& corpus) {
  BasicStats stats;
  const auto posts = corpus.posts();
  stats.n_posts = posts.size();
  stats.n_comments = corpus.in_window_comment_count();
  stats.n_comments_on_period_posts = corpus.comments().size();
  std::size_t at = 0;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (is_deleted_author(posts[i].author)) ++stats.n_deleted_author_posts;
    const auto thread = corpus.comments_of(i);
    if (thread.empty()) ++stats.n_zero_comment_posts;
    if (thread.size() == 1) ++stats.n_one_comment_posts;
    bool disconnected = false;
    for (const auto& c : thread) {
      if (corpus.is_orphan(at)) disconnected = true;
      if (c.body == kRemovedMarker) ++stats.n_removed_comments;
      ++at;
    }
    if (disconnected) ++stats.n_disconnected_posts;
  }
  return stats;
}

std::string to_json(const BasicStats& stats) {
  nlohmann::json j = {
      {"n_posts", stats.n_posts},
      {"n_deleted_author_posts", stats.n_deleted_author_posts},
      {"n_zero_comment_posts", stats.n_zero_comment_posts},
      {"n_one_comment_posts", stats.n_one_comment_posts},
      {"n_comments", stats.n_comments},
      {"n_comments_on_period_posts", stats.n_comments_on_period_posts},
      {"n_disconnected_posts", stats.n_disconnected_posts},
      {"n_removed_comments", stats.n_removed_comments},
  };
  return j.dump(2) + "\n";
}

}  // namespace threadlens
