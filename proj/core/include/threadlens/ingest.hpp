#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "threadlens/records.hpp"

namespace threadlens {

/// Half-open interval [start_utc, end_utc) in UNIX seconds.
struct AnalysisWindow {
  UnixSeconds start_utc = 0;
  UnixSeconds end_utc = 0;

  /// Throws Error{BadWindow} unless start < end.
  static AnalysisWindow make(UnixSeconds start, UnixSeconds end);

  bool contains(UnixSeconds t) const noexcept { return start_utc <= t && t < end_utc; }
  bool operator==(const AnalysisWindow&) const = default;
};

/// Bookkeeping that does not appear in BasicStats but is reported in the run
/// manifest.
struct IngestDiagnostics {
  std::uint64_t malformed_post_lines = 0;
  std::uint64_t malformed_comment_lines = 0;
  std::uint64_t duplicate_posts = 0;
  std::uint64_t duplicate_comments = 0;
  std::uint64_t out_of_window_posts = 0;
  std::uint64_t out_of_window_comments = 0;

  IngestDiagnostics& operator+=(const IngestDiagnostics& other);
  bool operator==(const IngestDiagnostics&) const = default;
};

class CorpusBuilder;

/// Windowed, linked collection of posts and the in-window comments on them.
///
/// Posts are ordered by id. Comments are grouped by owning post (in post
/// order) and ordered by (created_utc, id) inside a group, so every derived
/// report is independent of input order.
class Corpus {
 public:
  Corpus() = default;

  const AnalysisWindow& window() const noexcept { return window_; }
  std::span<const PostRecord> posts() const noexcept { return posts_; }
  std::span<const CommentRecord> comments() const noexcept { return comments_; }

  std::span<const CommentRecord> comments_of(std::size_t post_index) const noexcept {
    return std::span<const CommentRecord>(comments_).subspan(
        offsets_[post_index], offsets_[post_index + 1] - offsets_[post_index]);
  }
  std::optional<std::size_t> find_post(std::string_view id) const;

  /// A retained comment whose parent_id does not resolve to a retained record
  /// of the same thread.
  bool is_orphan(std::size_t comment_index) const noexcept { return orphan_[comment_index] != 0; }
  std::size_t orphan_count() const noexcept { return orphan_total_; }

  /// Unique in-window comments, including those on posts outside the window.
  std::uint64_t in_window_comment_count() const noexcept { return in_window_comments_; }
  const IngestDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  friend class CorpusBuilder;

  AnalysisWindow window_;
  std::vector<PostRecord> posts_;
  std::vector<CommentRecord> comments_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint8_t> orphan_;
  std::size_t orphan_total_ = 0;
  std::unordered_map<std::string, std::size_t> post_index_;
  std::uint64_t in_window_comments_ = 0;
  IngestDiagnostics diagnostics_;
};

/// Mergeable partial ingestion state. Feed records in any order, merge
/// partials in input order, then call build().
///
/// Duplicate ids keep the first occurrence. "First" is defined by input order,
/// which merge() preserves when `later` covers input that followed this one.
class CorpusBuilder {
 public:
  explicit CorpusBuilder(AnalysisWindow window = AnalysisWindow{0, 1}) : window_(window) {}

  void add_post(PostRecord post);
  void add_comment(CommentRecord comment);
  void note_malformed_post() { ++diagnostics_.malformed_post_lines; }
  void note_malformed_comment() { ++diagnostics_.malformed_comment_lines; }

  /// Parses one line; malformed rows are counted, blank lines ignored.
  void add_post_line(std::string_view line);
  void add_comment_line(std::string_view line);

  void merge(CorpusBuilder&& later);

  Corpus build() &&;

 private:
  AnalysisWindow window_;
  std::unordered_map<std::string, PostRecord> posts_;
  std::unordered_map<std::string, CommentRecord> comments_;
  IngestDiagnostics diagnostics_;
};

/// Convenience wrapper over CorpusBuilder for in-memory records.
Corpus build_corpus(std::span<const PostRecord> posts, std::span<const CommentRecord> comments,
                    const AnalysisWindow& window);

/// Parses the given lines on `shards` threads and merges the partial states.
/// The result is identical for every shard count.
Corpus ingest_lines(std::span<const std::string_view> post_lines,
                    std::span<const std::string_view> comment_lines, const AnalysisWindow& window,
                    unsigned shards = 1);

/// Reads newline-delimited JSON files. Throws Error{Io} when a file cannot be
/// opened.
std::vector<std::string> read_lines(const std::filesystem::path& path);
Corpus ingest_files(const std::filesystem::path& posts, const std::filesystem::path& comments,
                    const AnalysisWindow& window, unsigned shards = 1);

struct BasicStats {
  std::uint64_t n_posts = 0;
  std::uint64_t n_deleted_author_posts = 0;
  std::uint64_t n_zero_comment_posts = 0;
  std::uint64_t n_one_comment_posts = 0;
  std::uint64_t n_comments = 0;
  std::uint64_t n_comments_on_period_posts = 0;
  std::uint64_t n_disconnected_posts = 0;
  std::uint64_t n_removed_comments = 0;

  BasicStats& operator+=(const BasicStats& other);
  friend BasicStats operator+(BasicStats a, const BasicStats& b) { return a += b; }
  bool operator==(const BasicStats&) const = default;
};

BasicStats corpus_stats(const Corpus& corpus);

/// Flat, pretty-printed JSON object with sorted keys.
std::string to_json(const BasicStats& stats);

}  // namespace threadlens
