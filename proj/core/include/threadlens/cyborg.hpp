#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "threadlens/ingest.hpp"

namespace threadlens {

struct CyborgParams {
  UnixSeconds latency_max = 6;
  std::size_t min_chars = 100;  // the first comment must be strictly longer
};

/// Number of Unicode scalar values in a UTF-8 string (continuation bytes are
/// not counted).
std::size_t unicode_length(std::string_view text) noexcept;

/// True if the text contains "http://", "https://" or "www.".
bool contains_link(std::string_view text) noexcept;

/// Earliest comment by (created_utc, id); nullptr when there are none.
const CommentRecord* first_comment(std::span<const CommentRecord> comments) noexcept;

/// created_utc of the first comment minus that of the post, clamped at 0.
std::optional<UnixSeconds> first_comment_latency(const PostRecord& post,
                                                 std::span<const CommentRecord> comments);

/// Any comment by another author, or a score moved away from the default 1.
bool is_successful(const PostRecord& post, std::span<const CommentRecord> comments);

struct CyborgVerdict {
  std::optional<UnixSeconds> first_comment_latency;
  bool same_author = false;
  std::size_t first_comment_chars = 0;
  bool long_first_comment = false;
  bool contains_link = false;
  bool is_cyborg_like = false;
  bool is_successful = false;
};

CyborgVerdict is_cyborg_like(const PostRecord& post, std::span<const CommentRecord> comments,
                             const CyborgParams& params = {});

/// Counters over posts whose first comment arrives within latency_max (the
/// "_6s" field name follows the default threshold).
/// The "non cyborg" rows cover fast posts whose first comment is by the post
/// author but fails the length or link test. The fast_short_* counters give
/// the alternative comparison set: fast posts whose first comment has at most
/// min_chars characters, regardless of author.
struct CyborgReport {
  std::uint64_t posts_first_comment_within_6s = 0;
  std::uint64_t posts_same_author_first_comment = 0;
  std::uint64_t cyborg_like_posts = 0;
  std::uint64_t successful_cyborg = 0;
  std::uint64_t unsuccessful_cyborg = 0;
  std::uint64_t successful_non_cyborg = 0;
  std::uint64_t unsuccessful_non_cyborg = 0;
  std::uint64_t fast_short_comment_posts = 0;
  std::uint64_t fast_short_comment_successful = 0;

  void add(const CyborgVerdict& verdict, const CyborgParams& params);
  CyborgReport& operator+=(const CyborgReport& other);
  bool operator==(const CyborgReport&) const = default;
};

CyborgReport cyborg_report(const Corpus& corpus, const CyborgParams& params = {});

std::string to_json(const CyborgReport& report);

}  // namespace threadlens
