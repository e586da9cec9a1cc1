#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "threadlens/error.hpp"

namespace threadlens {

using UnixSeconds = std::int64_t;

inline constexpr std::string_view kDeletedMarker = "[deleted]";
inline constexpr std::string_view kRemovedMarker = "[removed]";
inline constexpr std::string_view kPostPrefix = "t3_";
inline constexpr std::string_view kCommentPrefix = "t1_";

inline bool is_deleted_author(std::string_view author) noexcept { return author == kDeletedMarker; }

inline bool has_prefix(std::string_view id, std::string_view prefix) noexcept {
  return id.size() >= prefix.size() && id.substr(0, prefix.size()) == prefix;
}

struct PostRecord {
  std::string name;
  std::string author{kDeletedMarker};
  UnixSeconds created_utc = 0;
  std::int64_t num_comments = 0;
  std::string subreddit;
  std::int64_t score = 1;
  std::string title;
  std::string selftext;

  bool operator==(const PostRecord&) const = default;
};

struct CommentRecord {
  std::string name;
  std::string author{kDeletedMarker};
  UnixSeconds created_utc = 0;
  std::string link_id;
  std::string parent_id;
  std::string body;
  std::string subreddit;
  std::int64_t score = 1;

  bool operator==(const CommentRecord&) const = default;
};

/// Parses one dump row. Unknown keys are ignored; a missing or null author
/// becomes the deleted marker. `created_utc` may be a JSON number or a
/// decimal string (both occur in public dumps).
/// Throws Error{MalformedJson | MissingField | BadPrefix}.
PostRecord parse_post_line(std::string_view line);
CommentRecord parse_comment_line(std::string_view line);

/// Single-line JSON with sorted keys and no trailing newline.
std::string to_json_line(const PostRecord& post);
std::string to_json_line(const CommentRecord& comment);

}  // namespace threadlens
