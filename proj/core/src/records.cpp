#include "threadlens/records.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include <json.hpp>

namespace threadlens {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::BadPrefix: return "BadPrefix";
    case ErrorCode::BadWindow: return "BadWindow";
    case ErrorCode::TooFewEvents: return "TooFewEvents";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::NoFirstLevelComments: return "NoFirstLevelComments";
    case ErrorCode::BelowThreshold: return "BelowThreshold";
    case ErrorCode::BadBinSpec: return "BadBinSpec";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::Undefined: return "Undefined";
    case ErrorCode::NoPosts: return "NoPosts";
    case ErrorCode::NoComments: return "NoComments";
    case ErrorCode::ZeroPosts: return "ZeroPosts";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

using nlohmann::json;

json parse_object(std::string_view line) {
  json row = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (row.is_discarded() || !row.is_object()) {
    throw Error(ErrorCode::MalformedJson, "row is not a JSON object");
  }
  return row;
}

const json* find(const json& row, const char* key) {
  auto it = row.find(key);
  if (it == row.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string required_string(const json& row, const char* key) {
  const json* value = find(row, key);
  if (value == nullptr || !value->is_string()) {
    throw Error(ErrorCode::MissingField, std::string("missing string field '") + key + "'");
  }
  return value->get<std::string>();
}

std::string optional_string(const json& row, const char* key, std::string_view fallback = {}) {
  const json* value = find(row, key);
  if (value == nullptr || !value->is_string()) return std::string(fallback);
  return value->get<std::string>();
}

std::optional<std::int64_t> integer_of(const json& value) {
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_number_float()) return static_cast<std::int64_t>(value.get<double>());
  if (value.is_string()) {
    const auto& text = value.get_ref<const std::string&>();
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec == std::errc() && ptr == text.data() + text.size()) return out;
  }
  return std::nullopt;
}

std::int64_t optional_integer(const json& row, const char* key, std::int64_t fallback) {
  const json* value = find(row, key);
  if (value == nullptr) return fallback;
  return integer_of(*value).value_or(fallback);
}

UnixSeconds required_timestamp(const json& row) {
  const json* value = find(row, "created_utc");
  std::optional<std::int64_t> ts = value ? integer_of(*value) : std::nullopt;
  if (!ts || *ts <= 0) throw Error(ErrorCode::MissingField, "missing or non-positive created_utc");
  return *ts;
}

std::string author_of(const json& row) {
  std::string author = optional_string(row, "author", kDeletedMarker);
  if (author.empty()) author = kDeletedMarker;
  return author;
}

}  // namespace

PostRecord parse_post_line(std::string_view line) {
  const json row = parse_object(line);
  PostRecord post;
  post.name = required_string(row, "name");
  post.created_utc = required_timestamp(row);
  if (!has_prefix(post.name, kPostPrefix) || post.name.size() == kPostPrefix.size()) {
    throw Error(ErrorCode::BadPrefix, "post name '" + post.name + "' lacks t3_ prefix");
  }
  post.author = author_of(row);
  post.num_comments = std::max<std::int64_t>(0, optional_integer(row, "num_comments", 0));
  post.subreddit = optional_string(row, "subreddit");
  post.score = optional_integer(row, "score", 1);
  post.title = optional_string(row, "title");
  post.selftext = optional_string(row, "selftext");
  return post;
}

CommentRecord parse_comment_line(std::string_view line) {
  const json row = parse_object(line);
  CommentRecord comment;
  comment.name = required_string(row, "name");
  comment.created_utc = required_timestamp(row);
  comment.link_id = required_string(row, "link_id");
  comment.parent_id = required_string(row, "parent_id");
  if (!has_prefix(comment.name, kCommentPrefix) || comment.name.size() == kCommentPrefix.size()) {
    throw Error(ErrorCode::BadPrefix, "comment name '" + comment.name + "' lacks t1_ prefix");
  }
  if (!has_prefix(comment.link_id, kPostPrefix)) {
    throw Error(ErrorCode::BadPrefix, "link_id '" + comment.link_id + "' lacks t3_ prefix");
  }
  if (!has_prefix(comment.parent_id, kPostPrefix) && !has_prefix(comment.parent_id, kCommentPrefix)) {
    throw Error(ErrorCode::BadPrefix, "parent_id '" + comment.parent_id + "' is neither t1_ nor t3_");
  }
  comment.author = author_of(row);
  comment.body = optional_string(row, "body");
  comment.subreddit = optional_string(row, "subreddit");
  comment.score = optional_integer(row, "score", 1);
  return comment;
}

std::string to_json_line(const PostRecord& post) {
  json row = {
      {"name", post.name},
      {"author", post.author},
      {"created_utc", post.created_utc},
      {"num_comments", post.num_comments},
      {"subreddit", post.subreddit},
      {"score", post.score},
      {"title", post.title},
      {"selftext", post.selftext},
  };
  return row.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string to_json_line(const CommentRecord& comment) {
  json row = {
      {"name", comment.name},
      {"author", comment.author},
      {"created_utc", comment.created_utc},
      {"link_id", comment.link_id},
      {"parent_id", comment.parent_id},
      {"body", comment.body},
      {"subreddit", comment.subreddit},
      {"score", comment.score},
  };
  return row.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace threadlens
