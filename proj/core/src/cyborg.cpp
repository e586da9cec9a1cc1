#include "threadlens/cyborg.hpp"

#include <algorithm>

#include <json.hpp>

namespace threadlens {

std::size_t unicode_length(std::string_view text) noexcept {
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char ch) {
    return (static_cast<unsigned char>(ch) & 0xC0) != 0x80;
  }));
}

bool contains_link(std::string_view text) noexcept {
  return text.find("http://") != std::string_view::npos ||
         text.find("https://") != std::string_view::npos || text.find("www.") != std::string_view::npos;
}

const CommentRecord* first_comment(std::span<const CommentRecord> comments) noexcept {
  const CommentRecord* best = nullptr;
  for (const auto& c : comments) {
    if (best == nullptr || c.created_utc < best->created_utc ||
        (c.created_utc == best->created_utc && c.name < best->name)) {
      best = &c;
    }
  }
  return best;
}

std::optional<UnixSeconds> first_comment_latency(const PostRecord& post,
                                                 std::span<const CommentRecord> comments) {
  const CommentRecord* first = first_comment(comments);
  if (first == nullptr) return std::nullopt;
  return std::max<UnixSeconds>(first->created_utc - post.created_utc, 0);
}

bool is_successful(const PostRecord& post, std::span<const CommentRecord> comments) {
  if (post.score != 1) return true;
  return std::any_of(comments.begin(), comments.end(),
                     [&](const CommentRecord& c) { return c.author != post.author; });
}

CyborgVerdict is_cyborg_like(const PostRecord& post, std::span<const CommentRecord> comments,
                             const CyborgParams& params) {
  CyborgVerdict v;
  v.is_successful = is_successful(post, comments);
  const CommentRecord* first = first_comment(comments);
  if (first == nullptr) return v;
  v.first_comment_latency = std::max<UnixSeconds>(first->created_utc - post.created_utc, 0);
  // Two deleted markers say nothing about identity.
  v.same_author = first->author == post.author && !is_deleted_author(post.author);
  v.first_comment_chars = unicode_length(first->body);
  v.long_first_comment = v.first_comment_chars > params.min_chars;
  v.contains_link = contains_link(first->body);
  v.is_cyborg_like = *v.first_comment_latency <= params.latency_max && v.same_author &&
                     v.long_first_comment && !v.contains_link;
  return v;
}

void CyborgReport::add(const CyborgVerdict& v, const CyborgParams& params) {
  if (!v.first_comment_latency || *v.first_comment_latency > params.latency_max) return;
  ++posts_first_comment_within_6s;
  if (!v.long_first_comment) {
    ++fast_short_comment_posts;
    if (v.is_successful) ++fast_short_comment_successful;
  }
  if (!v.same_author) return;
  ++posts_same_author_first_comment;
  if (v.is_cyborg_like) {
    ++cyborg_like_posts;
    ++(v.is_successful ? successful_cyborg : unsuccessful_cyborg);
  } else {
    ++(v.is_successful ? successful_non_cyborg : unsuccessful_non_cyborg);
  }
}

CyborgReport& CyborgReport::operator+=(const CyborgReport& o) {
  posts_first_comment_within_6s += o.posts_first_comment_within_6s;
  posts_same_author_first_comment += o.posts_same_author_first_comment;
  cyborg_like_posts += o.cyborg_like_posts;
  successful_cyborg += o.successful_cyborg;
  unsuccessful_cyborg += o.unsuccessful_cyborg;
  successful_non_cyborg += o.successful_non_cyborg;
  unsuccessful_non_cyborg += o.unsuccessful_non_cyborg;
  fast_short_comment_posts += o.fast_short_comment_posts;
  fast_short_comment_successful += o.fast_short_comment_successful;
  return *this;
}

CyborgReport cyborg_report(const Corpus& corpus, const CyborgParams& params) {
  CyborgReport report;
  const auto posts = corpus.posts();
  for (std::size_t i = 0; i < posts.size(); ++i) {
    report.add(is_cyborg_like(posts[i], corpus.comments_of(i), params), params);
  }
  return report;
}

std::string to_json(const CyborgReport& r) {
  nlohmann::json j = {
      {"posts_first_comment_within_6s", r.posts_first_comment_within_6s},
      {"posts_same_author_first_comment", r.posts_same_author_first_comment},
      {"cyborg_like_posts", r.cyborg_like_posts},
      {"successful_cyborg", r.successful_cyborg},
      {"unsuccessful_cyborg", r.unsuccessful_cyborg},
      {"successful_non_cyborg", r.successful_non_cyborg},
      {"unsuccessful_non_cyborg", r.unsuccessful_non_cyborg},
      {"fast_short_comment_posts", r.fast_short_comment_posts},
      {"fast_short_comment_successful", r.fast_short_comment_successful},
  };
  return j.dump(2) + "\n";
}

}  // namespace threadlens
