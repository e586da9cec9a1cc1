#pragma once

#include <string>
#include <vector>

#include "threadlens/records.hpp"

namespace threadlens::testing {

inline PostRecord make_post(std::string name, std::string author, UnixSeconds t, std::string subreddit = "s") {
  PostRecord p;
  p.name = std::move(name);
  p.author = std::move(author);
  p.created_utc = t;
  p.subreddit = std::move(subreddit);
  p.title = "t";
  return p;
}

inline CommentRecord make_comment(std::string name, std::string author, UnixSeconds t, std::string link_id,
                                  std::string parent_id = "", std::string body = "x") {
  CommentRecord c;
  c.name = std::move(name);
  c.author = std::move(author);
  c.created_utc = t;
  if (parent_id.empty()) parent_id = link_id;
  c.link_id = std::move(link_id);
  c.parent_id = std::move(parent_id);
  c.body = std::move(body);
  c.subreddit = "s";
  return c;
}

/// Comments of `post` at the given timestamps, all first-level, ids c<post>_<i>.
inline std::vector<CommentRecord> comments_at(const PostRecord& post, const std::vector<UnixSeconds>& times,
                                              const std::string& author = "someone") {
  std::vector<CommentRecord> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "t1_%s_%06zu", post.name.c_str() + 3, i);
    out.push_back(make_comment(id, author, times[i], post.name));
  }
  return out;
}

}  // namespace threadlens::testing
