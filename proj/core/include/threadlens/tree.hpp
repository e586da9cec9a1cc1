#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "threadlens/records.hpp"

namespace threadlens {

/// Comment tree rooted at a post. The post is level 0; first-level comments
/// are level 1. Comments whose parent chain never reaches the post (missing
/// parent, foreign parent, or a cycle) hang off a synthetic orphan root and
/// take no part in the structural metrics.
class DiscussionTree {
 public:
  static constexpr std::int32_t kRoot = -1;
  static constexpr std::int32_t kOrphanRoot = -2;

  struct Node {
    std::string id;
    std::string author;
    UnixSeconds created_utc = 0;
    std::int32_t parent = kRoot;  // node index, kRoot, or kOrphanRoot
    std::int32_t level = 0;       // 0 for orphans
  };

  DiscussionTree() = default;

  const std::string& post_id() const noexcept { return post_id_; }
  const std::string& post_author() const noexcept { return post_author_; }

  /// Nodes are ordered by comment id.
  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const std::int32_t> children(std::int32_t node) const noexcept;
  std::span<const std::int32_t> first_level() const noexcept { return first_level_; }

  bool is_orphan(std::int32_t node) const noexcept { return nodes_[node].parent == kOrphanRoot; }
  std::size_t attached_count() const noexcept { return nodes_.size() - orphan_count_; }
  std::size_t orphan_count() const noexcept { return orphan_count_; }
  /// Number of distinct parent cycles found (and broken) while building.
  std::size_t cycles_detected() const noexcept { return cycles_detected_; }

  /// Size of the subtree rooted at each first-level comment, aligned with
  /// first_level(). Includes the first-level comment itself.
  std::span<const std::size_t> first_level_subtree_sizes() const noexcept { return subtree_sizes_; }

  friend DiscussionTree build_tree(const PostRecord& post, std::span<const CommentRecord> comments);

 private:
  std::string post_id_;
  std::string post_author_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> child_offsets_;
  std::vector<std::int32_t> child_list_;
  std::vector<std::int32_t> first_level_;
  std::vector<std::size_t> subtree_sizes_;
  std::size_t orphan_count_ = 0;
  std::size_t cycles_detected_ = 0;
};

/// Builds the tree from the comments of one post. Comments with a foreign
/// link_id are treated as orphans. Duplicate ids keep the first occurrence.
DiscussionTree build_tree(const PostRecord& post, std::span<const CommentRecord> comments);

std::int32_t depth(const DiscussionTree& tree);
std::size_t breadth(const DiscussionTree& tree);

/// max_j(Comm_j) / sum_k(Comm_k) over first-level subtrees.
/// Throws Error{NoFirstLevelComments}.
double limelight_score(const DiscussionTree& tree);

struct HogAuthor {
  std::string author;
  std::string comment_id;
  bool same_as_post_author = false;
};

/// Author of the first-level comment with the largest subtree; ties go to the
/// earliest comment, then to the smaller id.
/// Throws Error{NoFirstLevelComments}.
HogAuthor hog_author(const DiscussionTree& tree);

struct TreeMetrics {
  std::size_t n_comments = 0;  // attached (non-orphan) comments
  std::int32_t depth = 0;
  std::size_t breadth = 0;
  std::optional<double> limelight_score;
  std::optional<HogAuthor> hog;
};

TreeMetrics measure(const DiscussionTree& tree);

}  // namespace threadlens
