#include "threadlens/tree.hpp"

#include <algorithm>
#include <unordered_map>

namespace threadlens {

std::span<const std::int32_t> DiscussionTree::children(std::int32_t node) const noexcept {
  const auto slot = static_cast<std::size_t>(node + 1);  // slot 0 is the post
  return std::span<const std::int32_t>(child_list_)
      .subspan(child_offsets_[slot], child_offsets_[slot + 1] - child_offsets_[slot]);
}

DiscussionTree build_tree(const PostRecord& post, std::span<const CommentRecord> comments) {
  DiscussionTree tree;
  tree.post_id_ = post.name;
  tree.post_author_ = post.author;

  std::vector<const CommentRecord*> ordered;
  ordered.reserve(comments.size());
  for (const auto& c : comments) ordered.push_back(&c);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const CommentRecord* a, const CommentRecord* b) { return a->name < b->name; });
  ordered.erase(std::unique(ordered.begin(), ordered.end(),
                            [](const CommentRecord* a, const CommentRecord* b) {
                              return a->name == b->name;
                            }),
                ordered.end());

  const auto n = static_cast<std::int32_t>(ordered.size());
  std::unordered_map<std::string_view, std::int32_t> index;
  index.reserve(ordered.size());
  for (std::int32_t i = 0; i < n; ++i) index.emplace(ordered[i]->name, i);

  auto& nodes = tree.nodes_;
  nodes.resize(ordered.size());
  for (std::int32_t i = 0; i < n; ++i) {
    const CommentRecord& c = *ordered[i];
    auto& node = nodes[i];
    node.id = c.name;
    node.author = c.author;
    node.created_utc = c.created_utc;
    if (c.link_id != post.name) {
      node.parent = DiscussionTree::kOrphanRoot;
    } else if (c.parent_id == post.name) {
      node.parent = DiscussionTree::kRoot;
    } else if (auto it = index.find(c.parent_id); it != index.end() && it->second != i) {
      node.parent = it->second;
    } else {
      // Unknown parent, a parent in another thread, or a self-loop.
      node.parent = DiscussionTree::kOrphanRoot;
      if (c.parent_id == c.name) ++tree.cycles_detected_;
    }
  }

  // Resolve levels by walking parent chains; state 1 marks the current walk so
  // that revisiting it exposes a cycle.
  enum : std::uint8_t { kUnseen = 0, kOnPath = 1, kDone = 2 };
  std::vector<std::uint8_t> state(ordered.size(), kUnseen);
  std::vector<std::int32_t> path;
  for (std::int32_t start = 0; start < n; ++start) {
    if (state[start] == kDone) continue;
    path.clear();
    std::int32_t at = start;
    std::int32_t base_level = 0;
    bool reaches_root = false;
    while (true) {
      if (at == DiscussionTree::kRoot) {
        reaches_root = true;
        break;
      }
      if (at == DiscussionTree::kOrphanRoot) break;
      if (state[at] == kDone) {
        reaches_root = nodes[at].parent != DiscussionTree::kOrphanRoot;
        base_level = nodes[at].level;
        break;
      }
      if (state[at] == kOnPath) {
        // Every node from the first visit of `at` onwards is on the cycle.
        ++tree.cycles_detected_;
        break;
      }
      state[at] = kOnPath;
      path.push_back(at);
      at = nodes[at].parent;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      auto& node = nodes[*it];
      if (reaches_root) {
        node.level = ++base_level;
      } else {
        node.parent = DiscussionTree::kOrphanRoot;
        node.level = 0;
      }
      state[*it] = kDone;
    }
  }

  // Children adjacency in CSR form; slot 0 is the post, slot i+1 is node i.
  tree.child_offsets_.assign(ordered.size() + 2, 0);
  for (const auto& node : nodes) {
    if (node.parent == DiscussionTree::kOrphanRoot) {
      ++tree.orphan_count_;
      continue;
    }
    ++tree.child_offsets_[static_cast<std::size_t>(node.parent + 1) + 1];
  }
  for (std::size_t s = 1; s < tree.child_offsets_.size(); ++s) {
    tree.child_offsets_[s] += tree.child_offsets_[s - 1];
  }
  tree.child_list_.resize(tree.child_offsets_.back());
  std::vector<std::size_t> fill(tree.child_offsets_.begin(), tree.child_offsets_.end() - 1);
  for (std::int32_t i = 0; i < n; ++i) {
    if (nodes[i].parent == DiscussionTree::kOrphanRoot) continue;
    tree.child_list_[fill[static_cast<std::size_t>(nodes[i].parent + 1)]++] = i;
  }

  const auto roots = tree.children(DiscussionTree::kRoot);
  tree.first_level_.assign(roots.begin(), roots.end());

  // Subtree sizes: attached nodes sorted by decreasing level so children are
  // folded into parents before the parents themselves are read.
  std::vector<std::int32_t> by_level;
  by_level.reserve(ordered.size());
  for (std::int32_t i = 0; i < n; ++i) {
    if (nodes[i].parent != DiscussionTree::kOrphanRoot) by_level.push_back(i);
  }
  std::sort(by_level.begin(), by_level.end(),
            [&](std::int32_t a, std::int32_t b) { return nodes[a].level > nodes[b].level; });
  std::vector<std::size_t> size(ordered.size(), 1);
  for (std::int32_t i : by_level) {
    if (nodes[i].parent >= 0) size[nodes[i].parent] += size[i];
  }
  tree.subtree_sizes_.reserve(tree.first_level_.size());
  for (std::int32_t root : tree.first_level_) tree.subtree_sizes_.push_back(size[root]);
  return tree;
}

std::int32_t depth(const DiscussionTree& tree) {
  std::int32_t best = 0;
  for (const auto& node : tree.nodes()) best = std::max(best, node.level);
  return best;
}

std::size_t breadth(const DiscussionTree& tree) {
  std::vector<std::size_t> width;
  for (const auto& node : tree.nodes()) {
    if (node.parent == DiscussionTree::kOrphanRoot) continue;
    if (static_cast<std::size_t>(node.level) >= width.size()) width.resize(node.level + 1, 0);
    ++width[node.level];
  }
  return width.empty() ? 0 : *std::max_element(width.begin(), width.end());
}

double limelight_score(const DiscussionTree& tree) {
  const auto sizes = tree.first_level_subtree_sizes();
  if (sizes.empty()) throw Error(ErrorCode::NoFirstLevelComments, "post " + tree.post_id());
  std::size_t total = 0;
  std::size_t largest = 0;
  for (std::size_t s : sizes) {
    total += s;
    largest = std::max(largest, s);
  }
  return static_cast<double>(largest) / static_cast<double>(total);
}

HogAuthor hog_author(const DiscussionTree& tree) {
  const auto roots = tree.first_level();
  const auto sizes = tree.first_level_subtree_sizes();
  if (roots.empty()) throw Error(ErrorCode::NoFirstLevelComments, "post " + tree.post_id());
  const auto nodes = tree.nodes();
  std::size_t best = 0;
  for (std::size_t j = 1; j < roots.size(); ++j) {
    const auto& cand = nodes[roots[j]];
    const auto& cur = nodes[roots[best]];
    if (sizes[j] != sizes[best]) {
      if (sizes[j] > sizes[best]) best = j;
    } else if (cand.created_utc != cur.created_utc) {
      if (cand.created_utc < cur.created_utc) best = j;
    } else if (cand.id < cur.id) {
      best = j;
    }
  }
  const auto& hog = nodes[roots[best]];
  return HogAuthor{hog.author, hog.id, hog.author == tree.post_author()};
}

TreeMetrics measure(const DiscussionTree& tree) {
  TreeMetrics m;
  m.n_comments = tree.attached_count();
  m.depth = depth(tree);
  m.breadth = breadth(tree);
  if (!tree.first_level().empty()) {
    m.limelight_score = limelight_score(tree);
    m.hog = hog_author(tree);
  }
  return m;
}

}  // namespace threadlens
