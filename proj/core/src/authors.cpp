#include "threadlens/authors.hpp"

namespace threadlens {

std::string_view to_string(AuthorCategory c) noexcept {
  switch (c) {
    case AuthorCategory::ProducerOnly: return "producer_only";
    case AuthorCategory::ConsumerOnly: return "consumer_only";
    case AuthorCategory::Both: return "both";
  }
  return "unknown";
}

std::string_view to_string(PerPostClass c) noexcept {
  switch (c) {
    case PerPostClass::LessThanOnePerPost: return "less_than_one";
    case PerPostClass::ExactlyOnePerPost: return "exactly_one";
    case PerPostClass::MoreThanOnePerPost: return "more_than_one";
  }
  return "unknown";
}

AuthorCategory AuthorProfile::category() const noexcept {
  if (n_posts > 0 && n_comments_made > 0) return AuthorCategory::Both;
  return n_posts > 0 ? AuthorCategory::ProducerOnly : AuthorCategory::ConsumerOnly;
}

std::map<std::string, AuthorProfile> author_profiles(const Corpus& corpus) {
  std::map<std::string, AuthorProfile> profiles;
  auto profile = [&](const std::string& author) -> AuthorProfile& {
    auto [it, fresh] = profiles.try_emplace(author);
    if (fresh) it->second.author = author;
    return it->second;
  };
  const auto posts = corpus.posts();
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const auto& post = posts[i];
    const bool post_author_known = !is_deleted_author(post.author);
    if (post_author_known) ++profile(post.author).n_posts;
    for (const auto& c : corpus.comments_of(i)) {
      if (is_deleted_author(c.author)) continue;
      auto& commenter = profile(c.author);
      ++commenter.n_comments_made;
      if (c.author == post.author) continue;
      ++commenter.comments_on_others;
      if (post_author_known) ++profile(post.author).effective_received;
    }
  }
  return profiles;
}

AuthorCategoryCounts author_categories(const std::map<std::string, AuthorProfile>& profiles) {
  AuthorCategoryCounts counts;
  for (const auto& [id, p] : profiles) {
    ++counts.total_active;
    switch (p.category()) {
      case AuthorCategory::ProducerOnly: ++counts.producers_only; break;
      case AuthorCategory::ConsumerOnly: ++counts.consumers_only; break;
      case AuthorCategory::Both: ++counts.both; break;
    }
  }
  return counts;
}

AuthorCategoryCounts author_categories(const Corpus& corpus) {
  return author_categories(author_profiles(corpus));
}

double interaction_score(const AuthorProfile& p) {
  const std::uint64_t denom = p.effective_received + p.comments_on_others;
  if (denom == 0) throw Error(ErrorCode::Undefined, "author " + p.author + " has A + B = 0");
  return static_cast<double>(p.effective_received) / static_cast<double>(denom);
}

EffectivePerPost effective_comments_per_post(const AuthorProfile& p) {
  if (p.n_posts == 0) throw Error(ErrorCode::NoPosts, "author " + p.author + " has no posts");
  EffectivePerPost out;
  out.average = static_cast<double>(p.effective_received) / static_cast<double>(p.n_posts);
  if (p.effective_received < p.n_posts) {
    out.cls = PerPostClass::LessThanOnePerPost;
  } else if (p.effective_received == p.n_posts) {
    out.cls = PerPostClass::ExactlyOnePerPost;
  } else {
    out.cls = PerPostClass::MoreThanOnePerPost;
  }
  return out;
}

void InteractionGraph::add_edge(const std::string& src, const std::string& dst, std::uint64_t weight) {
  if (src == dst || weight == 0) return;
  edges_[{src, dst}] += weight;
  out_[src] += weight;
  in_[dst] += weight;
  total_ += weight;
}

std::uint64_t InteractionGraph::in_degree(const std::string& author) const {
  auto it = in_.find(author);
  return it == in_.end() ? 0 : it->second;
}

std::uint64_t InteractionGraph::out_degree(const std::string& author) const {
  auto it = out_.find(author);
  return it == out_.end() ? 0 : it->second;
}

InteractionGraph build_interaction_graph(const Corpus& corpus) {
  InteractionGraph graph;
  const auto posts = corpus.posts();
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const auto& post = posts[i];
    if (is_deleted_author(post.author)) continue;
    for (const auto& c : corpus.comments_of(i)) {
      if (!is_deleted_author(c.author)) graph.add_edge(c.author, post.author);
    }
  }
  return graph;
}

}  // namespace threadlens
