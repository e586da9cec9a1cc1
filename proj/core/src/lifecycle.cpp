#include "threadlens/lifecycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace threadlens {

PostAge post_age(const PostRecord& post, std::span<const CommentRecord> comments) {
  PostAge out;
  if (comments.empty()) return out;
  UnixSeconds last = comments.front().created_utc;
  for (const auto& c : comments) last = std::max(last, c.created_utc);
  const UnixSeconds age = last - post.created_utc;
  out.clamped = age < 0;
  out.age = std::max<UnixSeconds>(age, 0);
  return out;
}

std::optional<double> MayflyResult::fraction() const {
  if (n_aged == 0) return std::nullopt;
  return static_cast<double>(n_within) / static_cast<double>(n_aged);
}

std::optional<double> MayflyResult::fraction_over_all_posts() const {
  if (n_posts == 0) return std::nullopt;
  return static_cast<double>(n_within) / static_cast<double>(n_posts);
}

MayflyResult& MayflyResult::operator+=(const MayflyResult& other) {
  n_posts += other.n_posts;
  n_aged += other.n_aged;
  n_within += other.n_within;
  n_clamped += other.n_clamped;
  return *this;
}

MayflyResult mayfly_fraction(const Corpus& corpus, UnixSeconds threshold) {
  MayflyResult out;
  const auto posts = corpus.posts();
  out.n_posts = posts.size();
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const PostAge a = post_age(posts[i], corpus.comments_of(i));
    if (!a.age) continue;
    ++out.n_aged;
    if (a.clamped) ++out.n_clamped;
    if (*a.age <= threshold) ++out.n_within;
  }
  return out;
}

Histogram age_histogram(const Corpus& corpus, const BinSpec& bins) {
  Histogram h(bins);
  const auto posts = corpus.posts();
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const PostAge a = post_age(posts[i], corpus.comments_of(i));
    if (a.age) h.add(static_cast<double>(*a.age));
  }
  return h;
}

std::string_view to_string(EvolutionClass c) noexcept {
  switch (c) {
    case EvolutionClass::EarlyBloomer: return "early_bloomer";
    case EvolutionClass::Steady: return "steady";
    case EvolutionClass::LateBloomer: return "late_bloomer";
  }
  return "unknown";
}

UnixSeconds time_to_fraction(const PostRecord& post, std::span<const CommentRecord> comments,
                             double fraction) {
  if (comments.empty()) throw Error(ErrorCode::NoComments, "post " + post.name);
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::BadValue, "fraction must lie in (0, 1]");
  }
  const std::size_t total = comments.size();
  // The epsilon absorbs rounding in fraction*total so that e.g. 0.7*10 needs 7.
  auto needed = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total) - 1e-9));
  needed = std::clamp<std::size_t>(needed, 1, total);

  std::vector<UnixSeconds> times;
  times.reserve(total);
  for (const auto& c : comments) times.push_back(c.created_utc);
  std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(needed - 1), times.end());
  return std::max<UnixSeconds>(times[needed - 1] - post.created_utc, 0);
}

Evolution classify_evolution(const PostRecord& post, std::span<const CommentRecord> comments,
                             const LifecycleParams& params) {
  if (comments.size() < params.min_comments || comments.empty()) {
    throw Error(ErrorCode::BelowThreshold, "post " + post.name + " has " +
                                               std::to_string(comments.size()) + " comments, needs " +
                                               std::to_string(params.min_comments));
  }
  Evolution e;
  e.total_comments = comments.size();
  e.t_threshold = time_to_fraction(post, comments, params.fraction);
  if (e.t_threshold <= params.t_early) {
    e.cls = EvolutionClass::EarlyBloomer;
  } else if (e.t_threshold > params.t_late) {
    e.cls = EvolutionClass::LateBloomer;
  } else {
    e.cls = EvolutionClass::Steady;
  }
  return e;
}

}  // namespace threadlens
