#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "threadlens/histogram.hpp"
#include "threadlens/ingest.hpp"

namespace threadlens {

inline constexpr UnixSeconds kOneDay = 86'400;
inline constexpr UnixSeconds kThirtyDays = 30 * kOneDay;

struct PostAge {
  std::optional<UnixSeconds> age;  // empty for zero-comment posts
  bool clamped = false;            // last comment predates the post
};

/// Seconds from post creation to its last comment. Comments may be unsorted.
PostAge post_age(const PostRecord& post, std::span<const CommentRecord> comments);

struct MayflyResult {
  std::uint64_t n_posts = 0;
  std::uint64_t n_aged = 0;
  std::uint64_t n_within = 0;  // aged posts with age <= threshold
  std::uint64_t n_clamped = 0;

  /// Over aged posts; empty when no post has a comment.
  std::optional<double> fraction() const;
  /// Over all posts, counting zero-comment posts as not within.
  std::optional<double> fraction_over_all_posts() const;

  MayflyResult& operator+=(const MayflyResult& other);
};

MayflyResult mayfly_fraction(const Corpus& corpus, UnixSeconds threshold = kOneDay);

/// Histogram over the ages of posts with at least one comment.
Histogram age_histogram(const Corpus& corpus, const BinSpec& bins = BinSpec::log(20));

enum class EvolutionClass { EarlyBloomer, Steady, LateBloomer };

std::string_view to_string(EvolutionClass c) noexcept;

struct LifecycleParams {
  double fraction = 0.75;
  UnixSeconds t_early = kOneDay;
  UnixSeconds t_late = kThirtyDays;
  std::size_t min_comments = 500;
};

struct Evolution {
  EvolutionClass cls = EvolutionClass::Steady;
  UnixSeconds t_threshold = 0;  // seconds to reach ceil(fraction * total) comments
  std::size_t total_comments = 0;
};

/// Seconds after post creation at which the cumulative comment count first
/// reaches ceil(fraction * total). Throws Error{NoComments} or Error{BadValue}.
UnixSeconds time_to_fraction(const PostRecord& post, std::span<const CommentRecord> comments,
                             double fraction);

/// EarlyBloomer if t <= t_early, LateBloomer if t > t_late, otherwise Steady.
/// Throws Error{BelowThreshold} for posts with fewer than min_comments.
Evolution classify_evolution(const PostRecord& post, std::span<const CommentRecord> comments,
                             const LifecycleParams& params = {});

}  // namespace threadlens
