#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "threadlens/histogram.hpp"
#include "threadlens/ingest.hpp"

namespace threadlens {

enum class SeriesKind { Posting, Commenting, PostComments };

std::string_view to_string(SeriesKind kind) noexcept;

/// Differences between consecutive timestamps. Throws Error{TooFewEvents} for
/// fewer than two events and Error{BadValue} if the input is not sorted.
std::vector<double> interevent_times(std::span<const UnixSeconds> timestamps);

/// Population moments of the intervals and B = (sigma - mu) / (sigma + mu).
struct BurstinessResult {
  std::size_t n_events = 0;
  std::size_t n_intervals = 0;
  double mean = 0;
  double stddev = 0;
  double b = 0;

  bool operator==(const BurstinessResult&) const = default;
};

/// Throws Error{TooFewEvents} for an empty input, Error{BadValue} for negative
/// or non-finite intervals and Error{DegenerateSeries} when every interval is 0.
BurstinessResult burstiness(std::span<const double> taus);

/// Default B histogram: 40 bins of width 0.05 over [-1, 1).
inline BinSpec burstiness_bins() { return BinSpec::linear(0.05, -1.0); }

struct BurstinessSummary {
  SeriesKind kind = SeriesKind::Posting;
  std::size_t min_events = 0;
  std::map<std::string, BurstinessResult> per_owner;
  Histogram histogram{burstiness_bins()};
  std::size_t degenerate = 0;  // qualifying owners whose events all coincide

  /// Arithmetic mean of B over per_owner, in owner order.
  std::optional<double> mean_b() const;
};

/// Authors (deleted marker excluded) with at least `min_posts` posts.
BurstinessSummary author_posting_burstiness(const Corpus& corpus, std::size_t min_posts = 100,
                                            const BinSpec& bins = burstiness_bins());

/// Authors with at least `min_comments` comments.
BurstinessSummary author_commenting_burstiness(const Corpus& corpus, std::size_t min_comments = 500,
                                               const BinSpec& bins = burstiness_bins());

/// Posts with at least `min_comments` comments, over all comment timestamps.
BurstinessSummary post_comment_burstiness(const Corpus& corpus, std::size_t min_comments = 500,
                                          const BinSpec& bins = burstiness_bins());

}  // namespace threadlens
