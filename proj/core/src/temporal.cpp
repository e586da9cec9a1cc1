#include "threadlens/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace threadlens {

std::string_view to_string(SeriesKind kind) noexcept {
  switch (kind) {
    case SeriesKind::Posting: return "posting";
    case SeriesKind::Commenting: return "commenting";
    case SeriesKind::PostComments: return "post_comments";
  }
  return "unknown";
}

std::vector<double> interevent_times(std::span<const UnixSeconds> timestamps) {
  if (timestamps.size() < 2) throw Error(ErrorCode::TooFewEvents, "need at least two events");
  std::vector<double> taus;
  taus.reserve(timestamps.size() - 1);
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (timestamps[i] < timestamps[i - 1]) throw Error(ErrorCode::BadValue, "timestamps are not sorted");
    taus.push_back(static_cast<double>(timestamps[i] - timestamps[i - 1]));
  }
  return taus;
}

BurstinessResult burstiness(std::span<const double> taus) {
  if (taus.empty()) throw Error(ErrorCode::TooFewEvents, "need at least one interval");
  long double sum = 0;
  double lo = taus.front();
  double hi = taus.front();
  for (double t : taus) {
    if (!std::isfinite(t) || t < 0) throw Error(ErrorCode::BadValue, "intervals must be finite and >= 0");
    sum += t;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  const auto n = static_cast<long double>(taus.size());
  const long double mean = sum / n;
  long double var = 0;
  if (lo != hi) {
    for (double t : taus) {
      const long double d = t - mean;
      var += d * d;
    }
    var /= n;
  }
  const long double sigma = std::sqrt(var);
  if (sigma + mean == 0) throw Error(ErrorCode::DegenerateSeries, "all events are simultaneous");

  BurstinessResult r;
  r.n_intervals = taus.size();
  r.n_events = taus.size() + 1;
  r.mean = static_cast<double>(mean);
  r.stddev = static_cast<double>(sigma);
  r.b = static_cast<double>((sigma - mean) / (sigma + mean));
  return r;
}

std::optional<double> BurstinessSummary::mean_b() const {
  if (per_owner.empty()) return std::nullopt;
  long double sum = 0;
  for (const auto& [owner, r] : per_owner) sum += r.b;
  return static_cast<double>(sum / static_cast<long double>(per_owner.size()));
}

namespace {

BurstinessSummary summarize(SeriesKind kind, std::size_t min_events, const BinSpec& bins,
                            std::unordered_map<std::string, std::vector<UnixSeconds>>&& series) {
  BurstinessSummary out;
  out.kind = kind;
  out.min_events = min_events;
  out.histogram = Histogram(bins);
  for (auto& [owner, times] : series) {
    if (times.size() < std::max<std::size_t>(min_events, 2)) continue;
    std::sort(times.begin(), times.end());
    try {
      const auto taus = interevent_times(times);
      out.per_owner.emplace(owner, burstiness(taus));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateSeries) throw;
      ++out.degenerate;
    }
  }
  for (const auto& [owner, r] : out.per_owner) out.histogram.add(r.b);
  return out;
}

}  // namespace

BurstinessSummary author_posting_burstiness(const Corpus& corpus, std::size_t min_posts,
                                            const BinSpec& bins) {
  std::unordered_map<std::string, std::vector<UnixSeconds>> series;
  for (const auto& p : corpus.posts()) {
    if (!is_deleted_author(p.author)) series[p.author].push_back(p.created_utc);
  }
  return summarize(SeriesKind::Posting, min_posts, bins, std::move(series));
}

BurstinessSummary author_commenting_burstiness(const Corpus& corpus, std::size_t min_comments,
                                               const BinSpec& bins) {
  std::unordered_map<std::string, std::vector<UnixSeconds>> series;
  for (const auto& c : corpus.comments()) {
    if (!is_deleted_author(c.author)) series[c.author].push_back(c.created_utc);
  }
  return summarize(SeriesKind::Commenting, min_comments, bins, std::move(series));
}

BurstinessSummary post_comment_burstiness(const Corpus& corpus, std::size_t min_comments,
                                          const BinSpec& bins) {
  std::unordered_map<std::string, std::vector<UnixSeconds>> series;
  const auto posts = corpus.posts();
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const auto thread = corpus.comments_of(i);
    if (thread.size() < min_comments) continue;
    auto& times = series[posts[i].name];
    for (const auto& c : thread) times.push_back(c.created_utc);
  }
  return summarize(SeriesKind::PostComments, min_comments, bins, std::move(series));
}

}  // namespace threadlens
