#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "threadlens/controversy.hpp"
#include "threadlens/cyborg.hpp"
#include "threadlens/histogram.hpp"
#include "threadlens/ingest.hpp"
#include "threadlens/lifecycle.hpp"
#include "threadlens/temporal.hpp"

namespace threadlens {

/// Every threshold the analyses take, with their conventional defaults.
struct AnalysisOptions {
  CyborgParams cyborg;
  LifecycleParams lifecycle;
  UnixSeconds mayfly_threshold = kOneDay;
  BinSpec age_bins = BinSpec::log(20);

  std::size_t burst_min_author_posts = 100;
  std::size_t burst_min_author_comments = 500;
  std::size_t burst_min_post_comments = 500;
  BinSpec burst_bins = burstiness_bins();

  std::size_t limelight_min_comments = 500;
  double limelight_mark = 0.25;
  BinSpec limelight_bins = BinSpec::linear(0.05, 0.0);

  ControversyParams controversy;
};

/// File name -> file contents. Ordered, so iteration and comparison are
/// deterministic.
using ReportSet = std::map<std::string, std::string>;

enum class Analysis { Stats, Lifecycle, Cyborg, Tree, Burstiness, Authors, Controversy };

inline constexpr Analysis kAllAnalyses[] = {Analysis::Stats,      Analysis::Lifecycle, Analysis::Cyborg,
                                            Analysis::Tree,       Analysis::Burstiness, Analysis::Authors,
                                            Analysis::Controversy};

std::string_view to_string(Analysis a) noexcept;

/// Renders the report files of one analysis. Per-post work is split into
/// `shards` contiguous post ranges whose partial results are merged in
/// order, so the output does not depend on the shard count.
ReportSet render(Analysis analysis, const Corpus& corpus, const AnalysisOptions& options,
                 unsigned shards = 1);

ReportSet render_all(const Corpus& corpus, const AnalysisOptions& options, unsigned shards = 1);

/// Writes every file of `reports` into `dir`. Files go to a staging directory
/// first and are moved into place only when all writes succeed; on failure
/// the staging directory is removed and Error{Io} is thrown.
void write_reports(const ReportSet& reports, const std::filesystem::path& dir);

}  // namespace threadlens
