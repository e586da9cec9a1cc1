#include "threadlens/pipeline.hpp"

#include <fstream>
#include <random>

#include <json.hpp>

#include "threadlens/authors.hpp"
#include "threadlens/csv.hpp"
#include "threadlens/parallel.hpp"
#include "threadlens/tree.hpp"

namespace threadlens {

std::string_view to_string(Analysis a) noexcept {
  switch (a) {
    case Analysis::Stats: return "stats";
    case Analysis::Lifecycle: return "lifecycle";
    case Analysis::Cyborg: return "cyborg";
    case Analysis::Tree: return "tree";
    case Analysis::Burstiness: return "burstiness";
    case Analysis::Authors: return "authors";
    case Analysis::Controversy: return "controversy";
  }
  return "unknown";
}

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Runs fn(partial, post_index) over contiguous post ranges and folds the
// partials left to right with merge(total, partial).
template <class Partial, class Init, class Fn, class Merge>
Partial fold_posts(const Corpus& corpus, unsigned shards, Init&& init, Fn&& fn, Merge&& merge) {
  auto parts = map_shards<Partial>(corpus.posts().size(), shards, [&](ShardRange r) {
    Partial part = init();
    for (std::size_t i = r.begin; i < r.end; ++i) fn(part, i);
    return part;
  });
  Partial total = init();
  for (auto& p : parts) merge(total, p);
  return total;
}

std::string histogram_csv(const Histogram& h, bool with_density) {
  if (with_density) {
    CsvWriter csv{"bin_lo", "bin_hi", "count", "density"};
    for (const auto& row : h.rows()) csv.field(row.lo).field(row.hi).field(row.count).field(row.density).end_row();
    return csv.str();
  }
  CsvWriter csv{"bin_lo", "bin_hi", "count"};
  for (const auto& row : h.rows()) csv.field(row.lo).field(row.hi).field(row.count).end_row();
  return csv.str();
}

ReportSet render_stats(const Corpus& corpus) {
  return {{"basic_stats.json", to_json(corpus_stats(corpus))}};
}

ReportSet render_lifecycle(const Corpus& corpus, const AnalysisOptions& opt, unsigned shards) {
  struct Partial {
    MayflyResult mayfly;
    Histogram ages;
    CsvWriter rows;
  };
  const auto posts = corpus.posts();
  auto total = fold_posts<Partial>(
      corpus, shards,
      [&] { return Partial{{}, Histogram(opt.age_bins), CsvWriter::fragment(4)}; },
      [&](Partial& part, std::size_t i) {
        const auto thread = corpus.comments_of(i);
        ++part.mayfly.n_posts;
        const PostAge age = post_age(posts[i], thread);
        if (age.age) {
          ++part.mayfly.n_aged;
          if (age.clamped) ++part.mayfly.n_clamped;
          if (*age.age <= opt.mayfly_threshold) ++part.mayfly.n_within;
          part.ages.add(static_cast<double>(*age.age));
        }
        if (!thread.empty() && thread.size() >= opt.lifecycle.min_comments) {
          const Evolution e = classify_evolution(posts[i], thread, opt.lifecycle);
          part.rows.field(posts[i].name)
              .field(static_cast<std::uint64_t>(e.total_comments))
              .field(e.t_threshold)
              .field(to_string(e.cls))
              .end_row();
        }
      },
      [](Partial& total, const Partial& part) {
        total.mayfly += part.mayfly;
        total.ages.merge(part.ages);
        total.rows.append(part.rows);
      });

  CsvWriter lifecycle{"post_id", "total_comments", "t75_seconds", "class"};
  lifecycle.append(total.rows);

  json mayfly = {
      {"threshold_seconds", opt.mayfly_threshold},
      {"n_posts", total.mayfly.n_posts},
      {"n_aged_posts", total.mayfly.n_aged},
      {"n_within_threshold", total.mayfly.n_within},
      {"n_clamped_ages", total.mayfly.n_clamped},
      {"fraction_of_aged_posts", optional_number(total.mayfly.fraction())},
      {"fraction_of_all_posts", optional_number(total.mayfly.fraction_over_all_posts())},
  };
  return {{"age_histogram.csv", histogram_csv(total.ages, true)},
          {"lifecycle.csv", lifecycle.str()},
          {"mayfly.json", dump(mayfly)}};
}

ReportSet render_cyborg(const Corpus& corpus, const AnalysisOptions& opt, unsigned shards) {
  struct Partial {
    CyborgReport report;
    CsvWriter rows;
  };
  const auto posts = corpus.posts();
  auto total = fold_posts<Partial>(
      corpus, shards, [] { return Partial{{}, CsvWriter::fragment(7)}; },
      [&](Partial& part, std::size_t i) {
        const CyborgVerdict v = is_cyborg_like(posts[i], corpus.comments_of(i), opt.cyborg);
        part.report.add(v, opt.cyborg);
        part.rows.field(posts[i].name)
            .field(v.first_comment_latency)
            .field(v.same_author)
            .field(static_cast<std::uint64_t>(v.first_comment_chars))
            .field(v.contains_link)
            .field(v.is_cyborg_like)
            .field(v.is_successful)
            .end_row();
      },
      [](Partial& total, const Partial& part) {
        total.report += part.report;
        total.rows.append(part.rows);
      });
  CsvWriter csv{"post_id", "latency", "same_author", "chars", "has_link", "cyborg_like", "successful"};
  csv.append(total.rows);
  return {{"cyborg_posts.csv", csv.str()}, {"cyborg_report.json", to_json(total.report)}};
}

ReportSet render_tree(const Corpus& corpus, const AnalysisOptions& opt, unsigned shards) {
  struct Partial {
    CsvWriter rows;
    Histogram limelight;
    std::uint64_t popular = 0;
    std::uint64_t above_mark = 0;
    std::uint64_t hog_differs = 0;
    std::uint64_t hog_defined = 0;
    std::uint64_t orphans = 0;
    std::uint64_t cycles = 0;
  };
  const auto posts = corpus.posts();
  auto total = fold_posts<Partial>(
      corpus, shards, [&] { return Partial{CsvWriter::fragment(7), Histogram(opt.limelight_bins)}; },
      [&](Partial& part, std::size_t i) {
        const auto thread = corpus.comments_of(i);
        const DiscussionTree tree = build_tree(posts[i], thread);
        const TreeMetrics m = measure(tree);
        part.orphans += tree.orphan_count();
        part.cycles += tree.cycles_detected();
        part.rows.field(posts[i].name)
            .field(static_cast<std::uint64_t>(m.n_comments))
            .field(static_cast<std::int64_t>(m.depth))
            .field(static_cast<std::uint64_t>(m.breadth))
            .field(m.limelight_score);
        if (m.hog) {
          part.rows.field(m.hog->author).field(m.hog->same_as_post_author);
        } else {
          part.rows.field(std::string_view()).field(std::string_view());
        }
        part.rows.end_row();
        if (m.n_comments >= opt.limelight_min_comments && m.limelight_score) {
          ++part.popular;
          if (*m.limelight_score >= opt.limelight_mark) ++part.above_mark;
          part.limelight.add(*m.limelight_score);
          ++part.hog_defined;
          if (!m.hog->same_as_post_author) ++part.hog_differs;
        }
      },
      [](Partial& total, const Partial& part) {
        total.rows.append(part.rows);
        total.limelight.merge(part.limelight);
        total.popular += part.popular;
        total.above_mark += part.above_mark;
        total.hog_differs += part.hog_differs;
        total.hog_defined += part.hog_defined;
        total.orphans += part.orphans;
        total.cycles += part.cycles;
      });

  CsvWriter csv{"post_id", "n_comments", "depth", "breadth", "limelight_score", "hog_author", "hog_is_post_author"};
  csv.append(total.rows);
  auto ratio = [](std::uint64_t a, std::uint64_t b) -> std::optional<double> {
    if (b == 0) return std::nullopt;
    return static_cast<double>(a) / static_cast<double>(b);
  };
  json summary = {
      {"min_comments", opt.limelight_min_comments},
      {"limelight_mark", opt.limelight_mark},
      {"n_posts", total.popular},
      {"n_at_or_above_mark", total.above_mark},
      {"fraction_at_or_above_mark", optional_number(ratio(total.above_mark, total.popular))},
      {"n_hog_differs_from_post_author", total.hog_differs},
      {"fraction_hog_differs_from_post_author", optional_number(ratio(total.hog_differs, total.hog_defined))},
      {"n_orphan_comments", total.orphans},
      {"n_cycles_detected", total.cycles},
  };
  return {{"tree_metrics.csv", csv.str()},
          {"limelight_histogram.csv", histogram_csv(total.limelight, false)},
          {"limelight_summary.json", dump(summary)}};
}

ReportSet render_burstiness(const Corpus& corpus, const AnalysisOptions& opt) {
  const BurstinessSummary summaries[] = {
      author_posting_burstiness(corpus, opt.burst_min_author_posts, opt.burst_bins),
      author_commenting_burstiness(corpus, opt.burst_min_author_comments, opt.burst_bins),
      post_comment_burstiness(corpus, opt.burst_min_post_comments, opt.burst_bins),
  };
  ReportSet out;
  CsvWriter entities{"owner_id", "kind", "n_events", "mu", "sigma", "B"};
  json summary = json::object();
  for (const auto& s : summaries) {
    const std::string kind(to_string(s.kind));
    for (const auto& [owner, r] : s.per_owner) {
      entities.field(owner)
          .field(kind)
          .field(static_cast<std::uint64_t>(r.n_events))
          .field(r.mean)
          .field(r.stddev)
          .field(r.b)
          .end_row();
    }
    out["burstiness_histogram_" + kind + ".csv"] = histogram_csv(s.histogram, false);
    summary[kind] = {
        {"min_events", s.min_events},
        {"n_entities", s.per_owner.size()},
        {"n_degenerate", s.degenerate},
        {"mean_B", optional_number(s.mean_b())},
    };
  }
  out["burstiness_entities.csv"] = entities.str();
  out["burstiness_summary.json"] = dump(summary);
  return out;
}

ReportSet render_authors(const Corpus& corpus) {
  const auto profiles = author_profiles(corpus);
  const auto graph = build_interaction_graph(corpus);

  CsvWriter authors{"author", "n_posts", "n_comments_made", "A", "B", "score", "category",
                    "avg_effective_per_post"};
  std::uint64_t per_post[3] = {0, 0, 0};
  std::uint64_t scored = 0;
  for (const auto& [id, p] : profiles) {
    std::optional<double> score;
    if (p.effective_received + p.comments_on_others > 0) {
      score = interaction_score(p);
      ++scored;
    }
    std::optional<double> avg;
    if (p.n_posts > 0) {
      const auto e = effective_comments_per_post(p);
      avg = e.average;
      ++per_post[static_cast<int>(e.cls)];
    }
    authors.field(id)
        .field(p.n_posts)
        .field(p.n_comments_made)
        .field(p.effective_received)
        .field(p.comments_on_others)
        .field(score)
        .field(to_string(p.category()))
        .field(avg)
        .end_row();
  }

  CsvWriter edges{"src", "dst", "weight"};
  for (const auto& [key, w] : graph.edges()) edges.field(key.first).field(key.second).field(w).end_row();

  CsvWriter degrees{"author", "in_degree", "out_degree"};
  for (const auto& [id, p] : profiles) {
    degrees.field(id).field(graph.in_degree(id)).field(graph.out_degree(id)).end_row();
  }

  const auto cats = author_categories(profiles);
  json summary = {
      {"total_active", cats.total_active},
      {"producers_only", cats.producers_only},
      {"consumers_only", cats.consumers_only},
      {"both", cats.both},
      {"authors_with_interaction_score", scored},
      {"effective_per_post",
       {{"less_than_one", per_post[0]}, {"exactly_one", per_post[1]}, {"more_than_one", per_post[2]}}},
      {"interaction_edges", graph.edges().size()},
      {"interaction_weight", graph.total_weight()},
  };
  return {{"authors.csv", authors.str()},
          {"interaction_edges.csv", edges.str()},
          {"interaction_degrees.csv", degrees.str()},
          {"author_summary.json", dump(summary)}};
}

ReportSet render_controversy(const Corpus& corpus, const AnalysisOptions& opt) {
  const auto& params = opt.controversy;
  CsvWriter scatter{"post_id", "n_unique_authors", "controversiality", "n_comments", "popularity_category"};
  for (const auto& row : controversy_scatter(corpus, params)) {
    scatter.field(row.post_id)
        .field(static_cast<std::uint64_t>(row.n_unique_authors))
        .field(row.score)
        .field(static_cast<std::uint64_t>(row.n_comments))
        .field(row.popularity_category)
        .end_row();
  }

  const auto rollup = controversy_rollup(corpus, params);
  CsvWriter subs{"subreddit", "n_posts", "n_scored_posts", "n_controversial", "controversiality",
                 "popularity_category"};
  for (const auto& [name, t] : rollup.by_subreddit) {
    const auto f = subreddit_fraction(t, params);
    if (!f) continue;
    subs.field(name)
        .field(t.n_posts)
        .field(t.n_scored)
        .field(t.n_controversial)
        .field(*f)
        .field(subreddit_popularity_category(t.n_posts))
        .end_row();
  }
  CsvWriter authors{"author", "n_posts", "n_scored_posts", "n_controversial", "controversiality"};
  for (const auto& [name, t] : rollup.by_author) {
    const auto f = author_fraction(t, params);
    if (!f) continue;
    authors.field(name).field(t.n_posts).field(t.n_scored).field(t.n_controversial).field(*f).end_row();
  }
  return {{"controversy_scatter.csv", scatter.str()},
          {"subreddit_controversy.csv", subs.str()},
          {"author_controversy.csv", authors.str()}};
}

}  // namespace

ReportSet render(Analysis analysis, const Corpus& corpus, const AnalysisOptions& options, unsigned shards) {
  switch (analysis) {
    case Analysis::Stats: return render_stats(corpus);
    case Analysis::Lifecycle: return render_lifecycle(corpus, options, shards);
    case Analysis::Cyborg: return render_cyborg(corpus, options, shards);
    case Analysis::Tree: return render_tree(corpus, options, shards);
    case Analysis::Burstiness: return render_burstiness(corpus, options);
    case Analysis::Authors: return render_authors(corpus);
    case Analysis::Controversy: return render_controversy(corpus, options);
  }
  return {};
}

ReportSet render_all(const Corpus& corpus, const AnalysisOptions& options, unsigned shards) {
  ReportSet all;
  for (Analysis a : kAllAnalyses) all.merge(render(a, corpus, options, shards));
  return all;
}

void write_reports(const ReportSet& reports, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());

  std::random_device rd;
  const fs::path staging = dir / (".staging-" + std::to_string(rd()));
  try {
    fs::create_directory(staging);
    for (const auto& [name, text] : reports) {
      std::ofstream out(staging / name, std::ios::binary | std::ios::trunc);
      out << text;
      out.close();
      if (!out) throw Error(ErrorCode::Io, "cannot write '" + (staging / name).string() + "'");
    }
    for (const auto& [name, text] : reports) fs::rename(staging / name, dir / name);
    fs::remove(staging);
  } catch (const fs::filesystem_error& e) {
    fs::remove_all(staging, ec);
    throw Error(ErrorCode::Io, e.what());
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
}

}  // namespace threadlens
