#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "threadlens/error.hpp"

namespace threadlens {

/// Binning rule shared by every histogram in the toolkit.
///
/// Linear: bin i covers [origin + i*width, origin + (i+1)*width).
/// Log:    bin k covers [10^(k/b), 10^((k+1)/b)) for b bins per decade; the
///         value 0 falls into a dedicated [0, 1) bin, so log-binned inputs must
///         be 0 or >= 1 (integer-second ages satisfy this).
struct BinSpec {
  enum class Kind { Linear, Log };

  Kind kind = Kind::Log;
  double width = 1.0;
  double origin = 0.0;
  int bins_per_decade = 20;

  static BinSpec linear(double width, double origin = 0.0) {
    return BinSpec{Kind::Linear, width, origin, 0};
  }
  static BinSpec log(int bins_per_decade = 20) { return BinSpec{Kind::Log, 1.0, 0.0, bins_per_decade}; }

  /// Throws Error{BadBinSpec}.
  void validate() const;
  bool operator==(const BinSpec&) const = default;
};

struct HistogramRow {
  double lo = 0;
  double hi = 0;
  std::uint64_t count = 0;
  double density = 0;  // count / (total * (hi - lo))
};

/// Sparse, mergeable histogram keyed by bin index. Only occupied bins are
/// stored; rows() reports them in increasing order.
class Histogram {
 public:
  explicit Histogram(BinSpec spec = BinSpec::log());

  /// Throws Error{BadValue} for non-finite values and for log-binned values in
  /// (0, 1) or below 0.
  void add(double value, std::uint64_t count = 1);

  /// Throws Error{BadBinSpec} if the specs differ.
  void merge(const Histogram& other);

  const BinSpec& spec() const noexcept { return spec_; }
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  std::vector<HistogramRow> rows() const;

  bool operator==(const Histogram&) const = default;

 private:
  static constexpr std::int64_t kZeroBin = INT64_MIN;

  std::int64_t bin_of(double value) const;
  std::pair<double, double> edges(std::int64_t bin) const;

  BinSpec spec_;
  std::map<std::int64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

}  // namespace threadlens
