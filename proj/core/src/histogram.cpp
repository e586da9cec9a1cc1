#include "threadlens/histogram.hpp"

#include <cmath>
#include <string>

namespace threadlens {

void BinSpec::validate() const {
  if (kind == Kind::Linear) {
    if (!(width > 0) || !std::isfinite(width) || !std::isfinite(origin)) {
      throw Error(ErrorCode::BadBinSpec, "linear bins need a finite positive width");
    }
  } else if (bins_per_decade <= 0) {
    throw Error(ErrorCode::BadBinSpec, "log bins need a positive bins-per-decade");
  }
}

Histogram::Histogram(BinSpec spec) : spec_(spec) { spec_.validate(); }

std::int64_t Histogram::bin_of(double value) const {
  if (!std::isfinite(value)) throw Error(ErrorCode::BadValue, "non-finite histogram value");
  if (spec_.kind == BinSpec::Kind::Linear) {
    return static_cast<std::int64_t>(std::floor((value - spec_.origin) / spec_.width));
  }
  if (value == 0.0) return kZeroBin;
  if (value < 1.0) {
    throw Error(ErrorCode::BadValue, "log bins accept 0 or values >= 1, got " + std::to_string(value));
  }
  auto bin = static_cast<std::int64_t>(std::floor(std::log10(value) * spec_.bins_per_decade));
  // Guard against log10 rounding across an edge.
  while (edges(bin).first > value) --bin;
  while (edges(bin).second <= value) ++bin;
  return bin;
}

std::pair<double, double> Histogram::edges(std::int64_t bin) const {
  if (spec_.kind == BinSpec::Kind::Linear) {
    return {spec_.origin + static_cast<double>(bin) * spec_.width,
            spec_.origin + static_cast<double>(bin + 1) * spec_.width};
  }
  if (bin == kZeroBin) return {0.0, 1.0};
  const double b = spec_.bins_per_decade;
  return {std::pow(10.0, static_cast<double>(bin) / b), std::pow(10.0, static_cast<double>(bin + 1) / b)};
}

void Histogram::add(double value, std::uint64_t count) {
  if (count == 0) return;
  counts_[bin_of(value)] += count;
  total_ += count;
}

void Histogram::merge(const Histogram& other) {
  if (!(other.spec_ == spec_)) throw Error(ErrorCode::BadBinSpec, "cannot merge histograms with different bins");
  for (const auto& [bin, count] : other.counts_) counts_[bin] += count;
  total_ += other.total_;
}

std::vector<HistogramRow> Histogram::rows() const {
  std::vector<HistogramRow> out;
  out.reserve(counts_.size());
  for (const auto& [bin, count] : counts_) {
    const auto [lo, hi] = edges(bin);
    out.push_back({lo, hi, count,
                   static_cast<double>(count) / (static_cast<double>(total_) * (hi - lo))});
  }
  return out;
}

}  // namespace threadlens
