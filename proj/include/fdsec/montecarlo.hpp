#pragma once

// Seeded Monte Carlo machinery.
//
// Every variate is a pure function of (seed, sample index, draw index): a
// SplitMix64 counter stream.  Samples are grouped in fixed-size chunks, each
// chunk reduces with Welford's update, and chunks are merged in index order,
// so results are bit-identical for any thread count.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

#include "fdsec/errors.hpp"

namespace fdsec {

struct MCConfig {
  std::uint64_t seed = 1;
  std::uint64_t n_samples = 100000;
  std::uint64_t chunk = std::uint64_t{1} << 16;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (n_samples < 1) throw InvalidParameter("n_samples must be >= 1");
    if (chunk < 1) throw InvalidParameter("chunk must be >= 1");
  }
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
};

namespace detail {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace detail

/// Uniform in (0,1): a 52-bit integer centred in its cell, so neither 0 nor 1 occurs
/// (with 53 bits the top cell rounds to 1.0).
inline constexpr double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Variates belonging to one sample.  Draw j of a stream is independent of how
/// many draws other samples made.
class SampleStream {
public:
  explicit constexpr SampleStream(std::uint64_t key) : key_(key) {}

  double uniform() { return to_open_unit(detail::mix64(key_ + (++counter_) * detail::kGamma)); }

  /// Unit-mean exponential by inversion.
  double exponential() { return -std::log1p(-uniform()); }

  std::uint64_t draws() const { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// The stream for sample `index` of substream `stream` under `seed`.
inline constexpr SampleStream sample_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0) {
  const std::uint64_t base = detail::mix64(seed ^ detail::mix64(stream + 0x632BE59BD9B4E019ULL));
  return SampleStream(detail::mix64(base + (index + 1) * detail::kGamma));
}

/// First exponential variate of each sample stream 0..n-1.
inline std::vector<double> sample_exp(const MCConfig& config) {
  config.validate();
  std::vector<double> out(config.n_samples);
  for (std::uint64_t i = 0; i < config.n_samples; ++i) {
    auto s = sample_stream(config.seed, i);
    out[i] = s.exponential();
  }
  return out;
}

/// Runs fn(i) for i in [0, n) on a small thread pool.  fn must only write to slot i.
template <class Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn&& fn) {
  const unsigned t = std::min<std::uint64_t>(detail::resolve_threads(threads), std::max<std::uint64_t>(n, 1));
  if (t <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned k = 0; k < t; ++k) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace detail {

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    if (n == 0.0) {
      *this = o;
      return;
    }
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * (o.n / total);
    m2 += o.m2 + d * d * (n * o.n / total);
    n = total;
  }

  Estimate to_estimate() const {
    Estimate e;
    e.n = static_cast<std::uint64_t>(n);
    e.mean = mean;
    e.std_error = n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
    return e;
  }
};

}  // namespace detail

/// Estimates K expectations from the same samples: fn(SampleStream&) -> std::array<double, K>.
template <std::size_t K, class Fn>
std::array<Estimate, K> estimate_many(Fn&& fn, const MCConfig& config, std::uint64_t stream = 0) {
  config.validate();
  const std::uint64_t n_chunks = (config.n_samples + config.chunk - 1) / config.chunk;
  std::vector<std::array<detail::Moments, K>> partial(n_chunks);
  parallel_for(n_chunks, config.threads, [&](std::uint64_t c) {
    const std::uint64_t begin = c * config.chunk;
    const std::uint64_t end = std::min(config.n_samples, begin + config.chunk);
    auto& acc = partial[c];
    for (std::uint64_t i = begin; i < end; ++i) {
      auto s = sample_stream(config.seed, i, stream);
      const std::array<double, K> v = fn(s);
      for (std::size_t k = 0; k < K; ++k) acc[k].add(v[k]);
    }
  });
  std::array<detail::Moments, K> total{};
  for (const auto& p : partial)
    for (std::size_t k = 0; k < K; ++k) total[k].merge(p[k]);
  std::array<Estimate, K> out{};
  for (std::size_t k = 0; k < K; ++k) out[k] = total[k].to_estimate();
  return out;
}

/// Mean and standard error of fn(SampleStream&) -> double.
template <class Fn>
Estimate estimate(Fn&& fn, const MCConfig& config, std::uint64_t stream = 0) {
  return estimate_many<1>([&](SampleStream& s) { return std::array<double, 1>{fn(s)}; }, config, stream)[0];
}

/// Evaluates fn on each sample and keeps the values (for empirical CDFs).
template <class Fn>
std::vector<double> sample_values(Fn&& fn, const MCConfig& config, std::uint64_t stream = 0) {
  config.validate();
  std::vector<double> out(config.n_samples);
  parallel_for(config.n_samples, config.threads, [&](std::uint64_t i) {
    auto s = sample_stream(config.seed, i, stream);
    out[i] = fn(s);
  });
  return out;
}

struct CdfPoint {
  double x = 0.0;
  double cdf = 0.0;
  double std_error = 0.0;
};

/// Right-continuous empirical CDF of `values` evaluated at each grid point.
inline std::vector<CdfPoint> ecdf(std::span<const double> values, std::span<const double> grid) {
  if (values.empty()) throw InvalidParameter("ecdf needs at least one value");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<CdfPoint> out;
  out.reserve(grid.size());
  for (double x : grid) {
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    const double f = static_cast<double>(count) / n;
    out.push_back(CdfPoint{x, f, std::sqrt(f * (1.0 - f) / n)});
  }
  return out;
}

}  // namespace fdsec
