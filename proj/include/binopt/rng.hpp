#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace binopt {

/// Named, splittable random stream. Two streams built from the same seed and
/// name produce identical draws; distinct names give independent streams.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream);

  /// Child stream whose identity is (this stream, name).
  Rng split(std::string_view name) const;

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }

  /// k distinct indices from [0, n), in increasing order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

  std::uint64_t key() const { return key_; }

 private:
  explicit Rng(std::uint64_t key);

  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Seed for trial `index` of a batch seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace binopt
