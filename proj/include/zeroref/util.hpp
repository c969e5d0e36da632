#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zeroref {

// Shortest decimal string that round-trips to the same double.
std::string format_number(double v);

// Strict parsers: the whole field must be consumed. `context` names the
// offending location in the thrown DataError.
double parse_number(std::string_view s, const std::string& context);
long parse_integer(std::string_view s, const std::string& context);

std::string_view trim(std::string_view s);
std::vector<std::string> split_fields(std::string_view line, char sep);
std::vector<std::string> split_ws(std::string_view line);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Deterministic RNG used by the synthetic generator and the corpus sweeps.
// All draws go through explicit inverse-CDF style sampling so output is
// stable across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0,1), 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0,n); n <= 1 always yields 0.
  int uniform_int(int n) {
    if (n <= 1) return 0;
    return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Index draw proportional to the given nonnegative weights.
  std::size_t categorical(std::span<const double> weights);

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[static_cast<std::size_t>(uniform_int(static_cast<int>(i)))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace zeroref
