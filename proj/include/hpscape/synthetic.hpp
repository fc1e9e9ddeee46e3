#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hpscape/results_table.hpp"

namespace hpscape {

/// Counter-based generator: every draw is a pure function of (seed, a, b),
/// built from the SplitMix64 finaliser. Results are identical on every
/// platform and independent of call order.
namespace counter_rng {

[[nodiscard]] std::uint64_t mix(std::uint64_t x);
[[nodiscard]] std::uint64_t draw(std::uint64_t seed, std::uint64_t a, std::uint64_t b);
/// Uniform in [0, 1) with 53 random bits.
[[nodiscard]] double uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

/// Sequential view over draw(seed, stream, 0), draw(seed, stream, 1), ...
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}
  std::uint64_t next() { return draw(seed_, stream_, counter_++); }
  double next_uniform() { return uniform(seed_, stream_, counter_++); }
  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace counter_rng

struct InteractionTerm {
  std::size_t first = 0;
  std::size_t second = 0;
  /// Row-major |domain(first)| x |domain(second)| effects.
  std::vector<double> effects;
  /// Restrict to one benchmark; nullopt applies it to all.
  std::optional<std::size_t> benchmark;
};

/// Structured synthetic landscape:
///   acc(c, d) = clamp(base[d] + sum_h effects[d][h][c_h]
///                     + sum_terms term(c) + noise * u(seed, index(c), d), 0, 1)
/// where u is uniform in [-1, 1). With `resolution` > 0 the clamped value is
/// rounded to a multiple of it, which creates deliberate ties.
struct LandscapeSpec {
  HyperparamSpace space;
  std::vector<std::string> benchmarks;
  std::vector<double> base;                                // per benchmark
  std::vector<std::vector<std::vector<double>>> effects;   // [benchmark][hp][level]
  std::vector<InteractionTerm> interactions;
  double noise = 0.0;
  double resolution = 0.0;
  std::uint64_t seed = 0;

  /// Throws DomainError when shapes disagree with the space.
  void validate() const;
};

[[nodiscard]] ResultsTable generate(const LandscapeSpec& spec);

struct RandomLandscapeOptions {
  /// Additive effects are drawn so |sum of effects| stays below this.
  double additive_span = 0.4;
  std::size_t interaction_count = 0;
  double interaction_scale = 0.1;
  double noise = 0.0;
  double resolution = 0.0;
};

/// Random effects (and optionally interactions) drawn from the counter RNG.
/// With the default options every accuracy lies strictly inside (0,1), so no
/// clamping occurs and the landscape is exactly additive.
[[nodiscard]] LandscapeSpec random_landscape(const HyperparamSpace& space, std::size_t benchmarks,
                                             std::uint64_t seed, const RandomLandscapeOptions& options = {});

/// JSON landscape spec (see README for the schema).
[[nodiscard]] LandscapeSpec parse_landscape_spec(std::string_view json_text, const std::string& source = "<spec>");
[[nodiscard]] LandscapeSpec load_landscape_spec(const std::string& path);

}  // namespace hpscape
