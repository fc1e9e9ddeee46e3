#include "hpscape/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "hpscape/errors.hpp"
#include "hpscape/text.hpp"

namespace hpscape {

namespace counter_rng {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t draw(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix(mix(mix(seed) ^ a) ^ b);
}

double uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return static_cast<double>(draw(seed, a, b) >> 11) * 0x1.0p-53;
}

std::uint64_t Stream::next_below(std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const auto x = next();
    if (x < limit) return x % bound;
  }
}

}  // namespace counter_rng

void LandscapeSpec::validate() const {
  const auto l = benchmarks.size();
  if (l == 0) throw DomainError("landscape needs at least one benchmark");
  if (base.size() != l) throw DomainError("landscape base needs one entry per benchmark");
  if (effects.size() != l) throw DomainError("landscape effects need one entry per benchmark");
  for (const auto& per_bench : effects) {
    if (per_bench.size() != space.size()) throw DomainError("landscape effects need one entry per hyperparameter");
    for (std::size_t h = 0; h < space.size(); ++h) {
      if (per_bench[h].size() != space.domain_size(h)) {
        throw DomainError("effects for '" + space[h].name + "' need one entry per domain value");
      }
    }
  }
  for (const auto& term : interactions) {
    if (term.first >= space.size() || term.second >= space.size() || term.first == term.second) {
      throw DomainError("interaction must name two distinct hyperparameters");
    }
    if (term.effects.size() != space.domain_size(term.first) * space.domain_size(term.second)) {
      throw DomainError("interaction table has the wrong size");
    }
    if (term.benchmark && *term.benchmark >= l) throw DomainError("interaction benchmark out of range");
  }
  if (!std::isfinite(noise) || noise < 0.0) throw DomainError("noise must be finite and non-negative");
  if (!std::isfinite(resolution) || resolution < 0.0) throw DomainError("resolution must be finite and non-negative");
}

ResultsTable generate(const LandscapeSpec& spec) {
  spec.validate();
  const auto& space = spec.space;
  ResultsTable table(space, spec.benchmarks);
  for (std::size_t d = 0; d < spec.benchmarks.size(); ++d) {
    for (ConfigIndex c = 0; c < space.config_count(); ++c) {
      double acc = spec.base[d];
      for (std::size_t h = 0; h < space.size(); ++h) acc += spec.effects[d][h][space.level_at(c, h)];
      for (const auto& term : spec.interactions) {
        if (term.benchmark && *term.benchmark != d) continue;
        const auto i = space.level_at(c, term.first);
        const auto j = space.level_at(c, term.second);
        acc += term.effects[i * space.domain_size(term.second) + j];
      }
      if (spec.noise > 0.0) acc += spec.noise * (2.0 * counter_rng::uniform(spec.seed, c, d) - 1.0);
      acc = std::clamp(acc, 0.0, 1.0);
      if (spec.resolution > 0.0) acc = std::clamp(std::round(acc / spec.resolution) * spec.resolution, 0.0, 1.0);
      table.insert(c, d, acc);
    }
  }
  return table;
}

LandscapeSpec random_landscape(const HyperparamSpace& space, std::size_t benchmarks, std::uint64_t seed,
                               const RandomLandscapeOptions& options) {
  LandscapeSpec spec;
  spec.space = space;
  spec.seed = seed;
  spec.noise = options.noise;
  spec.resolution = options.resolution;
  // Each hyperparameter contributes at most span / (2 * n) in magnitude, so
  // the additive part stays within base +/- span / 2.
  const double per_hp = space.size() == 0 ? 0.0 : options.additive_span / (2.0 * static_cast<double>(space.size()));
  for (std::size_t d = 0; d < benchmarks; ++d) {
    spec.benchmarks.push_back("bench" + std::to_string(d));
    counter_rng::Stream rng(seed, 0x1000 + d);
    spec.base.push_back(0.5);
    std::vector<std::vector<double>> effects;
    for (std::size_t h = 0; h < space.size(); ++h) {
      std::vector<double> e;
      for (std::size_t v = 0; v < space.domain_size(h); ++v) e.push_back(per_hp * (2.0 * rng.next_uniform() - 1.0));
      effects.push_back(std::move(e));
    }
    spec.effects.push_back(std::move(effects));
  }
  if (space.size() >= 2) {
    counter_rng::Stream rng(seed, 0x2000);
    for (std::size_t t = 0; t < options.interaction_count; ++t) {
      InteractionTerm term;
      term.first = rng.next_below(space.size());
      term.second = rng.next_below(space.size() - 1);
      if (term.second >= term.first) ++term.second;
      const auto cells = space.domain_size(term.first) * space.domain_size(term.second);
      for (std::size_t i = 0; i < cells; ++i) term.effects.push_back(options.interaction_scale * (2.0 * rng.next_uniform() - 1.0));
      spec.interactions.push_back(std::move(term));
    }
  }
  return spec;
}

namespace {

using nlohmann::json;

std::vector<double> number_list(const json& j, const std::string& what, const std::string& source) {
  if (!j.is_array()) throw ParseError(source + ": " + what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError(source + ": " + what + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// {"hp": [per-level effects], ...} added onto `effects`.
void add_effects(const json& j, const HyperparamSpace& space, std::vector<std::vector<double>>& effects,
                 const std::string& source) {
  if (!j.is_object()) throw ParseError(source + ": effects must be an object keyed by hyperparameter");
  for (const auto& [name, values] : j.items()) {
    const auto h = space.position(name);
    const auto list = number_list(values, "effects for '" + name + "'", source);
    if (list.size() != space.domain_size(h)) {
      throw DomainError(source + ": effects for '" + name + "' need one entry per domain value");
    }
    for (std::size_t v = 0; v < list.size(); ++v) effects[h][v] += list[v];
  }
}

LandscapeSpec parse_landscape_doc(const json& doc, const std::string& source) {
  if (!doc.is_object() || !doc.contains("space")) throw ParseError(source + ": expected an object with \"space\"");

  LandscapeSpec spec;
  spec.space = parse_space_json(doc["space"].dump(), source);
  const auto& space = spec.space;

  const auto benches = doc.value("benchmarks", json(std::size_t{1}));
  if (benches.is_number_unsigned()) {
    for (std::size_t d = 0; d < benches.get<std::size_t>(); ++d) spec.benchmarks.push_back("bench" + std::to_string(d));
  } else if (benches.is_array()) {
    for (const auto& b : benches) {
      if (!b.is_string()) throw ParseError(source + ": benchmark names must be strings");
      spec.benchmarks.push_back(b.get<std::string>());
    }
  } else {
    throw ParseError(source + ": \"benchmarks\" must be a count or a list of names");
  }
  const auto l = spec.benchmarks.size();

  if (doc.contains("base") && doc["base"].is_number()) {
    spec.base.assign(l, doc["base"].get<double>());
  } else if (doc.contains("base")) {
    spec.base = number_list(doc["base"], "base", source);
  } else {
    spec.base.assign(l, 0.5);
  }

  std::vector<std::vector<double>> zero;
  for (std::size_t h = 0; h < space.size(); ++h) zero.emplace_back(space.domain_size(h), 0.0);
  spec.effects.assign(l, zero);
  if (doc.contains("effects")) {
    for (auto& e : spec.effects) add_effects(doc["effects"], space, e, source);
  }
  if (doc.contains("benchmark_effects")) {
    const auto& per = doc["benchmark_effects"];
    if (!per.is_array() || per.size() != l) {
      throw ParseError(source + ": \"benchmark_effects\" needs one object per benchmark");
    }
    for (std::size_t d = 0; d < l; ++d) add_effects(per[d], space, spec.effects[d], source);
  }
  if (doc.contains("interactions")) {
    if (!doc["interactions"].is_array()) throw ParseError(source + ": \"interactions\" must be an array");
    for (const auto& t : doc["interactions"]) {
      if (!t.is_object() || !t.contains("first") || !t.contains("second") || !t.contains("effects")) {
        throw ParseError(source + ": interactions need \"first\", \"second\" and \"effects\"");
      }
      InteractionTerm term;
      term.first = space.position(t["first"].get<std::string>());
      term.second = space.position(t["second"].get<std::string>());
      // Accept a flat row-major list or a nested list of rows.
      json flat = json::array();
      for (const auto& row : t["effects"]) {
        if (row.is_array()) {
          for (const auto& v : row) flat.push_back(v);
        } else {
          flat.push_back(row);
        }
      }
      term.effects = number_list(flat, "interaction effects", source);
      if (t.contains("benchmark")) {
        const auto& b = t["benchmark"];
        if (b.is_number_unsigned()) {
          term.benchmark = b.get<std::size_t>();
        } else if (b.is_string()) {
          const auto it = std::find(spec.benchmarks.begin(), spec.benchmarks.end(), b.get<std::string>());
          if (it == spec.benchmarks.end()) throw UnknownDataset(source + ": unknown benchmark " + b.dump());
          term.benchmark = static_cast<std::size_t>(it - spec.benchmarks.begin());
        } else {
          throw ParseError(source + ": interaction \"benchmark\" must be an index or a name");
        }
      }
      spec.interactions.push_back(std::move(term));
    }
  }
  spec.noise = doc.value("noise", 0.0);
  spec.resolution = doc.value("resolution", 0.0);
  spec.seed = doc.value("seed", std::uint64_t{0});
  spec.validate();
  return spec;
}

}  // namespace

LandscapeSpec parse_landscape_spec(std::string_view json_text, const std::string& source) {
  try {
    return parse_landscape_doc(json::parse(json_text), source);
  } catch (const json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
}

LandscapeSpec load_landscape_spec(const std::string& path) {
  return parse_landscape_spec(text::read_file(path), path);
}

}  // namespace hpscape
