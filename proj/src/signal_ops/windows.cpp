#include <algorithm>
#include <cmath>
#include <map>

#include "hpscape/errors.hpp"
#include "hpscape/signal.hpp"
#include "hpscape/synthetic.hpp"

namespace hpscape {

void Signal::validate() const {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("sampling rate must be positive and finite");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) throw DomainError("sample " + std::to_string(i) + " is not finite");
  }
}

void WindowSet::validate() const {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("sampling rate must be positive and finite");
  for (const auto& w : windows) {
    if (w.size() != length) throw DomainError("window length differs from the declared length");
  }
  if (!labels.empty() && labels.size() != windows.size()) throw DomainError("labels do not align with windows");
}

WindowSet window(const Signal& signal, std::size_t length, const std::string& label) {
  signal.validate();
  if (length == 0) throw DomainError("window length must be at least 1");
  WindowSet set;
  set.length = length;
  set.rate = signal.rate;
  const auto count = signal.samples.size() / length;
  for (std::size_t w = 0; w < count; ++w) {
    const auto first = signal.samples.begin() + static_cast<std::ptrdiff_t>(w * length);
    set.windows.emplace_back(first, first + static_cast<std::ptrdiff_t>(length));
    if (!label.empty()) set.labels.push_back(label);
  }
  return set;
}

std::pair<WindowSet, WindowSet> split(const WindowSet& set, double train_fraction, std::uint64_t seed) {
  set.validate();
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw DomainError("train fraction must lie in (0,1)");
  if (!set.labeled()) throw UnlabeledWindows("stratified split needs labeled windows");

  // Classes in order of first appearance; each gets its own RNG stream.
  std::vector<std::string> classes;
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < set.windows.size(); ++i) {
    auto& list = members[set.labels[i]];
    if (list.empty()) classes.push_back(set.labels[i]);
    list.push_back(i);
  }

  std::vector<std::uint8_t> to_train(set.windows.size(), 0);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    auto indices = members[classes[k]];
    const auto count = indices.size();
    if (count < 2) throw ClassTooSmall("class '" + classes[k] + "' has fewer than 2 windows");
    // The epsilon keeps e.g. 0.57 * 100 from flooring to 56.
    auto take = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(count) + 1e-9));
    take = std::clamp<std::size_t>(take, 1, count - 1);

    counter_rng::Stream rng(seed, k);
    for (std::size_t i = count - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.next_below(i + 1));
      std::swap(indices[i], indices[j]);
    }
    for (std::size_t i = 0; i < take; ++i) to_train[indices[i]] = 1;
  }

  WindowSet train{set.length, set.rate, {}, {}};
  WindowSet test{set.length, set.rate, {}, {}};
  for (std::size_t i = 0; i < set.windows.size(); ++i) {
    auto& dst = to_train[i] ? train : test;
    dst.windows.push_back(set.windows[i]);
    dst.labels.push_back(set.labels[i]);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace hpscape
