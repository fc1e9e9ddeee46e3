#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "hpscape/errors.hpp"
#include "hpscape/signal.hpp"

namespace hpscape {

namespace {

using std::numbers::pi;

// Transposed direct form II over a cascade, with every stage's state set to
// the steady state for a constant input equal to `initial`.
void filter_cascade(const std::vector<Biquad>& sections, std::vector<double>& data, double initial) {
  double level = initial;
  for (const auto& s : sections) {
    const double dc = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    const double out = dc * level;
    double z2 = s.b2 * level - s.a2 * out;
    double z1 = s.b1 * level - s.a1 * out + z2;
    for (double& x : data) {
      const double y = s.b0 * x + z1;
      z1 = s.b1 * x - s.a1 * y + z2;
      z2 = s.b2 * x - s.a2 * y;
      x = y;
    }
    level = out;
  }
}

// Odd reflection about the end samples: x[-i] = 2 x[0] - x[i].
std::vector<double> reflect_pad(const std::vector<double>& x, std::size_t pad) {
  const auto n = x.size();
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x.front() - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x.back() - x[n - 1 - i]);
  return ext;
}

void check_signal(const Signal& s) { s.validate(); }

}  // namespace

std::vector<Biquad> butterworth_lowpass(int order, double cutoff, double rate, double gain_at_cutoff) {
  if (order < 2 || order % 2 != 0) throw DomainError("Butterworth order must be even and >= 2");
  if (!(rate > 0.0)) throw DomainError("sampling rate must be positive");
  if (!(cutoff > 0.0 && cutoff < rate / 2.0)) {
    throw CutoffOutOfRange("cutoff must lie strictly between 0 and the Nyquist frequency");
  }
  if (!(gain_at_cutoff > 0.0 && gain_at_cutoff < 1.0)) throw DomainError("gain at cutoff must be in (0,1)");

  // Bilinear transform with K = 1 (frequencies expressed as tan(pi f / fs)).
  const double warped = std::tan(pi * cutoff / rate);
  const double wc = warped / std::pow(1.0 / gain_at_cutoff - 1.0, 1.0 / (2.0 * order));
  const double wc2 = wc * wc;

  std::vector<Biquad> sections;
  for (int k = 0; k < order / 2; ++k) {
    const double theta = pi * (2.0 * k + order + 1.0) / (2.0 * order);
    const double a = -2.0 * wc * std::cos(theta);  // s^2 + a s + wc^2
    const double d0 = 1.0 + a + wc2;
    Biquad s;
    s.b0 = wc2 / d0;
    s.b1 = 2.0 * s.b0;
    s.b2 = s.b0;
    s.a1 = 2.0 * (wc2 - 1.0) / d0;
    s.a2 = (1.0 - a + wc2) / d0;
    sections.push_back(s);
  }
  return sections;
}

double cascade_magnitude(const std::vector<Biquad>& sections, double frequency, double rate) {
  const std::complex<double> z1 = std::polar(1.0, -2.0 * pi * frequency / rate);
  const auto z2 = z1 * z1;
  std::complex<double> h = 1.0;
  for (const auto& s : sections) h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  return std::abs(h);
}

std::size_t settle_length(const std::vector<Biquad>& sections) {
  double radius = 0.0;
  for (const auto& s : sections) {
    const double disc = s.a1 * s.a1 - 4.0 * s.a2;
    double r = 0.0;
    if (disc < 0.0) {
      r = std::sqrt(s.a2);
    } else {
      const double sq = std::sqrt(disc);
      r = std::max(std::abs((-s.a1 + sq) / 2.0), std::abs((-s.a1 - sq) / 2.0));
    }
    radius = std::max(radius, r);
  }
  if (radius <= 0.0) return 1;
  if (radius >= 1.0) throw DomainError("unstable filter");
  return static_cast<std::size_t>(std::ceil(std::log(1e-9) / std::log(radius))) + 1;
}

Signal lowpass(const Signal& signal, double cutoff) {
  check_signal(signal);
  if (!(cutoff > 0.0 && cutoff < signal.rate / 2.0)) {
    throw CutoffOutOfRange("cutoff " + std::to_string(cutoff) + " Hz outside (0, " + std::to_string(signal.rate / 2.0) +
                           ") Hz");
  }
  // Each pass contributes |H|^2 = 1/sqrt(2) at the cutoff; two passes give -3 dB.
  const auto sections = butterworth_lowpass(kLowpassOrder, cutoff, signal.rate, 1.0 / std::numbers::sqrt2);
  Signal out{{}, signal.rate};
  const auto n = signal.samples.size();
  if (n == 0) return out;

  const auto pad = std::min(settle_length(sections), n - 1);
  auto ext = reflect_pad(signal.samples, pad);
  filter_cascade(sections, ext, ext.front());
  std::reverse(ext.begin(), ext.end());
  filter_cascade(sections, ext, ext.front());
  std::reverse(ext.begin(), ext.end());
  out.samples.assign(ext.begin() + static_cast<std::ptrdiff_t>(pad),
                     ext.begin() + static_cast<std::ptrdiff_t>(pad + n));
  return out;
}

std::vector<double> decimation_filter(int factor) {
  if (factor < 2) throw DomainError("decimation factor must be an integer >= 2");
  constexpr double kAttenuation = 80.0;
  const double m = factor;
  const double cutoff = 0.45 / m;      // cycles per input sample, mid-transition
  const double transition = 0.1 / m;   // 0.8 .. 1.0 of the new Nyquist (0.5 / m)
  const double beta = 0.1102 * (kAttenuation - 8.7);
  auto taps = static_cast<std::size_t>(std::ceil((kAttenuation - 7.95) / (2.285 * 2.0 * pi * transition))) + 1;
  if (taps % 2 == 0) ++taps;

  const double centre = static_cast<double>(taps - 1) / 2.0;
  const double norm = std::cyl_bessel_i(0.0, beta);
  std::vector<double> h(taps);
  double sum = 0.0;
  for (std::size_t i = 0; i < taps; ++i) {
    const double t = static_cast<double>(i) - centre;
    const double x = 2.0 * cutoff * t;
    const double sinc = t == 0.0 ? 1.0 : std::sin(pi * x) / (pi * x);
    const double r = t / centre;
    const double w = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / norm;
    h[i] = 2.0 * cutoff * sinc * w;
    sum += h[i];
  }
  for (double& v : h) v /= sum;
  return h;
}

Signal resample(const Signal& signal, int factor) {
  check_signal(signal);
  const auto h = decimation_filter(factor);
  const auto n = signal.samples.size();
  if (n < h.size()) {
    throw SignalTooShort("signal of " + std::to_string(n) + " samples is shorter than the " +
                         std::to_string(h.size()) + "-tap anti-aliasing filter");
  }
  const auto half = (h.size() - 1) / 2;
  const auto ext = reflect_pad(signal.samples, half);
  const auto m = static_cast<std::size_t>(factor);
  Signal out{std::vector<double>(n / m), signal.rate / factor};
  const auto count = static_cast<std::int64_t>(out.samples.size());
  // Output k is centred on input k*m, i.e. ext[k*m + half].
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < count; ++k) {
    const double* x = ext.data() + static_cast<std::size_t>(k) * m;
    double acc = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) acc += h[j] * x[j];
    out.samples[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

}  // namespace hpscape
