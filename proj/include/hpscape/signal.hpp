#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hpscape {

/// Uniformly sampled real-valued series. Rate is in Hz.
struct Signal {
  std::vector<double> samples;
  double rate = 0.0;

  /// Throws DomainError unless rate > 0 and every sample is finite.
  void validate() const;
};

/// Fixed-length windows cut from one or more signals.
struct WindowSet {
  std::size_t length = 0;
  double rate = 0.0;
  std::vector<std::vector<double>> windows;
  /// Empty, or one class label per window.
  std::vector<std::string> labels;

  [[nodiscard]] bool labeled() const { return !labels.empty(); }
  /// Throws DomainError on ragged windows or misaligned labels.
  void validate() const;
};

/// Consecutive non-overlapping windows; a trailing remainder is dropped.
/// Windows get `label` when it is non-empty.
[[nodiscard]] WindowSet window(const Signal& signal, std::size_t length, const std::string& label = {});

/// Second-order section in transposed direct form II, a0 normalised to 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

inline constexpr int kLowpassOrder = 8;

/// Digital Butterworth lowpass of even `order` via the bilinear transform,
/// prewarped so that |H|^2 equals `gain_at_cutoff` at `cutoff`.
[[nodiscard]] std::vector<Biquad> butterworth_lowpass(int order, double cutoff, double rate,
                                                      double gain_at_cutoff = 0.5);

/// |H(f)| of a section cascade.
[[nodiscard]] double cascade_magnitude(const std::vector<Biquad>& sections, double frequency, double rate);

/// Samples needed for the cascade's impulse response to decay below 1e-9.
[[nodiscard]] std::size_t settle_length(const std::vector<Biquad>& sections);

/// Zero-phase lowpass: 8th-order Butterworth applied forward and backward,
/// designed so the combined response is -3 dB at `cutoff`. Edges are
/// extended by odd reflection. Same length and rate as the input.
/// Throws CutoffOutOfRange unless 0 < cutoff < rate / 2.
[[nodiscard]] Signal lowpass(const Signal& signal, double cutoff);

/// Kaiser-windowed sinc anti-aliasing filter for decimation by `factor`:
/// passband edge 0.8 and stopband edge 1.0 of the new Nyquist frequency,
/// 80 dB stopband attenuation, odd length, unit DC gain.
[[nodiscard]] std::vector<double> decimation_filter(int factor);

/// Anti-aliased integer-factor decimation. Output has floor(n / factor)
/// samples at rate / factor. Throws DomainError for factor < 2 and
/// SignalTooShort when the input is shorter than the filter.
[[nodiscard]] Signal resample(const Signal& signal, int factor);

/// Stratified per class: floor(fraction * count) windows of each class go to
/// train (at least 1), chosen by a seeded shuffle. Both outputs keep the
/// original window order. Throws UnlabeledWindows, ClassTooSmall, DomainError.
[[nodiscard]] std::pair<WindowSet, WindowSet> split(const WindowSet& set, double train_fraction,
                                                    std::uint64_t seed);

// Single-channel signal files.
//   CSV:    one sample per line, rate supplied separately.
//   Binary: 24-byte little-endian header {magic "VSIG", u32 version = 1,
//           f64 rate, u64 length} followed by `length` f64 samples.
inline constexpr std::array<char, 4> kSignalMagic{'V', 'S', 'I', 'G'};
inline constexpr std::uint32_t kSignalVersion = 1;

enum class SignalFormat { kCsv, kBinary };

[[nodiscard]] Signal parse_signal_csv(std::istream& in, double rate, const std::string& source = "<signal>");
void write_signal_csv(std::ostream& out, const Signal& signal);
[[nodiscard]] Signal parse_signal_binary(std::istream& in, const std::string& source = "<signal>");
void write_signal_binary(std::ostream& out, const Signal& signal);

/// Detects the binary container by its magic; otherwise reads CSV using
/// `csv_rate` (which must then be > 0).
[[nodiscard]] Signal load_signal(const std::string& path, double csv_rate);

// Window sets: CSV header x0..x{L-1}[,label], one window per row.
[[nodiscard]] WindowSet parse_windows_csv(std::istream& in, double rate, const std::string& source = "<windows>");
void write_windows_csv(std::ostream& out, const WindowSet& set);

}  // namespace hpscape
