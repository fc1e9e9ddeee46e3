#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include "hpscape/errors.hpp"
#include "hpscape/signal.hpp"
#include "hpscape/text.hpp"

namespace hpscape {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

bool get_bytes(std::istream& in, unsigned char* buf, std::size_t n) {
  in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount()) == n;
}

std::uint64_t le_u64(const unsigned char* b) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

Signal parse_signal_csv(std::istream& in, double rate, const std::string& source) {
  Signal s{{}, rate};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = text::trim(line);
    if (t.empty()) continue;
    const auto v = text::parse_double(t);
    if (!v) throw ParseError(source + ":" + std::to_string(line_no) + ": '" + std::string(t) + "' is not a number");
    if (!std::isfinite(*v)) throw DomainError(source + ":" + std::to_string(line_no) + ": sample is not finite");
    s.samples.push_back(*v);
  }
  s.validate();
  return s;
}

void write_signal_csv(std::ostream& out, const Signal& signal) {
  for (double v : signal.samples) out << text::format_double(v) << '\n';
}

Signal parse_signal_binary(std::istream& in, const std::string& source) {
  unsigned char header[24];
  if (!get_bytes(in, header, sizeof(header))) throw ParseError(source + ": truncated signal header");
  if (std::memcmp(header, kSignalMagic.data(), 4) != 0) throw ParseError(source + ": bad signal magic");
  const std::uint32_t version = header[4] | (header[5] << 8) | (header[6] << 16) | (std::uint32_t{header[7]} << 24);
  if (version != kSignalVersion) throw ParseError(source + ": unsupported signal version " + std::to_string(version));
  Signal s;
  s.rate = std::bit_cast<double>(le_u64(header + 8));
  const auto length = le_u64(header + 16);
  constexpr std::uint64_t kMaxSamples = std::uint64_t{1} << 32;
  if (length > kMaxSamples) throw ParseError(source + ": implausible signal length");
  s.samples.resize(static_cast<std::size_t>(length));
  unsigned char buf[8];
  for (auto& v : s.samples) {
    if (!get_bytes(in, buf, 8)) throw ParseError(source + ": truncated signal body");
    v = std::bit_cast<double>(le_u64(buf));
  }
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw DomainError(source + ": " + e.what());
  }
  return s;
}

void write_signal_binary(std::ostream& out, const Signal& signal) {
  out.write(kSignalMagic.data(), 4);
  put_u32(out, kSignalVersion);
  put_u64(out, std::bit_cast<std::uint64_t>(signal.rate));
  put_u64(out, signal.samples.size());
  for (double v : signal.samples) put_u64(out, std::bit_cast<std::uint64_t>(v));
}

Signal load_signal(const std::string& path, double csv_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[4] = {};
  in.read(magic, 4);
  const bool binary = in.gcount() == 4 && std::memcmp(magic, kSignalMagic.data(), 4) == 0;
  in.clear();
  in.seekg(0);
  if (binary) return parse_signal_binary(in, path);
  if (!(csv_rate > 0.0)) throw DomainError(path + ": CSV signals need a positive sampling rate");
  return parse_signal_csv(in, csv_rate, path);
}

WindowSet parse_windows_csv(std::istream& in, double rate, const std::string& source) {
  auto where = [&](std::size_t line) { return source + ":" + std::to_string(line) + ": "; };
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::vector<std::string>> header;
  while (!header && std::getline(in, line)) {
    ++line_no;
    if (!text::trim(line).empty()) header = text::split_csv(line);
  }
  if (!header) throw ParseError(source + ": missing header row");
  const bool labeled = !header->empty() && header->back() == "label";
  WindowSet set;
  set.rate = rate;
  set.length = header->size() - (labeled ? 1 : 0);
  for (std::size_t i = 0; i < set.length; ++i) {
    if ((*header)[i] != "x" + std::to_string(i)) throw ParseError(where(line_no) + "expected column x" + std::to_string(i));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto fields = text::split_csv(line);
    if (!fields || fields->size() != header->size()) throw ParseError(where(line_no) + "wrong number of fields");
    std::vector<double> w;
    w.reserve(set.length);
    for (std::size_t i = 0; i < set.length; ++i) {
      const auto v = text::parse_double((*fields)[i]);
      if (!v || !std::isfinite(*v)) throw ParseError(where(line_no) + "bad sample '" + (*fields)[i] + "'");
      w.push_back(*v);
    }
    set.windows.push_back(std::move(w));
    if (labeled) set.labels.push_back(fields->back());
  }
  set.validate();
  return set;
}

void write_windows_csv(std::ostream& out, const WindowSet& set) {
  for (std::size_t i = 0; i < set.length; ++i) out << (i ? "," : "") << 'x' << i;
  if (set.labeled()) out << (set.length ? "," : "") << "label";
  out << '\n';
  for (std::size_t w = 0; w < set.windows.size(); ++w) {
    for (std::size_t i = 0; i < set.length; ++i) out << (i ? "," : "") << text::format_double(set.windows[w][i]);
    if (set.labeled()) out << (set.length ? "," : "") << text::csv_field(set.labels[w]);
    out << '\n';
  }
}

}  // namespace hpscape
