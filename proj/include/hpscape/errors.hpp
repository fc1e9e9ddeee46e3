#pragma once

#include <stdexcept>
#include <string>

namespace hpscape {

/// Root of every validation or domain failure raised by the library.
/// The CLI maps anything derived from this to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ingestion.
class ParseError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class DuplicateError : public Error { using Error::Error; };
class RangeError : public Error { using Error::Error; };

// Lookups.
class UnknownHyperparam : public Error { using Error::Error; };
class UnknownDataset : public Error { using Error::Error; };

// Statistics.
class EmptyInput : public Error { using Error::Error; };
class TooFewConfigs : public Error { using Error::Error; };
class SpaceMismatch : public Error { using Error::Error; };

// Influence.
class SameHyperparam : public Error { using Error::Error; };
class MissingRows : public Error { using Error::Error; };

// Defaults search.
class UnscoredConfig : public Error { using Error::Error; };
class OutOfRange : public Error { using Error::Error; };
class TooFewBenchmarks : public Error { using Error::Error; };

// Signal processing.
class SignalTooShort : public Error { using Error::Error; };
class CutoffOutOfRange : public Error { using Error::Error; };
class UnlabeledWindows : public Error { using Error::Error; };
class ClassTooSmall : public Error { using Error::Error; };

}  // namespace hpscape
