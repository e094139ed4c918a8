// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace angproj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// lalg
class SingularMatrix : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class DuplicateColumn : public Error { public: using Error::Error; };
class SizeLimitExceeded : public Error { public: using Error::Error; };
class NonFiniteEntry : public Error { public: using Error::Error; };

// angmom
class InvalidLabel : public Error { public: using Error::Error; };
class PoleInC : public Error { public: using Error::Error; };

// projector
class LevelOutOfRange : public Error { public: using Error::Error; };
class LabelMismatch : public Error { public: using Error::Error; };
class TruncationTooSmall : public Error { public: using Error::Error; };

// manybody / spectrum
class BadIndex : public Error { public: using Error::Error; };
class VanishingOverlap : public Error { public: using Error::Error; };
class ModelInvalid : public Error { public: using Error::Error; };
class NormTooSmall : public Error { public: using Error::Error; };

[[noreturn]] void throw_bad_index(const std::string& what, long index);

} // namespace angproj
