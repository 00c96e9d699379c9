#pragma once

#include <stdexcept>
#include <string>

namespace sovxxz {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error { using Error::Error; };
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, int index)
        : Error(what), index_(index) {}
    int index() const { return index_; }
private:
    int index_;
};
class ParameterError : public Error { using Error::Error; };
class SizeError : public Error { using Error::Error; };
class SingularError : public Error { using Error::Error; };
class DegeneracyError : public Error { using Error::Error; };
class PreconditionError : public Error { using Error::Error; };
class CertificationError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };

}  // namespace sovxxz
