#pragma once

#include <stdexcept>
#include <string>

namespace iqsim {

// Invalid or inconsistent configuration (bad parameter, undersampled beat,
// unknown config key). CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Violated numeric-domain precondition (negative range, N = 0).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Signal analysis could not produce a result (no detectable peak).
class AnalysisError : public std::runtime_error {
public:
    explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or incomplete frame data handed to the DSP pipeline.
class FrameError : public std::runtime_error {
public:
    explicit FrameError(const std::string& what) : std::runtime_error(what) {}
};

// File I/O failure; message carries the offending path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace iqsim
