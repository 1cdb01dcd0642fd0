#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace baudsync {

/// Invalid argument to a design or processing routine.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Run configuration failed validation.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The CMA tap vector left its energy bound.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::size_t symbol_index, double tap_energy);

    std::size_t symbol_index() const noexcept { return symbol_index_; }
    double tap_energy() const noexcept { return tap_energy_; }

private:
    std::size_t symbol_index_;
    double tap_energy_;
};

/// Base for capture and report I/O failures. Always carries the path.
class IoError : public std::runtime_error {
public:
    IoError(const std::string& path, const std::string& what);
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class TruncatedPayloadError : public IoError {
public:
    using IoError::IoError;
};

class MalformedSidecarError : public IoError {
public:
    using IoError::IoError;
};

class NonFiniteSampleError : public IoError {
public:
    NonFiniteSampleError(const std::string& path, std::size_t sample_index);
    std::size_t sample_index() const noexcept { return sample_index_; }

private:
    std::size_t sample_index_;
};

}  // namespace baudsync
