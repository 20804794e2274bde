#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvpose {

enum class ErrorCode {
    ZeroNormQuaternion,
    NonPositiveDepth,
    InvalidArgument,
    BBoxLargerThanImage,
    BBoxOutOfBounds,
    EmptyMask,
    ParseError,
    UnsupportedElement,
    ObjectBehindCamera,
    MissingSceneHandle,
    EmptyInput,
    IoError,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : Error(ErrorCode::ParseError, source + ":" + std::to_string(line) + ": " + what),
          source_(std::move(source)), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

}  // namespace mvpose
