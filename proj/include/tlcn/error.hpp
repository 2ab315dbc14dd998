#ifndef TLCN_ERROR_HPP
#define TLCN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tlcn {

// Malformed input text (bad CSV line, bad config syntax).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Well-formed input that violates a domain constraint (port range,
// unsorted trace, bad parameter value).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace tlcn

#endif
