#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dampwave {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error { public: using Error::Error; };
class PoleError : public Error { public: using Error::Error; };
class OverflowError : public Error { public: using Error::Error; };
class ConstructionFailure : public Error { public: using Error::Error; };
class BlowupError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class ProfileUnsupported : public Error { public: using Error::Error; };
class SupportError : public Error { public: using Error::Error; };
class CaseIRangeError : public Error { public: using Error::Error; };
class WindowError : public Error { public: using Error::Error; };
class BudgetExceeded : public Error { public: using Error::Error; };

/// Raised by the config parser; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Raised when one or more invariants are violated. Lists all of them.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v)
    {
        std::string out;
        for (const auto& s : v) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }
    std::vector<std::string> violations_;
};

} // namespace dampwave
