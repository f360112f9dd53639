#pragma once

#include <stdexcept>
#include <string>

namespace wmdisc {

// Postselection succeeded with probability below the degeneracy threshold;
// the conditional state is undefined and is never silently normalized.
class degenerate_postselection_error : public std::runtime_error {
  public:
    explicit degenerate_postselection_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Input lies outside the validity region of a closed-form result.
class regime_error : public std::domain_error {
  public:
    explicit regime_error(const std::string& what) : std::domain_error(what) {}
};

// The two states cannot be discriminated (identical, or not pure).
class no_discrimination_error : public std::invalid_argument {
  public:
    explicit no_discrimination_error(const std::string& what)
        : std::invalid_argument(what) {}
};

// Malformed or inconsistent experiment configuration.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wmdisc
