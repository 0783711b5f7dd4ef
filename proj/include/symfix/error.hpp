#pragma once

#include <stdexcept>
#include <string>

namespace symfix {

// Parameter outside a supported range (n too small, odd cluster size, ...).
class RangeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Domain input that violates a structural rule (not a palindrome, pivot not
// in the code, unnormalized probabilities, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace symfix
