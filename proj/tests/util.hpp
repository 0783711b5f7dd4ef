#pragma once

#include <string>
#include <vector>

#include "brute.hpp"
#include "symfix/bitstring.hpp"
#include "symfix/code.hpp"

namespace testutil {

inline brute::Words words(const std::vector<symfix::Bitstring>& v) {
    brute::Words out;
    for (const auto& w : v) out.push_back(w.str());
    return out;
}

inline brute::Words words(const symfix::Code& c) { return words(c.words()); }

inline symfix::Code code(const brute::Words& w, int n) { return symfix::Code::parse(w, n); }

inline symfix::Bitstring bs(const std::string& s) { return symfix::Bitstring::parse(s); }

inline symfix::LengthSequence seq(std::vector<int> l) { return symfix::LengthSequence(std::move(l)); }

}  // namespace testutil
