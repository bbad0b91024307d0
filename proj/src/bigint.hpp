#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace zl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// FNV-1a over a sequence of ints; good enough for the memo tables here.
inline std::size_t hash_ints(const int* p, std::size_t n, std::size_t seed = 1469598103934665603ull) {
    std::size_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(p[i] + 0x40000000));
        h *= 1099511628211ull;
    }
    return h;
}

struct IntVecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        return hash_ints(v.data(), v.size());
    }
};

struct IntVecVecHash {
    std::size_t operator()(const std::vector<std::vector<int>>& vv) const {
        std::size_t h = 14695981039346656037ull;
        for (const auto& v : vv) {
            h = hash_ints(v.data(), v.size(), h);
            h ^= 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace zl
