#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace perigrowth {

// An element of L = Z^n. Arithmetic is overflow-checked.
using LatticeVector = std::vector<std::int64_t>;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

LatticeVector add(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
LatticeVector sub(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
LatticeVector negate(std::span<const std::int64_t> a);
LatticeVector scale(std::span<const std::int64_t> a, std::int64_t k);
void add_in_place(LatticeVector& a, std::span<const std::int64_t> b);
bool is_zero(std::span<const std::int64_t> a);

// "(1,-2,0)"
std::string format_vector(std::span<const std::int64_t> a, char sep = ',');

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct LatticeVectorHash {
    std::size_t operator()(const LatticeVector& v) const noexcept {
        std::size_t h = v.size();
        for (auto x : v) h = hash_combine(h, std::hash<std::int64_t>{}(x));
        return h;
    }
};

} // namespace perigrowth
