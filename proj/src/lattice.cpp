#include "perigrowth/lattice.hpp"

#include "perigrowth/error.hpp"

#include <sstream>

namespace perigrowth {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceLimitError("integer overflow in lattice arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ResourceLimitError("integer overflow in lattice arithmetic");
    return r;
}

static void require_same_length(std::size_t a, std::size_t b) {
    if (a != b) throw InputError("lattice vector length mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

LatticeVector add(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    require_same_length(a.size(), b.size());
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

LatticeVector sub(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    require_same_length(a.size(), b.size());
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (__builtin_sub_overflow(a[i], b[i], &r[i])) throw ResourceLimitError("integer overflow in lattice arithmetic");
    }
    return r;
}

LatticeVector negate(std::span<const std::int64_t> a) {
    LatticeVector zero(a.size(), 0);
    return sub(zero, a);
}

LatticeVector scale(std::span<const std::int64_t> a, std::int64_t k) {
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(a[i], k);
    return r;
}

void add_in_place(LatticeVector& a, std::span<const std::int64_t> b) {
    require_same_length(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = checked_add(a[i], b[i]);
}

bool is_zero(std::span<const std::int64_t> a) {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

std::string format_vector(std::span<const std::int64_t> a, char sep) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << sep;
        os << a[i];
    }
    os << ')';
    return os.str();
}

} // namespace perigrowth
