#pragma once

#include <cstdint>
#include <numeric>

namespace heis {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Canonical representative of a mod m in [0, m). m >= 1.
constexpr i64 mod_reduce(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

constexpr i64 add_mod(i64 a, i64 b, i64 m) { return mod_reduce(mod_reduce(a, m) + mod_reduce(b, m), m); }

constexpr i64 sub_mod(i64 a, i64 b, i64 m) { return mod_reduce(mod_reduce(a, m) - mod_reduce(b, m), m); }

// a*b mod m without intermediate overflow.
constexpr i64 mul_mod(i64 a, i64 b, i64 m) {
    __int128 p = static_cast<__int128>(mod_reduce(a, m)) * mod_reduce(b, m);
    return static_cast<i64>(p % m);
}

constexpr i64 lcm_i64(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

}  // namespace heis
