#pragma once

// Finite abelian groups in invariant-factor form and their elements.
//
// A group is the list of invariant factors (d1, ..., dn) with
// dn | d(n-1) | ... | d1 and every di >= 2; the trivial group is the
// empty list. An element is its coefficient vector, coordinate i
// reduced mod di. The same presentation serves as the group's own
// Pontryagin dual: the character attached to coefficient vector y sends
// x to zeta^t with t = dual_pairing(x, y) and zeta a fixed primitive
// d1-th root of unity.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heis/error.hpp"
#include "heis/int_matrix.hpp"
#include "heis/modarith.hpp"

namespace heis {

class FiniteAbelianGroup {
  public:
    FiniteAbelianGroup() = default;  // trivial group

    // Canonicalizes an arbitrary list of cyclic orders (entries >= 1)
    // into invariant-factor form; entries equal to 1 are dropped. When
    // the multiset is not already a divisibility chain, the invariant
    // factors are read off the Smith form of diag(orders).
    static FiniteAbelianGroup from_factors(std::vector<i64> orders) {
        for (i64 d : orders)
            if (d < 1) throw Error("group factor must be >= 1");
        std::erase(orders, 1);
        std::sort(orders.begin(), orders.end(), std::greater<>());
        bool chain = true;
        for (std::size_t i = 0; i + 1 < orders.size(); ++i)
            if (orders[i] % orders[i + 1] != 0) {
                chain = false;
                break;
            }
        if (!chain) {
            IntMatrix diag(orders.size(), orders.size());
            for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = orders[i];
            SmithForm s = smith_normal_form(diag);
            orders.clear();
            for (std::size_t i = 0; i < s.d.rows(); ++i) {
                const BigInt& e = s.d(i, i);
                if (e > 1) orders.push_back(static_cast<i64>(e));
            }
            std::sort(orders.begin(), orders.end(), std::greater<>());
        }
        FiniteAbelianGroup g;
        g.factors_ = std::move(orders);
        return g;
    }

    std::size_t rank() const { return factors_.size(); }
    i64 factor(std::size_t i) const { return factors_[i]; }
    const std::vector<i64>& factors() const { return factors_; }
    bool trivial() const { return factors_.empty(); }

    // Largest invariant factor d1; 1 for the trivial group.
    i64 exponent() const { return factors_.empty() ? 1 : factors_.front(); }

    i64 order() const {
        i64 n = 1;
        for (i64 d : factors_) {
            if (n > (i64{1} << 62) / d) throw BoundExceeded("group order exceeds 2^62");
            n *= d;
        }
        return n;
    }

    bool operator==(const FiniteAbelianGroup&) const = default;

  private:
    std::vector<i64> factors_;
};

class GroupElement {
  public:
    GroupElement(FiniteAbelianGroup group, std::vector<i64> coeffs) : group_(std::move(group)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != group_.rank()) throw Error("element coefficient count does not match group rank");
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = mod_reduce(coeffs_[i], group_.factor(i));
    }

    static GroupElement zero(const FiniteAbelianGroup& g) { return GroupElement(g, std::vector<i64>(g.rank(), 0)); }

    const FiniteAbelianGroup& group() const { return group_; }
    i64 coeff(std::size_t i) const { return coeffs_[i]; }
    const std::vector<i64>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](i64 c) { return c == 0; });
    }

    friend GroupElement operator+(const GroupElement& a, const GroupElement& b) {
        require_same_group(a, b);
        std::vector<i64> c(a.coeffs_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = add_mod(a.coeffs_[i], b.coeffs_[i], a.group_.factor(i));
        return GroupElement(a.group_, std::move(c));
    }

    friend GroupElement operator-(const GroupElement& a) {
        std::vector<i64> c(a.coeffs_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_reduce(-a.coeffs_[i], a.group_.factor(i));
        return GroupElement(a.group_, std::move(c));
    }

    friend GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }

    GroupElement scaled(i64 s) const {
        std::vector<i64> c(coeffs_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = mul_mod(coeffs_[i], s, group_.factor(i));
        return GroupElement(group_, std::move(c));
    }

    // Order of the element in the group.
    i64 additive_order() const {
        i64 t = 1;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            i64 d = group_.factor(i);
            t = lcm_i64(t, d / std::gcd(d, coeffs_[i]));
        }
        return t;
    }

    bool operator==(const GroupElement&) const = default;
    auto operator<=>(const GroupElement& o) const { return coeffs_ <=> o.coeffs_; }

    static void require_same_group(const GroupElement& a, const GroupElement& b) {
        if (a.group_ != b.group_) throw Error("elements belong to different groups");
    }

  private:
    FiniteAbelianGroup group_;
    std::vector<i64> coeffs_;
};

// Exponent t in [0, d1) with chi_y(x) = zeta^t for the character chi_y
// attached to y: t = sum_i x_i * y_i * (d1 / d_i) mod d1. This
// identifies the group with its Pontryagin dual; the pairing is perfect.
inline i64 dual_pairing_raw(const FiniteAbelianGroup& g, std::span<const i64> x, std::span<const i64> y) {
    const i64 d1 = g.exponent();
    i64 t = 0;
    for (std::size_t i = 0; i < g.rank(); ++i) t = add_mod(t, mul_mod(mul_mod(x[i], y[i], d1), d1 / g.factor(i), d1), d1);
    return t;
}

inline i64 dual_pairing(const GroupElement& x, const GroupElement& y) {
    GroupElement::require_same_group(x, y);
    return dual_pairing_raw(x.group(), x.coeffs(), y.coeffs());
}

// ---------------------------------------------------------------------------
// Exhaustive-operation budget and element enumeration

// Element budget for exhaustive operations; override with HEISEN_MAX_ORDER.
inline u64 exhaustive_bound() {
    if (const char* s = std::getenv("HEISEN_MAX_ORDER")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && v > 0) return v;
    }
    return 1'000'000;
}

inline i64 checked_order(const FiniteAbelianGroup& g, u64 bound) {
    i64 n = g.order();
    if (static_cast<u64>(n) > bound) throw BoundExceeded("group order " + std::to_string(n) + " exceeds the exhaustive bound " + std::to_string(bound));
    return n;
}

// Lexicographic rank of an element (first coordinate most significant).
inline i64 element_index(const GroupElement& x) {
    i64 idx = 0;
    for (std::size_t i = 0; i < x.group().rank(); ++i) idx = idx * x.group().factor(i) + x.coeff(i);
    return idx;
}

inline GroupElement element_at(const FiniteAbelianGroup& g, i64 index) {
    std::vector<i64> c(g.rank());
    for (std::size_t i = g.rank(); i-- > 0;) {
        c[i] = index % g.factor(i);
        index /= g.factor(i);
    }
    return GroupElement(g, std::move(c));
}

// All elements, lexicographic order, each exactly once.
inline std::vector<GroupElement> enumerate_elements(const FiniteAbelianGroup& g) {
    i64 n = checked_order(g, exhaustive_bound());
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(n));
    for (i64 i = 0; i < n; ++i) out.push_back(element_at(g, i));
    return out;
}

// i-th standard generator as an element.
inline GroupElement generator(const FiniteAbelianGroup& g, std::size_t i) {
    std::vector<i64> c(g.rank(), 0);
    c[i] = 1;
    return GroupElement(g, std::move(c));
}

// ---------------------------------------------------------------------------
// Group literal: "Z/d1 x Z/d2 x ... x Z/dn" ('x' or '*' separators,
// whitespace optional). "1" denotes the trivial group. Parsing feeds
// from_factors, so "Z/2 x Z/3" canonicalizes to "Z/6".

inline FiniteAbelianGroup parse_group(std::string_view text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& what) -> void {
        throw ParseError("group literal: " + what + " at position " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
    };

    skip_ws();
    if (pos < text.size() && text[pos] == '1') {
        ++pos;
        skip_ws();
        if (pos != text.size()) fail("trailing input after trivial group");
        return {};
    }

    std::vector<i64> factors;
    for (;;) {
        skip_ws();
        if (pos >= text.size() || (text[pos] != 'Z' && text[pos] != 'z')) fail("expected 'Z'");
        ++pos;
        skip_ws();
        if (pos >= text.size() || text[pos] != '/') fail("expected '/'");
        ++pos;
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a modulus");
        i64 d = 0;
        auto [p, ec] = std::from_chars(text.data() + start, text.data() + pos, d);
        if (ec != std::errc{} || d < 1) fail("modulus out of range");
        factors.push_back(d);
        skip_ws();
        if (pos == text.size()) break;
        if (text[pos] != 'x' && text[pos] != 'X' && text[pos] != '*') fail("expected separator 'x' or '*'");
        ++pos;
    }
    return FiniteAbelianGroup::from_factors(std::move(factors));
}

inline std::string group_literal(const FiniteAbelianGroup& g) {
    if (g.trivial()) return "1";
    std::string s;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (i) s += " x ";
        s += "Z/" + std::to_string(g.factor(i));
    }
    return s;
}

}  // namespace heis
