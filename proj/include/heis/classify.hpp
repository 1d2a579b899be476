#pragma once

// Classification driver: abelian groups of a given order up to
// isomorphism (partitions of the prime exponents), and the count of
// finite Heisenberg groups with phase-space order n^2. The latter is
// computed from the phase side (paired invariant factors) and
// cross-checked against the base side (K -> every other factor must
// biject onto the abelian groups of order n).

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "heis/error.hpp"
#include "heis/group.hpp"
#include "heis/reduction.hpp"

namespace heis {

// All partitions of n into weakly decreasing positive parts.
inline std::vector<std::vector<int>> integer_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// Prime factorization by trial division, (prime, exponent) pairs.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) throw Error("factorize: argument must be >= 1");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// All isomorphism classes of abelian groups of the given order, in
// invariant-factor form, sorted lexicographically by factor list.
inline std::vector<FiniteAbelianGroup> enumerate_abelian_groups(i64 order) {
    auto primes = factorize(order);
    std::vector<std::vector<std::vector<int>>> choices;  // per prime: partitions of its exponent
    for (auto [p, e] : primes) choices.push_back(integer_partitions(e));

    std::vector<FiniteAbelianGroup> out;
    std::vector<std::size_t> pick(primes.size(), 0);
    for (;;) {
        std::size_t len = 0;
        for (std::size_t t = 0; t < primes.size(); ++t) len = std::max(len, choices[t][pick[t]].size());
        std::vector<i64> factors(len, 1);
        for (std::size_t t = 0; t < primes.size(); ++t) {
            const auto& part = choices[t][pick[t]];
            for (std::size_t i = 0; i < part.size(); ++i)
                for (int rep = 0; rep < part[i]; ++rep) factors[i] *= primes[t].first;
        }
        out.push_back(FiniteAbelianGroup::from_factors(std::move(factors)));

        std::size_t t = 0;
        while (t < primes.size() && ++pick[t] == choices[t].size()) pick[t++] = 0;
        if (t == primes.size()) break;
        if (primes.empty()) break;
    }
    std::sort(out.begin(), out.end(), [](const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return a.factors() < b.factors(); });
    return out;
}

struct ClassificationRecord {
    i64 order_n = 1;                                // the |A|
    std::vector<FiniteAbelianGroup> phase_groups;   // K of order n^2 admitting non-degenerate forms
    std::size_t count = 0;
};

// Heisenberg groups with |phase space| = n^2, one per admissible phase
// group. Asserts the bijection K <-> (base group of order n) both ways.
inline ClassificationRecord classify_heisenberg(i64 n) {
    if (n < 1) throw Error("classify_heisenberg: order must be >= 1");
    if (n > (i64{1} << 31)) throw BoundExceeded("classify_heisenberg: order out of budget");

    ClassificationRecord rec;
    rec.order_n = n;
    for (const FiniteAbelianGroup& k : enumerate_abelian_groups(n * n))
        if (exists_nondegenerate(k)) rec.phase_groups.push_back(k);
    rec.count = rec.phase_groups.size();

    // cross-check: pairing-up must biject onto abelian groups of order n
    std::vector<FiniteAbelianGroup> bases;
    for (const FiniteAbelianGroup& k : rec.phase_groups) bases.push_back(paired_base(k));
    std::sort(bases.begin(), bases.end(), [](const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return a.factors() < b.factors(); });
    std::vector<FiniteAbelianGroup> all = enumerate_abelian_groups(n);
    if (bases != all) throw Error("classify_heisenberg: phase groups do not biject onto abelian groups of order n (internal)");
    for (const FiniteAbelianGroup& a : all)
        if (!exists_nondegenerate(product_with_dual(a))) throw Error("classify_heisenberg: doubled base not admissible (internal)");
    return rec;
}

}  // namespace heis
