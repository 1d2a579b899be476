#pragma once

// Homomorphisms between finite abelian groups as constrained integer
// matrices: entry (i, j) maps source generator j into target generator
// i, is stored reduced mod the target order t_i, and must be divisible
// by t_i / gcd(t_i, s_j) for the map to be well defined.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heis/error.hpp"
#include "heis/group.hpp"
#include "heis/int_matrix.hpp"
#include "heis/modarith.hpp"

namespace heis {

class HomMatrix {
  public:
    static HomMatrix make(FiniteAbelianGroup source, FiniteAbelianGroup target, std::vector<std::vector<i64>> entries) {
        HomMatrix h;
        h.source_ = std::move(source);
        h.target_ = std::move(target);
        const std::size_t nr = h.target_.rank(), nc = h.source_.rank();
        if (entries.size() != nr) throw Error("hom matrix: expected " + std::to_string(nr) + " rows");
        h.a_.resize(nr * nc);
        for (std::size_t i = 0; i < nr; ++i) {
            if (entries[i].size() != nc) throw Error("hom matrix: row " + std::to_string(i) + " has wrong length");
            for (std::size_t j = 0; j < nc; ++j) h.a_[i * nc + j] = mod_reduce(entries[i][j], h.target_.factor(i));
        }
        h.validate();
        return h;
    }

    static HomMatrix identity(const FiniteAbelianGroup& g) {
        HomMatrix h;
        h.source_ = h.target_ = g;
        h.a_.assign(g.rank() * g.rank(), 0);
        for (std::size_t i = 0; i < g.rank(); ++i) h.a_[i * g.rank() + i] = mod_reduce(1, g.factor(i));
        return h;
    }

    static HomMatrix zero(FiniteAbelianGroup source, FiniteAbelianGroup target) {
        HomMatrix h;
        h.source_ = std::move(source);
        h.target_ = std::move(target);
        h.a_.assign(h.target_.rank() * h.source_.rank(), 0);
        return h;
    }

    const FiniteAbelianGroup& source() const { return source_; }
    const FiniteAbelianGroup& target() const { return target_; }
    bool is_endomorphism() const { return source_ == target_; }

    i64 entry(std::size_t i, std::size_t j) const { return a_[i * source_.rank() + j]; }

    std::vector<std::vector<i64>> entries() const {
        std::vector<std::vector<i64>> out(target_.rank(), std::vector<i64>(source_.rank()));
        for (std::size_t i = 0; i < target_.rank(); ++i)
            for (std::size_t j = 0; j < source_.rank(); ++j) out[i][j] = entry(i, j);
        return out;
    }

    void apply_raw(std::span<const i64> x, std::span<i64> out) const {
        for (std::size_t i = 0; i < target_.rank(); ++i) {
            const i64 ti = target_.factor(i);
            i64 acc = 0;
            for (std::size_t j = 0; j < source_.rank(); ++j) acc = add_mod(acc, mul_mod(entry(i, j), x[j], ti), ti);
            out[i] = acc;
        }
    }

    GroupElement apply(const GroupElement& x) const {
        if (x.group() != source_) throw Error("hom apply: element not in the source group");
        std::vector<i64> y(target_.rank());
        apply_raw(x.coeffs(), y);
        return GroupElement(target_, std::move(y));
    }

    // Transpose with respect to the self-dual presentations: the unique
    // hom with dual_pairing(apply(x), y) = dual_pairing(x, transpose
    // applied to y) for all x, y. Entry (j, i) is a_ij * s_j / t_i; the
    // division is exact because of the well-definedness constraint.
    HomMatrix transpose() const {
        HomMatrix t;
        t.source_ = target_;
        t.target_ = source_;
        t.a_.resize(a_.size());
        for (std::size_t i = 0; i < target_.rank(); ++i)
            for (std::size_t j = 0; j < source_.rank(); ++j) {
                const i64 ti = target_.factor(i), sj = source_.factor(j);
                __int128 num = static_cast<__int128>(entry(i, j)) * sj;
                if (num % ti != 0) throw Error("hom transpose: constraint violation (internal)");
                t.a_[j * target_.rank() + i] = mod_reduce(static_cast<i64>(num / ti), sj);
            }
        t.validate();
        return t;
    }

    IntMatrix lift() const {
        IntMatrix m(target_.rank(), source_.rank());
        for (std::size_t i = 0; i < target_.rank(); ++i)
            for (std::size_t j = 0; j < source_.rank(); ++j) m(i, j) = entry(i, j);
        return m;
    }

    bool operator==(const HomMatrix&) const = default;

  private:
    void validate() const {
        for (std::size_t i = 0; i < target_.rank(); ++i)
            for (std::size_t j = 0; j < source_.rank(); ++j) {
                const i64 ti = target_.factor(i), sj = source_.factor(j);
                const i64 need = ti / std::gcd(ti, sj);
                if (entry(i, j) % need != 0)
                    throw Error("hom matrix: entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(entry(i, j)) +
                                " must be divisible by " + std::to_string(need));
            }
    }

    FiniteAbelianGroup source_, target_;
    std::vector<i64> a_;  // row-major, target.rank() x source.rank()
};

// b after a. The divisibility constraint is preserved by composition;
// HomMatrix::make re-asserts it.
inline HomMatrix compose(const HomMatrix& b, const HomMatrix& a) {
    if (a.target() != b.source()) throw Error("hom compose: inner groups do not match");
    const std::size_t nr = b.target().rank(), nc = a.source().rank(), nk = a.target().rank();
    std::vector<std::vector<i64>> e(nr, std::vector<i64>(nc, 0));
    for (std::size_t i = 0; i < nr; ++i) {
        const i64 ti = b.target().factor(i);
        for (std::size_t j = 0; j < nc; ++j) {
            i64 acc = 0;
            for (std::size_t k = 0; k < nk; ++k) acc = add_mod(acc, mul_mod(b.entry(i, k), a.entry(k, j), ti), ti);
            e[i][j] = acc;
        }
    }
    return HomMatrix::make(a.source(), b.target(), std::move(e));
}

// Solves A x = b (mod d_i row-wise) where A maps into the group with
// factors d; x lives in `source`. Uses the Smith form of [A | diag(d)].
inline std::optional<std::vector<i64>> solve_congruence(const HomMatrix& a, std::span<const i64> b) {
    const std::size_t n = a.target().rank(), k = a.source().rank();
    IntMatrix m(n, k + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) m(i, j) = a.entry(i, j);
        m(i, k + i) = a.target().factor(i);
    }
    SmithForm s = smith_normal_form(m);
    // m*y = b  <=>  d*(v^-1 y) = u*b; z_i = (u*b)_i / s_i must be integral.
    std::vector<BigInt> ub(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ub[i] += s.u(i, j) * b[j];
    std::vector<BigInt> z(k + n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const BigInt& si = s.d(i, i);
        if (si == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % si != 0) return std::nullopt;
            z[i] = ub[i] / si;
        }
    }
    std::vector<i64> x(k);
    for (std::size_t j = 0; j < k; ++j) {
        BigInt acc = 0;
        for (std::size_t i = 0; i < k + n; ++i) acc += s.v(j, i) * z[i];
        const i64 sj = a.source().factor(j);
        BigInt r = acc % sj;
        if (r < 0) r += sj;
        x[j] = static_cast<i64>(r);
    }
    return x;
}

// True iff the endomorphism is a bijection. Exhaustive image check for
// orders <= 4096; otherwise surjectivity via the Smith form of
// [A | diag(d)] (all invariant factors 1), which for equal finite
// source and target is bijectivity.
inline bool is_automorphism(const HomMatrix& alpha) {
    if (!alpha.is_endomorphism()) throw Error("is_automorphism: source and target differ");
    const FiniteAbelianGroup& g = alpha.source();
    const i64 n = g.order();
    if (n <= 4096) {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        std::vector<i64> x(g.rank(), 0), y(g.rank());
        for (i64 idx = 0;; ++idx) {
            alpha.apply_raw(x, y);
            i64 r = 0;
            for (std::size_t i = 0; i < g.rank(); ++i) r = r * g.factor(i) + y[i];
            if (seen[static_cast<std::size_t>(r)]) return false;
            seen[static_cast<std::size_t>(r)] = true;
            // advance mixed-radix counter
            std::size_t i = g.rank();
            while (i-- > 0) {
                if (++x[i] < g.factor(i)) break;
                x[i] = 0;
                if (i == 0) return true;
            }
            if (g.rank() == 0) return true;
        }
    }
    const std::size_t r = g.rank();
    IntMatrix m(r, 2 * r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) m(i, j) = alpha.entry(i, j);
        m(i, r + i) = g.factor(i);
    }
    SmithForm s = smith_normal_form(m);
    for (std::size_t i = 0; i < r; ++i)
        if (s.d(i, i) != 1) return false;
    return true;
}

// Two-sided inverse when alpha is an automorphism; nullopt otherwise.
inline std::optional<HomMatrix> hom_inverse(const HomMatrix& alpha) {
    if (!alpha.is_endomorphism()) throw Error("hom_inverse: source and target differ");
    const FiniteAbelianGroup& g = alpha.source();
    const std::size_t r = g.rank();
    std::vector<std::vector<i64>> cols;
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<i64> ek(r, 0);
        ek[k] = 1;
        auto x = solve_congruence(alpha, ek);
        if (!x) return std::nullopt;
        cols.push_back(std::move(*x));
    }
    std::vector<std::vector<i64>> e(r, std::vector<i64>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) e[i][k] = cols[k][i];
    try {
        HomMatrix beta = HomMatrix::make(g, g, std::move(e));
        if (compose(alpha, beta) != HomMatrix::identity(g) || compose(beta, alpha) != HomMatrix::identity(g)) return std::nullopt;
        return beta;
    } catch (const Error&) {
        // solve produced a column that is not a homomorphism: alpha has
        // a preimage column but no two-sided inverse
        return std::nullopt;
    }
}

}  // namespace heis
