#pragma once

// Alternating bicharacters on a finite abelian group, stored as the
// matrix of zeta-exponents on generator pairs: entry (i, j) is the
// exponent q with e(x_i, x_j) = zeta^q for a fixed primitive d1-th
// root of unity zeta. Entries live mod d1, must be divisible by
// d1 / gcd(d_i, d_j), and the matrix is skew-symmetric with zero
// diagonal. All values are exact residues; no floating point.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heis/error.hpp"
#include "heis/group.hpp"
#include "heis/hom.hpp"
#include "heis/modarith.hpp"

namespace heis {

class AlternatingForm {
  public:
    static AlternatingForm make(FiniteAbelianGroup group, std::vector<std::vector<i64>> q) {
        AlternatingForm f;
        f.group_ = std::move(group);
        const std::size_t n = f.group_.rank();
        const i64 d1 = f.group_.exponent();
        if (q.size() != n) throw Error("form matrix: expected " + std::to_string(n) + " rows");
        f.q_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (q[i].size() != n) throw Error("form matrix: row " + std::to_string(i) + " has wrong length");
            for (std::size_t j = 0; j < n; ++j) f.q_[i * n + j] = mod_reduce(q[i][j], d1);
        }
        f.validate();
        return f;
    }

    static AlternatingForm zero(FiniteAbelianGroup group) {
        AlternatingForm f;
        f.group_ = std::move(group);
        f.q_.assign(f.group_.rank() * f.group_.rank(), 0);
        return f;
    }

    const FiniteAbelianGroup& group() const { return group_; }
    std::size_t rank() const { return group_.rank(); }
    i64 modulus() const { return group_.exponent(); }
    i64 entry(std::size_t i, std::size_t j) const { return q_[i * rank() + j]; }

    std::vector<std::vector<i64>> matrix() const {
        std::vector<std::vector<i64>> out(rank(), std::vector<i64>(rank()));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) out[i][j] = entry(i, j);
        return out;
    }

    // zeta-exponent of e(k, l), extended biadditively from generators.
    i64 eval_raw(std::span<const i64> k, std::span<const i64> l) const {
        const i64 d1 = modulus();
        i64 acc = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (k[i] == 0) continue;
            i64 row = 0;
            for (std::size_t j = 0; j < rank(); ++j) {
                if (entry(i, j) == 0 || l[j] == 0) continue;
                row = add_mod(row, mul_mod(entry(i, j), l[j], d1), d1);
            }
            acc = add_mod(acc, mul_mod(k[i], row, d1), d1);
        }
        return acc;
    }

    i64 eval(const GroupElement& k, const GroupElement& l) const {
        if (k.group() != group_ || l.group() != group_) throw Error("form eval: element not in the form's group");
        return eval_raw(k.coeffs(), l.coeffs());
    }

    // Matrix of e-flat : K -> K-hat in the self-dual presentation; the
    // unique hom h with dual_pairing(k, h(l)) = eval(k, l). Entry (i, j)
    // is q_ij * d_i / d1 (exact by the divisibility constraint).
    HomMatrix flat() const {
        const std::size_t n = rank();
        const i64 d1 = modulus();
        std::vector<std::vector<i64>> h(n, std::vector<i64>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                __int128 num = static_cast<__int128>(entry(i, j)) * group_.factor(i);
                h[i][j] = static_cast<i64>(num / d1);
            }
        return HomMatrix::make(group_, group_, std::move(h));
    }

    bool operator==(const AlternatingForm&) const = default;

  private:
    void validate() const {
        const std::size_t n = rank();
        const i64 d1 = modulus();
        for (std::size_t i = 0; i < n; ++i) {
            if (entry(i, i) != 0) throw Error("form matrix: diagonal entry q[" + std::to_string(i) + "][" + std::to_string(i) + "] must be 0");
            for (std::size_t j = 0; j < n; ++j) {
                const i64 need = d1 / std::gcd(group_.factor(i), group_.factor(j));
                if (entry(i, j) % need != 0)
                    throw Error("form matrix: entry q[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + std::to_string(entry(i, j)) +
                                " must be a multiple of " + std::to_string(need));
                if (j > i && add_mod(entry(i, j), entry(j, i), d1) != 0)
                    throw Error("form matrix: q[" + std::to_string(j) + "][" + std::to_string(i) + "] breaks skew-symmetry with q[" +
                                std::to_string(i) + "][" + std::to_string(j) + "]");
            }
        }
    }

    FiniteAbelianGroup group_;
    std::vector<i64> q_;
};

inline bool is_nondegenerate(const AlternatingForm& e) { return is_automorphism(e.flat()); }

// A nonzero element of the radical (kernel of e-flat), or nullopt when
// the form is non-degenerate. Exhaustive scan for small groups, Smith
// nullspace of [H | diag(d)] otherwise.
inline std::optional<GroupElement> radical_witness(const AlternatingForm& e) {
    const FiniteAbelianGroup& g = e.group();
    const std::size_t n = g.rank();
    if (g.order() <= 4096) {
        std::vector<std::vector<i64>> gens;
        for (std::size_t j = 0; j < n; ++j) gens.push_back(generator(g, j).coeffs());
        const i64 order = g.order();
        for (i64 idx = 1; idx < order; ++idx) {
            GroupElement k = element_at(g, idx);
            bool in_radical = true;
            for (std::size_t j = 0; j < n && in_radical; ++j)
                if (e.eval_raw(gens[j], k.coeffs()) != 0) in_radical = false;
            if (in_radical) return k;
        }
        return std::nullopt;
    }
    HomMatrix h = e.flat();
    IntMatrix m(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = h.entry(i, j);
        m(i, n + i) = g.factor(i);
    }
    SmithForm s = smith_normal_form(m);
    // kernel basis: columns of v at indices with zero invariant factor
    for (std::size_t c = 0; c < 2 * n; ++c) {
        bool in_kernel = (c >= n) || (s.d(c, c) == 0);
        if (!in_kernel) continue;
        std::vector<i64> x(n);
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
            BigInt r = s.v(j, c) % g.factor(j);
            if (r < 0) r += g.factor(j);
            x[j] = static_cast<i64>(r);
            nonzero |= x[j] != 0;
        }
        if (nonzero) return GroupElement(g, std::move(x));
    }
    return std::nullopt;
}

// Pullback e^alpha(k, l) = e(alpha k, alpha l) for an endomorphism
// alpha, computed as the matrix congruence alpha^T Q alpha mod d1 and
// asserted against pointwise evaluation on generator pairs.
inline AlternatingForm transform(const AlternatingForm& e, const HomMatrix& alpha) {
    if (!alpha.is_endomorphism() || alpha.source() != e.group()) throw Error("transform: alpha must be an endomorphism of the form's group");
    const std::size_t n = e.rank();
    const i64 d1 = e.modulus();
    std::vector<std::vector<i64>> q(n, std::vector<i64>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            i64 acc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (alpha.entry(k, i) == 0) continue;
                i64 row = 0;
                for (std::size_t l = 0; l < n; ++l) row = add_mod(row, mul_mod(e.entry(k, l), alpha.entry(l, j), d1), d1);
                acc = add_mod(acc, mul_mod(alpha.entry(k, i), row, d1), d1);
            }
            q[i][j] = acc;
        }
    AlternatingForm out = AlternatingForm::make(e.group(), std::move(q));
    // pin the row/column convention: matrix result == pointwise result
    std::vector<i64> gi(n, 0), gj(n, 0), ai(n), aj(n);
    for (std::size_t i = 0; i < n; ++i) {
        gi[i] = 1;
        alpha.apply_raw(gi, ai);
        for (std::size_t j = 0; j < n; ++j) {
            gj[j] = 1;
            alpha.apply_raw(gj, aj);
            if (out.entry(i, j) != e.eval_raw(ai, aj)) throw Error("transform: matrix congruence disagrees with pointwise evaluation (internal)");
            gj[j] = 0;
        }
        gi[i] = 0;
    }
    return out;
}

struct TransformedForm {
    AlternatingForm form;
    HomMatrix witness;  // automorphism realizing it: form == transform(input, witness)
};

// Multiplies row i and column i by sigma; requires gcd(sigma, d_i) = 1.
inline TransformedForm scale_generator(const AlternatingForm& e, std::size_t i, i64 sigma) {
    const FiniteAbelianGroup& g = e.group();
    if (i >= g.rank()) throw Error("scale_generator: index out of range");
    if (std::gcd(mod_reduce(sigma, g.factor(i)), g.factor(i)) != 1)
        throw Error("scale_generator: sigma = " + std::to_string(sigma) + " is not a unit mod " + std::to_string(g.factor(i)));
    std::vector<std::vector<i64>> a(g.rank(), std::vector<i64>(g.rank(), 0));
    for (std::size_t k = 0; k < g.rank(); ++k) a[k][k] = (k == i) ? sigma : 1;
    HomMatrix alpha = HomMatrix::make(g, g, std::move(a));
    return {transform(e, alpha), alpha};
}

// Interchanges generators i and j; requires d_i = d_j.
inline TransformedForm swap_generators(const AlternatingForm& e, std::size_t i, std::size_t j) {
    const FiniteAbelianGroup& g = e.group();
    if (i >= g.rank() || j >= g.rank()) throw Error("swap_generators: index out of range");
    if (g.factor(i) != g.factor(j))
        throw Error("swap_generators: generators " + std::to_string(i) + " and " + std::to_string(j) + " have different orders");
    std::vector<std::vector<i64>> a(g.rank(), std::vector<i64>(g.rank(), 0));
    for (std::size_t k = 0; k < g.rank(); ++k) a[k][k] = 1;
    if (i != j) {
        a[i][i] = a[j][j] = 0;
        a[i][j] = a[j][i] = 1;
    }
    HomMatrix alpha = HomMatrix::make(g, g, std::move(a));
    return {transform(e, alpha), alpha};
}

// Adds sigma times row/column i to row/column j (i != j); the witness
// maps x_j to x_j + sigma * x_i. Requires d_i / gcd(d_i, d_j) | sigma.
inline TransformedForm shear_generator(const AlternatingForm& e, std::size_t i, std::size_t j, i64 sigma) {
    const FiniteAbelianGroup& g = e.group();
    if (i >= g.rank() || j >= g.rank()) throw Error("shear_generator: index out of range");
    if (i == j) throw Error("shear_generator: indices must differ");
    const i64 need = g.factor(i) / std::gcd(g.factor(i), g.factor(j));
    if (sigma % need != 0)
        throw Error("shear_generator: sigma = " + std::to_string(sigma) + " must be a multiple of " + std::to_string(need));
    std::vector<std::vector<i64>> a(g.rank(), std::vector<i64>(g.rank(), 0));
    for (std::size_t k = 0; k < g.rank(); ++k) a[k][k] = 1;
    a[i][j] = mod_reduce(sigma, g.factor(i));
    HomMatrix alpha = HomMatrix::make(g, g, std::move(a));
    return {transform(e, alpha), alpha};
}

// ---------------------------------------------------------------------------
// Enumeration. The free data is the upper triangle: slot (i, j) with
// i < j ranges over multiples of d1/d_j mod d1 (d_j choices); the lower
// triangle is forced by skew-symmetry and the diagonal is zero.

// Number of alternating forms on g, saturated at 2^63-1.
inline u64 form_count(const FiniteAbelianGroup& g) {
    u64 count = 1;
    const u64 cap = static_cast<u64>(INT64_MAX);
    for (std::size_t j = 0; j < g.rank(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            u64 radix = static_cast<u64>(g.factor(j));
            if (count > cap / radix) return cap;
            count *= radix;
        }
    return count;
}

// Decodes a mixed-radix index (slot (0,1) most significant, row-major
// over the upper triangle) into a form; index order = lexicographic
// order of the q matrices.
inline AlternatingForm form_at_index(const FiniteAbelianGroup& g, u64 index) {
    const std::size_t n = g.rank();
    const i64 d1 = g.exponent();
    std::vector<u64> radices;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) radices.push_back(static_cast<u64>(g.factor(j)));
    std::vector<std::vector<i64>> q(n, std::vector<i64>(n, 0));
    std::size_t slot = radices.size();
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = n; j-- > i + 1;) {
            --slot;
            u64 digit = index % radices[slot];
            index /= radices[slot];
            i64 value = static_cast<i64>(digit) * (d1 / g.factor(j));
            q[i][j] = value;
            q[j][i] = mod_reduce(-value, d1);
        }
    if (index != 0) throw Error("form_at_index: index out of range");
    return AlternatingForm::make(g, std::move(q));
}

// All admissible forms on g in lexicographic order, optionally filtered
// to the non-degenerate ones. Throws BoundExceeded when the search
// space is larger than the exhaustive budget.
inline std::vector<AlternatingForm> enumerate_forms(const FiniteAbelianGroup& g, bool nondegenerate_only = false) {
    u64 count = form_count(g);
    if (count > exhaustive_bound())
        throw BoundExceeded("form search space " + std::to_string(count) + " exceeds the exhaustive bound " + std::to_string(exhaustive_bound()));
    std::vector<AlternatingForm> out;
    for (u64 idx = 0; idx < count; ++idx) {
        AlternatingForm f = form_at_index(g, idx);
        if (!nondegenerate_only || is_nondegenerate(f)) out.push_back(std::move(f));
    }
    return out;
}

}  // namespace heis
