#pragma once

// Finite Heisenberg central extensions mu_m x K with an explicit
// 2-cocycle. Every cocycle this library constructs is bilinear in the
// generator coordinates, so it is stored as an n x n exponent matrix C
// mod m with c(k, l) = sum_ij C_ij k_i l_j; the cocycle identity holds
// by bilinearity and is re-verified in tests through element
// arithmetic. The center is truncated from U(1) to mu_m with m = d1(K),
// which hosts every root of unity the finite construction needs.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "heis/error.hpp"
#include "heis/form.hpp"
#include "heis/group.hpp"
#include "heis/hom.hpp"
#include "heis/modarith.hpp"
#include "heis/reduction.hpp"

namespace heis {

class HeisenbergGroup {
  public:
    // Validates well-definedness: C_ij d_i and C_ij d_j must vanish
    // mod m, else c would depend on the coefficient representatives.
    static HeisenbergGroup from_cocycle_matrix(FiniteAbelianGroup phase, i64 center_order, std::vector<std::vector<i64>> c) {
        HeisenbergGroup g;
        g.phase_ = std::move(phase);
        g.m_ = center_order;
        const std::size_t n = g.phase_.rank();
        if (center_order < 1) throw Error("heisenberg: center order must be >= 1");
        if (c.size() != n) throw Error("heisenberg: cocycle matrix has wrong shape");
        g.c_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (c[i].size() != n) throw Error("heisenberg: cocycle matrix has wrong shape");
            for (std::size_t j = 0; j < n; ++j) {
                i64 v = mod_reduce(c[i][j], g.m_);
                if (mul_mod(v, g.phase_.factor(i), g.m_) != 0 || mul_mod(v, g.phase_.factor(j), g.m_) != 0)
                    throw Error("heisenberg: cocycle entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not well defined mod " +
                                std::to_string(g.m_));
                g.c_[i * n + j] = v;
            }
        }
        return g;
    }

    const FiniteAbelianGroup& phase() const { return phase_; }
    i64 center_order() const { return m_; }
    i64 cocycle_entry(std::size_t i, std::size_t j) const { return c_[i * phase_.rank() + j]; }

    // zeta_m-exponent of c(k, l).
    i64 cocycle(const GroupElement& k, const GroupElement& l) const {
        if (k.group() != phase_ || l.group() != phase_) throw Error("heisenberg: element not in the phase group");
        const std::size_t n = phase_.rank();
        i64 acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (k.coeff(i) == 0) continue;
            i64 row = 0;
            for (std::size_t j = 0; j < n; ++j) row = add_mod(row, mul_mod(cocycle_entry(i, j), l.coeff(j), m_), m_);
            acc = add_mod(acc, mul_mod(k.coeff(i), row, m_), m_);
        }
        return acc;
    }

    i64 order() const {
        i64 p = phase_.order();
        if (p > (i64{1} << 62) / m_) throw BoundExceeded("heisenberg group order exceeds 2^62");
        return m_ * p;
    }

    bool operator==(const HeisenbergGroup&) const = default;

  private:
    FiniteAbelianGroup phase_;
    i64 m_ = 1;
    std::vector<i64> c_;
};

struct HeisenbergElement {
    i64 z;           // zeta_m-exponent of the central part
    GroupElement k;  // phase part

    bool operator==(const HeisenbergElement&) const = default;
    auto operator<=>(const HeisenbergElement&) const = default;
};

inline HeisenbergElement h_identity(const HeisenbergGroup& g) { return {0, GroupElement::zero(g.phase())}; }

// (z, k)(w, l) = (z + w + c(k, l), k + l)
inline HeisenbergElement h_mul(const HeisenbergGroup& g, const HeisenbergElement& a, const HeisenbergElement& b) {
    return {add_mod(add_mod(a.z, b.z, g.center_order()), g.cocycle(a.k, b.k), g.center_order()), a.k + b.k};
}

inline HeisenbergElement h_inverse(const HeisenbergGroup& g, const HeisenbergElement& a) {
    GroupElement nk = -a.k;
    i64 z = mod_reduce(-a.z - g.cocycle(a.k, nk), g.center_order());
    return {z, std::move(nk)};
}

inline HeisenbergElement h_pow(const HeisenbergGroup& g, HeisenbergElement a, i64 e) {
    if (e < 0) return h_pow(g, h_inverse(g, a), -e);
    HeisenbergElement acc = h_identity(g);
    while (e > 0) {
        if (e & 1) acc = h_mul(g, acc, a);
        a = h_mul(g, a, a);
        e >>= 1;
    }
    return acc;
}

// g h g^-1 h^-1 by explicit element arithmetic.
inline HeisenbergElement h_commutator(const HeisenbergGroup& g, const HeisenbergElement& a, const HeisenbergElement& b) {
    return h_mul(g, h_mul(g, a, b), h_mul(g, h_inverse(g, a), h_inverse(g, b)));
}

inline i64 h_element_order(const HeisenbergGroup& g, const HeisenbergElement& a) {
    // order of the phase part, then the leftover central charge
    i64 t = a.k.additive_order();
    HeisenbergElement p = h_pow(g, a, t);
    if (!p.k.is_zero()) throw Error("h_element_order: phase order mismatch (internal)");
    return t * (g.center_order() / std::gcd(p.z, g.center_order()));
}

// ---------------------------------------------------------------------------
// Constructions

// Standard Heisenberg group on A x A-hat (interleaved presentation):
// c((x, chi), (y, xi)) = xi(x), m = d1(A). Its commutator form is the
// standard symplectic form.
inline HeisenbergGroup standard_heisenberg(const FiniteAbelianGroup& a) {
    FiniteAbelianGroup k = product_with_dual(a);
    const i64 m = a.exponent();
    const std::size_t n = k.rank();
    std::vector<std::vector<i64>> c(n, std::vector<i64>(n, 0));
    for (std::size_t b = 0; b + 1 < n; b += 2) c[b][b + 1] = m / k.factor(b);  // xi-coordinate of the second argument against x of the first
    return HeisenbergGroup::from_cocycle_matrix(std::move(k), m, std::move(c));
}

// Commutator form e(k, l) = c(k, l) - c(l, k), rescaled from mod-m
// exponents to the mod-d1 convention of AlternatingForm. By
// construction m = d1, so the rescaling is the identity; this is
// asserted at the boundary.
inline AlternatingForm commutator_form(const HeisenbergGroup& g) {
    const FiniteAbelianGroup& k = g.phase();
    if (g.center_order() != k.exponent()) throw Error("commutator_form: center order differs from the phase exponent");
    const std::size_t n = k.rank();
    std::vector<std::vector<i64>> q(n, std::vector<i64>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q[i][j] = sub_mod(g.cocycle_entry(i, j), g.cocycle_entry(j, i), g.center_order());
    return AlternatingForm::make(k, std::move(q));  // validation rejects non-biadditive/ill-formed differences
}

// Central extension with prescribed non-degenerate commutator form.
// Odd exponent: the halving cocycle c(k, l) = 2 e(k/2, l/2). Even
// exponent: pull the standard cocycle back along the inverse of the
// reduction isomorphism.
inline HeisenbergGroup from_form(const AlternatingForm& e) {
    const FiniteAbelianGroup& k = e.group();
    const i64 m = k.exponent();
    const std::size_t n = k.rank();
    if (auto w = radical_witness(e)) throw DegenerateForm("from_form: form is degenerate", std::move(*w));

    if (m % 2 == 1) {
        // halving is an automorphism: k -> k * inv(2) per coordinate
        std::vector<i64> half(n);
        for (std::size_t i = 0; i < n; ++i) half[i] = *mod_inverse(2, k.factor(i));
        std::vector<std::vector<i64>> c(n, std::vector<i64>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c[i][j] = mul_mod(mul_mod(2, mul_mod(half[i], half[j], m), m), e.entry(i, j), m);
        return HeisenbergGroup::from_cocycle_matrix(k, m, std::move(c));
    }

    Decomposition dec = symplectic_reduce(e);
    // psi = phi^-1 is the composite of the stored trace
    HomMatrix psi = HomMatrix::identity(k);
    for (const ElementaryOp& op : dec.trace) psi = compose(psi, op_automorphism(k, op));
    HeisenbergGroup std_g = standard_heisenberg(dec.base);
    if (std_g.phase() != k) throw Error("from_form: standard phase space mismatch (internal)");
    // c(k, l) = c_std(psi k, psi l) as a matrix: psi^T C_std psi
    const i64 mm = std_g.center_order();
    std::vector<std::vector<i64>> c(n, std::vector<i64>(n, 0));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            i64 acc = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (psi.entry(i, u) == 0) continue;
                i64 row = 0;
                for (std::size_t j = 0; j < n; ++j) row = add_mod(row, mul_mod(std_g.cocycle_entry(i, j), psi.entry(j, v), mm), mm);
                acc = add_mod(acc, mul_mod(psi.entry(i, u), row, mm), mm);
            }
            c[u][v] = acc;
        }
    return HeisenbergGroup::from_cocycle_matrix(k, mm, std::move(c));
}

// Equivalence of central extensions: an isomorphism of phase groups
// carrying one commutator form to the other. Complete for
// non-degenerate forms by orbit transitivity: it suffices that the
// phase groups agree and both reductions produce the same base.
inline bool extension_equivalent(const HeisenbergGroup& g1, const HeisenbergGroup& g2) {
    if (g1.phase() != g2.phase()) return false;
    AlternatingForm e1 = commutator_form(g1), e2 = commutator_form(g2);
    const bool n1 = is_nondegenerate(e1), n2 = is_nondegenerate(e2);
    if (n1 != n2) return false;
    if (!n1) throw Error("extension_equivalent: degenerate commutator forms are not supported");
    return canonical_invariants(e1) == canonical_invariants(e2);
}

// ---------------------------------------------------------------------------
// Whole-group scans (bounded)

// Size of the center: the mu_m factor times the radical of the
// commutator form. Equals m exactly when the form is non-degenerate.
inline i64 center_size(const HeisenbergGroup& g) {
    AlternatingForm e = commutator_form(g);
    const FiniteAbelianGroup& k = g.phase();
    const i64 order = checked_order(k, exhaustive_bound());
    std::vector<std::vector<i64>> gens;
    for (std::size_t j = 0; j < k.rank(); ++j) gens.push_back(generator(k, j).coeffs());
    i64 radical = 0;
    for (i64 idx = 0; idx < order; ++idx) {
        GroupElement x = element_at(k, idx);
        bool central = true;
        for (std::size_t j = 0; j < k.rank() && central; ++j)
            if (e.eval_raw(gens[j], x.coeffs()) != 0) central = false;
        radical += central;
    }
    return g.center_order() * radical;
}

// Histogram order -> number of elements of that order.
inline std::map<i64, i64> element_order_statistics(const HeisenbergGroup& g) {
    const i64 total = g.order();
    if (static_cast<u64>(total) > exhaustive_bound()) throw BoundExceeded("order statistics: group too large");
    std::map<i64, i64> stats;
    const i64 phase_order = g.phase().order();
    for (i64 pz = 0; pz < g.center_order(); ++pz)
        for (i64 pk = 0; pk < phase_order; ++pk) {
            HeisenbergElement el{pz, element_at(g.phase(), pk)};
            ++stats[h_element_order(g, el)];
        }
    return stats;
}

inline i64 group_exponent(const HeisenbergGroup& g) {
    i64 e = 1;
    for (const auto& [ord, cnt] : element_order_statistics(g)) e = lcm_i64(e, ord);
    return e;
}

}  // namespace heis
