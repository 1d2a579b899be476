#pragma once

// Symplectic reduction of non-degenerate alternating forms.
//
// The algorithm walks the invariant-factor chain two generators at a
// time: find a unit entry in the leading row (one must exist when the
// form is non-degenerate), scale it to 1, swap it next to the leading
// generator, clear the rest of the leading two rows/columns with
// shears, then recurse on the orthogonal complement. The result is the
// base group A (every other invariant factor), an isomorphism phi from
// A x A-hat onto K carrying the form to the standard one, and the list
// of elementary operations that witnesses it.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heis/error.hpp"
#include "heis/form.hpp"
#include "heis/group.hpp"
#include "heis/hom.hpp"
#include "heis/modarith.hpp"

namespace heis {

struct DegenerateForm : Error {
    DegenerateForm(std::string what, GroupElement witness_) : Error(std::move(what)), witness(std::move(witness_)) {}
    GroupElement witness;  // nonzero element of the radical
};

// ---------------------------------------------------------------------------
// Elementary operations (trace records)

struct ElementaryOp {
    enum class Kind { Scale, Swap, Shear };
    Kind kind;
    std::size_t i = 0, j = 0;
    i64 sigma = 0;

    bool operator==(const ElementaryOp&) const = default;
};

inline TransformedForm apply_op(const AlternatingForm& e, const ElementaryOp& op) {
    switch (op.kind) {
        case ElementaryOp::Kind::Scale: return scale_generator(e, op.i, op.sigma);
        case ElementaryOp::Kind::Swap: return swap_generators(e, op.i, op.j);
        case ElementaryOp::Kind::Shear: return shear_generator(e, op.i, op.j, op.sigma);
    }
    throw Error("apply_op: unknown kind");
}

inline HomMatrix op_automorphism(const FiniteAbelianGroup& g, const ElementaryOp& op) {
    return apply_op(AlternatingForm::zero(g), op).witness;
}

inline ElementaryOp invert_op(const FiniteAbelianGroup& g, const ElementaryOp& op) {
    switch (op.kind) {
        case ElementaryOp::Kind::Scale: {
            auto inv = mod_inverse(op.sigma, g.factor(op.i));
            if (!inv) throw Error("invert_op: scale parameter is not a unit");
            return {op.kind, op.i, op.j, *inv};
        }
        case ElementaryOp::Kind::Swap: return op;
        case ElementaryOp::Kind::Shear: return {op.kind, op.i, op.j, mod_reduce(-op.sigma, g.factor(op.i))};
    }
    throw Error("invert_op: unknown kind");
}

// Replays a trace starting from the given form; used with the standard
// form to recover the input of a reduction.
inline AlternatingForm replay_trace(AlternatingForm f, std::span<const ElementaryOp> trace) {
    for (const ElementaryOp& op : trace) f = apply_op(f, op).form;
    return f;
}

// ---------------------------------------------------------------------------
// Standard objects

// A x A-hat in the interleaved presentation (a1, a1, a2, a2, ...):
// coordinate 2k is the k-th position coordinate, 2k+1 the k-th
// momentum (character) coordinate.
inline FiniteAbelianGroup product_with_dual(const FiniteAbelianGroup& a) {
    std::vector<i64> fs;
    fs.reserve(2 * a.rank());
    for (i64 d : a.factors()) {
        fs.push_back(d);
        fs.push_back(d);
    }
    return FiniteAbelianGroup::from_factors(std::move(fs));
}

// True iff K carries a non-degenerate alternating form: the invariant
// factors must pair up (d1 = d2, d3 = d4, ...).
inline bool exists_nondegenerate(const FiniteAbelianGroup& k) {
    if (k.rank() % 2 != 0) return false;
    for (std::size_t i = 0; i + 1 < k.rank(); i += 2)
        if (k.factor(i) != k.factor(i + 1)) return false;
    return true;
}

// The base group of a paired chain: every other invariant factor.
inline FiniteAbelianGroup paired_base(const FiniteAbelianGroup& k) {
    if (!exists_nondegenerate(k)) throw Error("paired_base: invariant factors do not pair up");
    std::vector<i64> fs;
    for (std::size_t i = 0; i < k.rank(); i += 2) fs.push_back(k.factor(i));
    return FiniteAbelianGroup::from_factors(std::move(fs));
}

// Standard symplectic form on a paired chain: 2x2 blocks
// [[0, d1/d], [d1 - d1/d, 0]] down the diagonal, where d is the order
// of the block's hyperbolic pair. In the interleaved presentation this
// is the exponent matrix of ((x,chi),(x',chi')) -> chi'(x) chi(x')^-1.
inline AlternatingForm standard_form(const FiniteAbelianGroup& k) {
    if (!exists_nondegenerate(k)) throw Error("standard_form: invariant factors do not pair up");
    const std::size_t n = k.rank();
    const i64 d1 = k.exponent();
    std::vector<std::vector<i64>> q(n, std::vector<i64>(n, 0));
    for (std::size_t b = 0; b + 1 < n; b += 2) {
        const i64 v = d1 / k.factor(b);
        q[b][b + 1] = v;
        q[b + 1][b] = mod_reduce(-v, d1);
    }
    return AlternatingForm::make(k, std::move(q));
}

// ---------------------------------------------------------------------------
// Reduction

struct Decomposition {
    FiniteAbelianGroup base;        // the A with K isomorphic to A x A-hat
    HomMatrix phi;                  // from product_with_dual(base) onto K
    std::vector<ElementaryOp> trace;  // replaying from standard_form(K) yields the input form
};

namespace detail {

// One level of the induction: makes the leading 2x2 block hyperbolic
// and clears the rest of the leading two rows/columns. `f` uses the
// level subgroup's own modulus; recorded indices are global.
inline void reduce_level(AlternatingForm f, std::size_t offset, std::vector<ElementaryOp>& forward) {
    const std::size_t n = f.rank();
    if (n == 0) return;
    const FiniteAbelianGroup& g = f.group();
    const i64 d1 = f.modulus();

    auto record = [&](ElementaryOp op) {
        f = apply_op(f, {op.kind, op.i - offset, op.j - offset, op.sigma}).form;
        forward.push_back(op);
    };

    // Pivot: first entry of the leading row coprime to the level
    // modulus. Its absence contradicts non-degeneracy.
    std::size_t c = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (std::gcd(f.entry(0, j), d1) == 1) {
            c = j;
            break;
        }
    if (c == 0) throw Error("symplectic_reduce: no unit pivot in the leading row (internal invariant failure)");
    // The constraint on q_{0c} forces the pivot column's order to equal
    // the level modulus, so scaling and the swap below are legal.
    if (g.factor(c) != d1) throw Error("symplectic_reduce: pivot column order mismatch (internal invariant failure)");

    if (f.entry(0, c) != 1) {
        auto inv = mod_inverse(f.entry(0, c), d1);
        if (!inv) throw Error("symplectic_reduce: pivot not invertible (internal invariant failure)");
        record({ElementaryOp::Kind::Scale, offset, offset, *inv});
    }
    if (c != 1) record({ElementaryOp::Kind::Swap, offset + 1, offset + c, 0});

    for (std::size_t k = 2; k < n; ++k) {
        const i64 s1 = mod_reduce(-f.entry(0, k), d1);
        if (s1 != 0) record({ElementaryOp::Kind::Shear, offset + 1, offset + k, s1});
        const i64 s2 = f.entry(1, k);
        if (s2 != 0) record({ElementaryOp::Kind::Shear, offset, offset + k, s2});
    }

    if (f.entry(0, 1) != 1 || f.entry(1, 0) != mod_reduce(-1, d1))
        throw Error("symplectic_reduce: leading block not hyperbolic (internal invariant failure)");
    for (std::size_t k = 2; k < n; ++k)
        if (f.entry(0, k) != 0 || f.entry(1, k) != 0)
            throw Error("symplectic_reduce: leading rows not cleared (internal invariant failure)");
    if (n > 2 && g.factor(1) % g.factor(2) != 0) throw Error("symplectic_reduce: residual chain broken (internal invariant failure)");

    if (n == 2) return;

    // Orthogonal complement: rescale the remaining block from the level
    // modulus down to the residual chain's own modulus.
    std::vector<i64> sub_factors(g.factors().begin() + 2, g.factors().end());
    FiniteAbelianGroup sub = FiniteAbelianGroup::from_factors(sub_factors);
    const i64 sub_d1 = sub.exponent();
    std::vector<std::vector<i64>> q(n - 2, std::vector<i64>(n - 2));
    for (std::size_t i = 0; i < n - 2; ++i)
        for (std::size_t j = 0; j < n - 2; ++j) {
            __int128 num = static_cast<__int128>(f.entry(i + 2, j + 2)) * sub_d1;
            if (num % d1 != 0) throw Error("symplectic_reduce: residual entry rescale not exact (internal invariant failure)");
            q[i][j] = static_cast<i64>(num / d1);
        }
    reduce_level(AlternatingForm::make(sub, std::move(q)), offset + 2, forward);
}

}  // namespace detail

// Reduces a non-degenerate form to the standard symplectic shape.
// Throws DegenerateForm (with a radical witness) on degenerate input.
inline Decomposition symplectic_reduce(const AlternatingForm& e) {
    if (auto w = radical_witness(e))
        throw DegenerateForm("symplectic_reduce: form is degenerate", std::move(*w));

    const FiniteAbelianGroup& k = e.group();
    std::vector<ElementaryOp> forward;
    detail::reduce_level(e, 0, forward);

    HomMatrix phi = HomMatrix::identity(k);
    for (const ElementaryOp& op : forward) phi = compose(phi, op_automorphism(k, op));

    std::vector<ElementaryOp> trace;
    trace.reserve(forward.size());
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) trace.push_back(invert_op(k, *it));

    Decomposition dec{paired_base(k), phi, std::move(trace)};

    // transform(e, phi) is the standard form: this is the Theorem-A
    // identity on all generator pairs at once. Full pairwise
    // verification is verify_decomposition's job.
    if (transform(e, dec.phi) != standard_form(k)) throw Error("symplectic_reduce: trace composite does not standardize the form (internal invariant failure)");
    return dec;
}

// Invariant factors of the base group; depends only on the phase group.
inline std::vector<i64> canonical_invariants(const AlternatingForm& e) { return symplectic_reduce(e).base.factors(); }

struct VerifyResult {
    bool ok = false;
    // (u, v) in A x A-hat with e(phi(u), phi(v)) != chi'(x) chi(x')^-1,
    // where u = (x, chi) and v = (x', chi') under interleaving.
    std::optional<std::pair<GroupElement, GroupElement>> counterexample;

    explicit operator bool() const { return ok; }
};

// Checks that phi is a bijection A x A-hat -> K and that it carries e
// to the standard pairing form: exhaustive over all argument pairs when
// |K|^2 is within the exhaustive budget, generator pairs otherwise
// (sufficient by biadditivity of both sides).
inline VerifyResult verify_decomposition(const AlternatingForm& e, const Decomposition& dec) {
    const FiniteAbelianGroup& k = e.group();
    const FiniteAbelianGroup dom = product_with_dual(dec.base);
    if (dec.phi.source() != dom || dec.phi.target() != k) throw Error("verify_decomposition: phi shape does not match form/base");

    if (dec.phi.source() != dec.phi.target() || !is_automorphism(dec.phi)) return {false, std::nullopt};

    const AlternatingForm std_form = standard_form(dom);
    const std::size_t n = dom.rank();
    const i64 order = k.order();

    bool exhaustive = static_cast<u64>(order) <= exhaustive_bound() / static_cast<u64>(order);
    if (exhaustive) {
        // cache domain coordinates and phi images so the pair loop is a
        // dot product per pair
        std::vector<std::vector<i64>> arg(static_cast<std::size_t>(order), std::vector<i64>(n));
        std::vector<std::vector<i64>> img(static_cast<std::size_t>(order), std::vector<i64>(n));
        std::vector<i64> x(n, 0);
        for (i64 idx = 0; idx < order; ++idx) {
            arg[static_cast<std::size_t>(idx)] = x;
            dec.phi.apply_raw(x, img[static_cast<std::size_t>(idx)]);
            for (std::size_t i = n; i-- > 0;) {
                if (++x[i] < dom.factor(i)) break;
                x[i] = 0;
            }
        }
        const i64 d1 = e.modulus();
        // rv[i] = sum_j q_ij (phi v)_j: e(phi u, phi v) = <phi u, rv>
        std::vector<i64> rv(n);
        for (i64 vi = 0; vi < order; ++vi) {
            const std::vector<i64>& w = img[static_cast<std::size_t>(vi)];
            for (std::size_t i = 0; i < n; ++i) {
                i64 acc = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (e.entry(i, j) == 0 || w[j] == 0) continue;
                    acc = add_mod(acc, mul_mod(e.entry(i, j), w[j], d1), d1);
                }
                rv[i] = acc;
            }
            for (i64 ui = 0; ui < order; ++ui) {
                const std::vector<i64>& u = img[static_cast<std::size_t>(ui)];
                i64 lhs = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (u[i] != 0 && rv[i] != 0) lhs = add_mod(lhs, mul_mod(u[i], rv[i], d1), d1);
                i64 rhs = std_form.eval_raw(arg[static_cast<std::size_t>(ui)], arg[static_cast<std::size_t>(vi)]);
                if (lhs != rhs)
                    return {false, std::make_pair(GroupElement(dom, arg[static_cast<std::size_t>(ui)]), GroupElement(dom, arg[static_cast<std::size_t>(vi)]))};
            }
        }
        return {true, std::nullopt};
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            GroupElement gi = generator(dom, i), gj = generator(dom, j);
            if (e.eval(dec.phi.apply(gi), dec.phi.apply(gj)) != std_form.eval(gi, gj)) return {false, std::make_pair(std::move(gi), std::move(gj))};
        }
    return {true, std::nullopt};
}

}  // namespace heis
