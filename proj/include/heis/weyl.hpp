#pragma once

// Translation and modulation operators on functions over a finite
// abelian group A, the finite-dimensional model of the standard
// Heisenberg group's defining representation. This is the one numeric
// corner of the library: matrices are dense complex, everything else
// stays exact.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "heis/error.hpp"
#include "heis/group.hpp"

namespace heis {

struct WeylOperators {
    FiniteAbelianGroup base;             // the A
    std::size_t dim = 0;                 // |A|
    std::vector<GroupElement> points;    // enumeration order shared by all indices
    std::vector<Eigen::MatrixXcd> translations;  // x -> permutation matrix T_x (f -> f(. - x))
    std::vector<Eigen::MatrixXcd> modulations;   // chi -> diagonal unitary M_chi (f -> chi(.) f)
};

// Builds T_x and M_chi for every x in A and character chi (characters
// indexed through the self-dual presentation). Dense-matrix budget
// guards the |A| x |A| allocations.
inline WeylOperators weyl_operators(const FiniteAbelianGroup& a, std::size_t budget = 64) {
    const i64 order = a.order();
    if (static_cast<u64>(order) > budget)
        throw BoundExceeded("weyl_operators: |A| = " + std::to_string(order) + " exceeds the dense-matrix budget " + std::to_string(budget));

    WeylOperators w;
    w.base = a;
    w.dim = static_cast<std::size_t>(order);
    for (i64 i = 0; i < order; ++i) w.points.push_back(element_at(a, i));

    const double tau = 2.0 * std::numbers::pi;
    const i64 d1 = a.exponent();
    for (i64 i = 0; i < order; ++i) {
        const GroupElement& x = w.points[static_cast<std::size_t>(i)];
        Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(order, order);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(order, order);
        for (i64 y = 0; y < order; ++y) {
            const GroupElement& py = w.points[static_cast<std::size_t>(y)];
            t(element_index(py + x), y) = 1.0;  // T_x: delta_y -> delta_{y+x}
            m(y, y) = std::polar(1.0, tau * static_cast<double>(dual_pairing(py, x)) / static_cast<double>(d1));
        }
        w.translations.push_back(std::move(t));
        w.modulations.push_back(std::move(m));
    }
    return w;
}

struct WeylFailure {
    std::string what;
    double deviation = 0.0;
};

struct WeylReport {
    double max_deviation = 0.0;
    bool unitarity_ok = true;
    int commutant_dimension = 0;
    std::vector<WeylFailure> failures;

    bool ok(double tol = 1e-12) const { return unitarity_ok && commutant_dimension == 1 && max_deviation <= tol; }
};

namespace detail {

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace detail

// Checks, in max-entry norm:
//  (a) [T_x M_chi, T_x' M_chi'] = chi'(x) chi(x')^-1 * I for all pairs,
//  (b) unitarity of every T_x and M_chi,
//  (c) irreducibility: the joint commutant of the generator operators
//      is one-dimensional (nullity of the stacked commutation system,
//      singular values below rank_tol counted as zero).
inline WeylReport verify_weyl_relations(const WeylOperators& w, double tol = 1e-12, double rank_tol = 1e-8) {
    WeylReport rep;
    const std::size_t dim = w.dim;
    const i64 order = static_cast<i64>(dim);
    const i64 d1 = w.base.exponent();
    const double tau = 2.0 * std::numbers::pi;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(order, order);

    auto note = [&](double dev, const std::string& what, bool unitary_check = false) {
        rep.max_deviation = std::max(rep.max_deviation, dev);
        if (dev > tol) {
            rep.failures.push_back({what, dev});
            if (unitary_check) rep.unitarity_ok = false;
        }
    };

    for (i64 i = 0; i < order; ++i) {
        note(detail::max_abs(w.translations[i] * w.translations[i].adjoint() - id), "translation " + std::to_string(i) + " not unitary", true);
        note(detail::max_abs(w.modulations[i] * w.modulations[i].adjoint() - id), "modulation " + std::to_string(i) + " not unitary", true);
    }

    // (a) scalar commutators over all pairs of phase-space points
    for (i64 xi = 0; xi < order; ++xi)
        for (i64 ci = 0; ci < order; ++ci) {
            Eigen::MatrixXcd u = w.translations[xi] * w.modulations[ci];
            Eigen::MatrixXcd uinv = u.adjoint();
            for (i64 xj = 0; xj < order; ++xj)
                for (i64 cj = 0; cj < order; ++cj) {
                    Eigen::MatrixXcd v = w.translations[xj] * w.modulations[cj];
                    Eigen::MatrixXcd comm = u * v * uinv * v.adjoint();
                    // chi'(x) chi(x')^-1 with (x, chi) = (xi, ci), (x', chi') = (xj, cj)
                    i64 expo = sub_mod(dual_pairing(w.points[xi], w.points[cj]), dual_pairing(w.points[xj], w.points[ci]), d1);
                    std::complex<double> scalar = std::polar(1.0, tau * static_cast<double>(expo) / static_cast<double>(d1));
                    note(detail::max_abs(comm - scalar * id),
                         "commutator ((" + std::to_string(xi) + "," + std::to_string(ci) + "),(" + std::to_string(xj) + "," + std::to_string(cj) +
                             ")) deviates from its scalar");
                }
        }

    // (c) stack (U^T kron I - I kron U) vec(X) = 0 over the generator
    // operators; commutant dimension = nullity
    std::vector<const Eigen::MatrixXcd*> gens;
    for (std::size_t j = 0; j < w.base.rank(); ++j) {
        i64 gi = element_index(generator(w.base, j));
        gens.push_back(&w.translations[gi]);
        gens.push_back(&w.modulations[gi]);
    }
    if (gens.empty()) {
        rep.commutant_dimension = 1;  // trivial A: commutant of {} on C^1
        return rep;
    }
    const std::size_t n2 = dim * dim;
    Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(gens.size() * n2, n2);
    for (std::size_t gidx = 0; gidx < gens.size(); ++gidx) {
        const Eigen::MatrixXcd& g = *gens[gidx];
        // rows of (g^T kron I) - (I kron g)
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) {
                std::size_t row = gidx * n2 + a * dim + b;
                for (std::size_t c = 0; c < dim; ++c) {
                    // vec column-stacked: X(r, s) at index s*dim + r
                    sys(row, c * dim + b) += g(c, a);   // (X g)(b, a)
                    sys(row, a * dim + c) -= g(b, c);   // (g X)(b, a)
                }
            }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys);
    int nullity = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) <= rank_tol) ++nullity;
    nullity += static_cast<int>(n2) - static_cast<int>(svd.singularValues().size());
    rep.commutant_dimension = nullity;
    if (nullity != 1) rep.failures.push_back({"joint commutant dimension is " + std::to_string(nullity), 0.0});
    return rep;
}

}  // namespace heis
