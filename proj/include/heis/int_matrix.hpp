#pragma once

// Exact integer matrices and the Smith normal form.
//
// Everything here is arbitrary-precision: Smith reduction can grow
// intermediate entries past machine words even for small inputs, so
// entries are boost::multiprecision::cpp_int throughout.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "heis/error.hpp"
#include "heis/modarith.hpp"

namespace heis {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    bool operator==(const IntMatrix& o) const = default;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }
    // row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += f * (*this)(src, c);
    }
    void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += f * (*this)(r, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> e_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix product: shape mismatch");
    IntMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

struct ExtGcd {
    BigInt g, u, v;  // g = gcd(a,b) >= 0, u*a + v*b = g
};

inline ExtGcd ext_gcd(BigInt a, BigInt b) {
    // Iterative extended Euclid; keeps (u0,v0) as coefficients of the
    // current remainder a.
    BigInt u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        BigInt q = a / b, r = a - q * b;
        a = std::exchange(b, r);
        u0 = std::exchange(u1, u0 - q * u1);
        v0 = std::exchange(v1, v0 - q * v1);
    }
    if (a < 0) {
        a = -a;
        u0 = -u0;
        v0 = -v0;
    }
    return {a, u0, v0};
}

// Inverse of a modulo m (m >= 1), in [0, m); nullopt when gcd(a, m) != 1.
inline std::optional<i64> mod_inverse(i64 a, i64 m) {
    if (m < 1) throw Error("mod_inverse: modulus must be >= 1");
    if (m == 1) return 0;
    ExtGcd e = ext_gcd(BigInt(mod_reduce(a, m)), BigInt(m));
    if (e.g != 1) return std::nullopt;
    BigInt r = e.u % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

struct SmithForm {
    IntMatrix u, d, v;  // u*m*v = d, u and v unimodular, d diagonal with s1 | s2 | ...
};

// Smith normal form by elementary row/column operations. Pivot choice:
// smallest nonzero absolute value in the remaining submatrix.
inline SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    SmithForm s{IntMatrix::identity(nr), m, IntMatrix::identity(nc)};
    IntMatrix& d = s.d;

    const std::size_t steps = nr < nc ? nr : nc;
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Locate the smallest nonzero |entry| in d[t.., t..].
            std::size_t pr = t, pc = t;
            BigInt best = 0;
            for (std::size_t i = t; i < nr; ++i)
                for (std::size_t j = t; j < nc; ++j) {
                    if (d(i, j) == 0) continue;
                    BigInt a = abs(d(i, j));
                    if (best == 0 || a < best) {
                        best = a;
                        pr = i;
                        pc = j;
                    }
                }
            if (best == 0) break;  // submatrix is zero
            d.swap_rows(t, pr);
            s.u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            s.v.swap_cols(t, pc);

            bool clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (d(i, t) == 0) continue;
                BigInt q = d(i, t) / d(t, t);
                d.add_row(i, t, -q);
                s.u.add_row(i, t, -q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (d(t, j) == 0) continue;
                BigInt q = d(t, j) / d(t, t);
                d.add_col(j, t, -q);
                s.v.add_col(j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;  // residues remain; re-pick the pivot

            // Divisibility fix: pivot must divide the rest of the submatrix.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < nr && divides_all; ++i)
                for (std::size_t j = t + 1; j < nc; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        d.add_row(t, i, 1);
                        s.u.add_row(t, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.u.negate_row(t);
        }
    }
    return s;
}

// Exact determinant (Bareiss fraction-free elimination).
inline BigInt determinant(IntMatrix a) {
    if (a.rows() != a.cols()) throw Error("determinant: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                a(i, j) = num / prev;  // exact by Bareiss
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace heis
