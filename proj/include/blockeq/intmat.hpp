#pragma once

// Exact integer linear algebra: Smith normal form, determinants, cokernels,
// integer solvability, kernel lattices and rational image annihilators.

#include "blockeq/matrix.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace blockeq {

/// Result of smith_normal_form: U * A * V == S, with U and V unimodular and
/// S diagonal, nonnegative, s1 | s2 | ... along the diagonal.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;

    std::size_t rank() const {
        std::size_t r = 0;
        const std::size_t k = std::min(S.rows(), S.cols());
        while (r < k && S(r, r) != 0) ++r;
        return r;
    }
};

/// A finitely generated abelian group Z^free_rank + Z/d1 + ... + Z/dk with
/// d_i >= 2 and d1 | d2 | ... . Equality compares isomorphism classes only.
struct FgAbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;
    std::optional<IntMatrix> presentation;  // cokernel of this matrix, when known

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }

    // Group order; empty when the group is infinite.
    std::optional<Integer> order() const {
        if (free_rank != 0) return std::nullopt;
        Integer n = 1;
        for (const auto& d : torsion) n *= d;
        return n;
    }

    friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }

    // "0", "Z", "Z^2 + Z/2 + Z/6", ...
    std::string to_string() const {
        if (is_trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        if (free_rank == 1) {
            os << "Z";
            first = false;
        } else if (free_rank > 1) {
            os << "Z^" << free_rank;
            first = false;
        }
        for (const auto& d : torsion) {
            if (!first) os << " + ";
            os << "Z/" << d;
            first = false;
        }
        return os.str();
    }
};

namespace detail {

// Full Smith reduction that also tracks the inverses of both transforms.
struct SmithState {
    IntMatrix S, U, Uinv, V, Vinv;
};

inline SmithState smith_reduce(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    SmithState st{A, IntMatrix::identity(m), IntMatrix::identity(m),
                  IntMatrix::identity(n), IntMatrix::identity(n)};
    IntMatrix& S = st.S;

    auto row_swap = [&](std::size_t a, std::size_t b) {
        S.swap_rows(a, b);
        st.U.swap_rows(a, b);
        st.Uinv.swap_cols(a, b);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        S.swap_cols(a, b);
        st.V.swap_cols(a, b);
        st.Vinv.swap_rows(a, b);
    };
    // row[dst] += k row[src]
    auto row_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
        S.add_row(dst, src, k);
        st.U.add_row(dst, src, k);
        st.Uinv.add_col(src, dst, -k);
    };
    // col[dst] += k col[src]
    auto col_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
        S.add_col(dst, src, k);
        st.V.add_col(dst, src, k);
        st.Vinv.add_row(src, dst, -k);
    };

    const std::size_t lim = std::min(m, n);
    Integer q, best;
    for (std::size_t t = 0; t < lim; ++t) {
        // Pivot: nonzero entry of least absolute value in the trailing submatrix.
        std::size_t pr = m, pc = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (S(i, j) == 0) continue;
                if (pr == m || abs(S(i, j)) < best) {
                    best = abs(S(i, j));
                    pr = i;
                    pc = j;
                }
            }
        if (pr == m) break;
        row_swap(t, pr);
        col_swap(t, pc);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S(i, t) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
                row_add(i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S(t, j) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
                col_add(j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) {
                // Remainders are strictly smaller than the pivot; promote the least one.
                std::size_t br = t, bc = t;
                best = abs(S(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (S(i, t) != 0 && abs(S(i, t)) < best) {
                        best = abs(S(i, t));
                        br = i;
                        bc = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (S(t, j) != 0 && abs(S(t, j)) < best) {
                        best = abs(S(t, j));
                        br = t;
                        bc = j;
                    }
                row_swap(t, br);
                col_swap(t, bc);
                continue;
            }
            // Row and column are clear; enforce divisibility of the trailing block.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            row_add(t, bad, Integer(1));
        }
        if (S(t, t) < 0) {
            S.negate_row(t);
            st.U.negate_row(t);
            st.Uinv.negate_col(t);
        }
    }
    return st;
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& A) {
    auto st = detail::smith_reduce(A);
    return {std::move(st.U), std::move(st.S), std::move(st.V)};
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntMatrix& A) {
    if (!A.is_square()) throw std::invalid_argument("determinant: matrix is not square");
    const std::size_t n = A.rows();
    if (n == 0) return Integer(1);
    IntMatrix M = A;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && M(p, k) == 0) ++p;
            if (p == n) return Integer(0);
            M.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                M(i, j) = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                mpz_divexact(M(i, j).get_mpz_t(), M(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

/// Rank over Q.
inline std::size_t rank(const IntMatrix& A) {
    IntMatrix M = A;
    const std::size_t m = M.rows(), n = M.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && M(p, c) == 0) ++p;
        if (p == m) continue;
        M.swap_rows(r, p);
        for (std::size_t i = r + 1; i < m; ++i) {
            if (M(i, c) == 0) continue;
            const Integer a = M(r, c), b = M(i, c);
            for (std::size_t j = c; j < n; ++j) M(i, j) = M(i, j) * a - M(r, j) * b;
        }
        ++r;
    }
    return r;
}

inline bool is_unimodular(const IntMatrix& A) {
    if (!A.is_square()) return false;
    return abs(determinant(A)) == 1;
}

/// Inverse of a unimodular integer matrix; throws when A is not unimodular.
inline IntMatrix inverse_unimodular(const IntMatrix& A) {
    if (!A.is_square()) throw std::invalid_argument("inverse: matrix is not square");
    auto st = detail::smith_reduce(A);
    if (st.S != IntMatrix::identity(A.rows()))
        throw std::domain_error("inverse: matrix is not invertible over Z");
    return st.V * st.U;
}

/// Zrows / im_Z(A), keeping A as presentation.
inline FgAbelianGroup cokernel(const IntMatrix& A) {
    const auto snf = smith_normal_form(A);
    FgAbelianGroup g;
    const std::size_t r = snf.rank();
    g.free_rank = A.rows() - r;
    for (std::size_t i = 0; i < r; ++i)
        if (snf.S(i, i) > 1) g.torsion.push_back(snf.S(i, i));
    g.presentation = A;
    return g;
}

/// Integer solution z of A z = b (b a single column), or nullopt.
inline std::optional<IntMatrix> solve_integer(const IntMatrix& A, const IntMatrix& b) {
    if (b.cols() != 1 || b.rows() != A.rows())
        throw std::invalid_argument("solve_integer: dimension mismatch");
    const auto snf = smith_normal_form(A);
    const IntMatrix c = snf.U * b;
    const std::size_t r = snf.rank();
    IntMatrix w(A.cols(), 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        if (i < r) {
            if (!mpz_divisible_p(c(i, 0).get_mpz_t(), snf.S(i, i).get_mpz_t())) return std::nullopt;
            mpz_divexact(w(i, 0).get_mpz_t(), c(i, 0).get_mpz_t(), snf.S(i, i).get_mpz_t());
        } else if (c(i, 0) != 0) {
            return std::nullopt;
        }
    }
    IntMatrix z = snf.V * w;
    if (A * z != b) throw std::logic_error("solve_integer: verification failed");
    return z;
}

/// X with A X = B column by column, or nullopt if some column is not solvable.
inline std::optional<IntMatrix> solve_integer_columns(const IntMatrix& A, const IntMatrix& B) {
    if (B.rows() != A.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
    IntMatrix X(A.cols(), B.cols());
    for (std::size_t j = 0; j < B.cols(); ++j) {
        auto z = solve_integer(A, B.submatrix(0, j, B.rows(), 1));
        if (!z) return std::nullopt;
        X.set_block(0, j, *z);
    }
    return X;
}

/// True when every column of B lies in im_Z(A).
inline bool columns_in_image(const IntMatrix& A, const IntMatrix& B) {
    if (B.rows() != A.rows()) throw std::invalid_argument("columns_in_image: dimension mismatch");
    if (B.cols() == 0) return true;
    const auto snf = smith_normal_form(A);
    const IntMatrix c = snf.U * B;
    const std::size_t r = snf.rank();
    for (std::size_t j = 0; j < B.cols(); ++j)
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (i < r) {
                if (!mpz_divisible_p(c(i, j).get_mpz_t(), snf.S(i, i).get_mpz_t())) return false;
            } else if (c(i, j) != 0) {
                return false;
            }
        }
    return true;
}

/// Columns form a basis of ker_Z(A).
inline IntMatrix kernel_basis(const IntMatrix& A) {
    const auto snf = smith_normal_form(A);
    const std::size_t r = snf.rank();
    return snf.V.submatrix(0, r, A.cols(), A.cols() - r);
}

/// M with M*C == 0 whose null space is exactly the rational column span of C.
struct AnnihilatorMatrix {
    RatMatrix M;
    std::size_t source_cols = 0;
};

inline AnnihilatorMatrix image_annihilator(const IntMatrix& C) {
    const auto snf = smith_normal_form(C);
    const std::size_t r = snf.rank();
    const IntMatrix rows = snf.U.submatrix(r, 0, C.rows() - r, C.rows());
    return {to_rational(rows), C.cols()};
}

/// Basis (as columns) of the lattice spanned by the columns of G.
inline IntMatrix lattice_basis(const IntMatrix& G) {
    auto st = detail::smith_reduce(G);
    std::size_t r = 0;
    while (r < std::min(G.rows(), G.cols()) && st.S(r, r) != 0) ++r;
    IntMatrix B(G.rows(), r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < G.rows(); ++i) B(i, j) = st.Uinv(i, j) * st.S(j, j);
    return B;
}

/// Canonical coset representatives modulo a lattice in Z^n.
///
/// The lattice is put in row echelon form with positive pivots; reducing each
/// pivot coordinate into [0, pivot) in order yields a representative that only
/// depends on the coset, not on the generators supplied.
class CosetReducer {
public:
    CosetReducer() = default;

    // Generators are the rows of `gens` (vectors in Z^gens.cols()).
    explicit CosetReducer(const IntMatrix& gens) : dim_(gens.cols()) {
        IntMatrix M = gens;
        const std::size_t m = M.rows(), n = M.cols();
        std::size_t r = 0;
        Integer q;
        for (std::size_t c = 0; c < n && r < m; ++c) {
            for (;;) {
                std::size_t p = m;
                for (std::size_t i = r; i < m; ++i)
                    if (M(i, c) != 0 && (p == m || abs(M(i, c)) < abs(M(p, c)))) p = i;
                if (p == m) break;
                M.swap_rows(r, p);
                bool done = true;
                for (std::size_t i = r + 1; i < m; ++i) {
                    if (M(i, c) == 0) continue;
                    mpz_fdiv_q(q.get_mpz_t(), M(i, c).get_mpz_t(), M(r, c).get_mpz_t());
                    M.add_row(i, r, -q);
                    if (M(i, c) != 0) done = false;
                }
                if (done) break;
            }
            if (r < m && M(r, c) != 0) {
                if (M(r, c) < 0) M.negate_row(r);
                pivots_.push_back(c);
                ++r;
            }
        }
        basis_ = M.submatrix(0, 0, r, n);
    }

    std::size_t dimension() const { return dim_; }
    const IntMatrix& echelon() const { return basis_; }

    // v is a column vector; reduced in place.
    void reduce(IntMatrix& v) const {
        Integer q;
        for (std::size_t k = 0; k < pivots_.size(); ++k) {
            const std::size_t p = pivots_[k];
            mpz_fdiv_q(q.get_mpz_t(), v(p, 0).get_mpz_t(), basis_(k, p).get_mpz_t());
            if (q == 0) continue;
            for (std::size_t j = p; j < dim_; ++j) v(j, 0) -= q * basis_(k, j);
        }
    }

private:
    std::size_t dim_ = 0;
    IntMatrix basis_;
    std::vector<std::size_t> pivots_;
};

/// Generators (columns) of {z : F z in im_Z(R)}, the preimage of a presented
/// subgroup; used for kernels of homomorphisms between presented groups.
inline IntMatrix preimage_generators(const IntMatrix& F, const IntMatrix& R) {
    if (F.rows() != R.rows()) throw std::invalid_argument("preimage: dimension mismatch");
    const IntMatrix K = kernel_basis(hconcat(F, -R));
    return K.submatrix(0, 0, F.cols(), K.cols());
}

}  // namespace blockeq
