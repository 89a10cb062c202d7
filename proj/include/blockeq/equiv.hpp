#pragma once

// Three-valued decisions for blocked equivalence:
//   Yes      with a witness (U, V) re-verified exactly against the query,
//   No       with a named invariant that differs between the inputs,
//   Unknown  with a report of the search budget consumed.

#include "blockeq/search.hpp"

#include <sstream>

namespace blockeq {

enum class Side {
    UAV,     // U A V = B
    UAVinv,  // U A V^{-1} = B
};

inline std::string to_string(Side s) { return s == Side::UAV ? "uav" : "uavinv"; }

struct ProfileEntry {
    std::string name;
    std::string value;
    friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

/// Invariants of the blocked equivalence class: cokernels of the whole matrix,
/// of each diagonal block and of each convex restriction, plus diagonal-block
/// determinants (signed for SL, absolute otherwise).
struct InvariantProfile {
    std::vector<ProfileEntry> entries;

    friend bool operator==(const InvariantProfile&, const InvariantProfile&) = default;

    std::optional<Certificate> first_difference(const InvariantProfile& other) const {
        const std::size_t n = std::min(entries.size(), other.entries.size());
        for (std::size_t k = 0; k < n; ++k)
            if (!(entries[k] == other.entries[k])) {
                if (entries[k].name != other.entries[k].name)
                    return Certificate{"profile-layout", entries[k].name, other.entries[k].name};
                return Certificate{entries[k].name, entries[k].value, other.entries[k].value};
            }
        if (entries.size() != other.entries.size())
            return Certificate{"profile-length", std::to_string(entries.size()), std::to_string(other.entries.size())};
        return std::nullopt;
    }
};

namespace detail {

inline std::string set_name(const std::vector<std::size_t>& elems) {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < elems.size(); ++k) os << (k ? "," : "") << elems[k] + 1;
    os << '}';
    return os.str();
}

inline std::vector<char> support(const BlockShape& sh) {
    auto rows = sh.row_support();
    auto cols = sh.col_support();
    std::vector<char> s(rows.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = rows[i] || cols[i];
    return s;
}

}  // namespace detail

inline InvariantProfile invariant_profile(const BlockedMatrix& A, Group group) {
    const auto& sh = A.shape();
    InvariantProfile p;
    p.entries.push_back({"cokernel", cokernel(A.matrix()).to_string()});
    const auto supp = detail::support(sh);
    for (std::size_t i = 0; i < sh.blocks(); ++i) {
        if (!supp[i]) continue;
        const IntMatrix d = A.block(i, i);
        const std::string tag = "block " + std::to_string(i + 1);
        p.entries.push_back({"cokernel(" + tag + ")", cokernel(d).to_string()});
        if (d.is_square() && d.rows() > 0) {
            const Integer det = determinant(d);
            if (group == Group::SL)
                p.entries.push_back({"det(" + tag + ")", det.get_str()});
            else
                p.entries.push_back({"|det|(" + tag + ")", Integer(abs(det)).get_str()});
        }
    }
    for (const auto& S : sh.poset().convex_subsets(supp)) {
        if (S.size() < 2) continue;
        p.entries.push_back({"cokernel(" + detail::set_name(S) + ")", cokernel(A.restrict_to(S)).to_string()});
    }
    return p;
}

namespace detail {

inline Group left_group(Group g) { return g == Group::UnitRestricted ? Group::GL : g; }

// True when neither factor admits a transvection, so the acting group is a
// finite group of sign changes and a closed orbit is a complete enumeration.
inline bool acting_group_is_finite(const SearchProblem& p) {
    auto flips_only = [](const std::vector<ElementaryMove>& moves) {
        return std::all_of(moves.begin(), moves.end(),
                           [](const ElementaryMove& g) { return g.kind == ElementaryMove::Kind::Flip; });
    };
    return flips_only(p.left_moves) && flips_only(p.right_moves);
}

inline SearchProblem make_problem(const BlockedMatrix& A, const BlockedMatrix& B, Group group) {
    SearchProblem p;
    p.start = A.matrix();
    p.goal = B.matrix();
    p.left_moves = elementary_moves(A.shape().left_shape(), left_group(group));
    p.right_moves = elementary_moves(A.shape().right_shape(), group);
    return p;
}

inline void check_witness_groups(const BlockShape& sh, const IntMatrix& U, const IntMatrix& V, Group group) {
    if (!group_membership(U, sh.left_shape(), left_group(group)) || !group_membership(V, sh.right_shape(), group))
        throw std::logic_error("equivalence: witness left the requested group");
}

}  // namespace detail

/// Decides whether B = U A V (side UAV) or B = U A V^{-1} (side UAVinv) for
/// U, V in the requested blocked group.
inline Verdict decide_blocked_equivalence(const BlockedMatrix& A, const BlockedMatrix& B, Group group, Side side,
                                          const SearchBudget& budget) {
    if (!(A.shape() == B.shape())) throw std::invalid_argument("equivalence: shapes differ");
    budget.validate();
    BudgetReport report;
    report.budget = budget;
    if (auto cert = invariant_profile(A, group).first_difference(invariant_profile(B, group)))
        return Verdict::no(*cert, report);

    const SearchProblem problem = detail::make_problem(A, B, group);
    SearchResult res = bidirectional_search(problem, budget);
    if (!res.found) return Verdict::unknown(res.report);

    IntMatrix V = side == Side::UAV ? res.W : inverse_unimodular(res.W);
    const IntMatrix image = side == Side::UAV ? res.U * A.matrix() * V : res.U * A.matrix() * res.W;
    if (image != B.matrix()) throw std::logic_error("equivalence: witness failed verification");
    detail::check_witness_groups(A.shape(), res.U, V, group);
    return Verdict::yes({{"U", std::move(res.U)}, {"V", std::move(V)}}, res.report);
}

/// Searches for (U, V) with U A V^{-1} = B and (V^{-1})^T x - y in im_Z(B^T).
inline Verdict decide_with_unit(const BlockedMatrix& A, const BlockedMatrix& B, const IntMatrix& x,
                                const IntMatrix& y, Group group, const SearchBudget& budget) {
    if (!(A.shape() == B.shape())) throw std::invalid_argument("unit equivalence: shapes differ");
    const std::size_t n = A.shape().total_cols();
    if (x.rows() != n || y.rows() != n || x.cols() != 1 || y.cols() != 1)
        throw std::invalid_argument("unit equivalence: x and y must be columns of length n");
    budget.validate();
    BudgetReport report;
    report.budget = budget;
    if (auto cert = invariant_profile(A, group).first_difference(invariant_profile(B, group)))
        return Verdict::no(*cert, report);

    SearchProblem problem = detail::make_problem(A, B, group);
    problem.start_vector = x;
    problem.goal_vector = y;
    SearchResult res = bidirectional_search(problem, budget);
    if (!res.found) {
        if (res.report.exhausted && detail::acting_group_is_finite(problem))
            return Verdict::no({"finite-group-enumeration", "orbit of (A, x) exhausted",
                                "does not contain (B, y)"},
                               res.report);
        return Verdict::unknown(res.report);
    }
    // W is V^{-1}.
    IntMatrix V = inverse_unimodular(res.W);
    if (res.U * A.matrix() * res.W != B.matrix()) throw std::logic_error("unit equivalence: (1) failed verification");
    if (!solve_integer(B.matrix().transpose(), res.W.transpose() * x - y))
        throw std::logic_error("unit equivalence: (2) failed verification");
    detail::check_witness_groups(A.shape(), res.U, V, group);
    return Verdict::yes({{"U", std::move(res.U)}, {"V", std::move(V)}}, res.report);
}

/// K in GL_{n(m+1)}(Z) with block form
///
///     [ K00 K01 ... K0m ]
///     [  0   I  ...  0  ]
///     [  :        .     ]
///     [  0   0  ...  I  ]
///
/// acting on stacked vectors (w0, w1, ..., wm) by matrix multiplication.
class Gadget {
public:
    Gadget(IntMatrix K, std::size_t n, std::size_t m) : K_(std::move(K)), n_(n), m_(m) {
        if (K_.rows() != n * (m + 1) || K_.cols() != n * (m + 1))
            throw std::invalid_argument("gadget: matrix has the wrong size");
        const IntMatrix I = IntMatrix::identity(n);
        const IntMatrix Z(n, n);
        for (std::size_t i = 1; i <= m; ++i)
            for (std::size_t j = 0; j <= m; ++j)
                if (block(i, j) != (i == j ? I : Z)) throw std::invalid_argument("gadget: lower rows not of the form (0 .. I .. 0)");
    }

    const IntMatrix& matrix() const { return K_; }
    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }

    IntMatrix block(std::size_t i, std::size_t j) const { return K_.submatrix(i * n_, j * n_, n_, n_); }
    IntMatrix k00() const { return block(0, 0); }
    IntMatrix k0j(std::size_t j) const { return block(0, j); }

    // Stacked column (w0; w1; ...; wm) of length n(m+1).
    IntMatrix act(const IntMatrix& w) const { return K_ * w; }

private:
    IntMatrix K_;
    std::size_t n_, m_;
};

/// K00 = (V^{-1})^T, K0j = -r_j I.
inline Gadget gadget_pack(const IntMatrix& V, const std::vector<Integer>& r) {
    if (!is_unimodular(V)) throw std::domain_error("gadget: V is not unimodular");
    const std::size_t n = V.rows(), m = r.size();
    IntMatrix K = IntMatrix::identity(n * (m + 1));
    K.set_block(0, 0, inverse_unimodular(V).transpose());
    for (std::size_t j = 1; j <= m; ++j) K.set_block(0, j * n, Integer(-r[j - 1]) * IntMatrix::identity(n));
    return Gadget(std::move(K), n, m);
}

/// Inverse of gadget_pack: V = (K00^{-1})^T and r_j with K0j = -r_j I.
inline std::pair<IntMatrix, std::vector<Integer>> gadget_unpack(const Gadget& g) {
    IntMatrix V = inverse_unimodular(g.k00()).transpose();
    std::vector<Integer> r;
    for (std::size_t j = 1; j <= g.m(); ++j) {
        const IntMatrix b = g.k0j(j);
        const Integer s = g.n() > 0 ? Integer(b(0, 0)) : Integer(0);
        if (b != s * IntMatrix::identity(g.n())) throw std::domain_error("gadget: K0j is not scalar");
        r.push_back(-s);
    }
    return {std::move(V), std::move(r)};
}

/// D maps the rational column span of C into itself (M D C = 0 for the image annihilator M).
inline bool is_image_endomorphism(const IntMatrix& D, const IntMatrix& C) {
    if (!D.is_square() || D.cols() != C.rows()) throw std::invalid_argument("endomorphism: dimension mismatch");
    const auto ann = image_annihilator(C);
    return (ann.M * to_rational(D) * to_rational(C)).is_zero();
}

/// For a stabilizer pair (U A V^{-1} = A), checks that V^T preserves im(A^T).
inline bool stabilizer_transport_check(const IntMatrix& A, const IntMatrix& U, const IntMatrix& V) {
    if (U.rows() != A.rows() || V.rows() != A.cols() || !U.is_square() || !V.is_square())
        throw std::invalid_argument("stabilizer: dimension mismatch");
    if (U * A != A * V) throw std::invalid_argument("stabilizer: (U, V) does not fix A");
    if (!is_unimodular(U) || !is_unimodular(V)) throw std::invalid_argument("stabilizer: U or V not invertible");
    return is_image_endomorphism(V.transpose(), A.transpose());
}

}  // namespace blockeq
