#pragma once

// Poset-blocked integer matrices M_{P,m,n}(Z), their unit groups, the
// elementary generators used by the equivalence search, and the corner
// embedding into larger block sizes.

#include "blockeq/intmat.hpp"
#include "blockeq/poset.hpp"

#include <numeric>
#include <string>

namespace blockeq {

enum class Group {
    GL,
    SL,
    // GL, with every 1x1 diagonal block pinned to 1 (applies to the column-side factor).
    UnitRestricted,
};

inline std::string to_string(Group g) {
    switch (g) {
        case Group::GL: return "gl";
        case Group::SL: return "sl";
        case Group::UnitRestricted: return "unit";
    }
    return "?";
}

/// A poset with row block sizes m and column block sizes n.
class BlockShape {
public:
    BlockShape() = default;

    BlockShape(Poset poset, std::vector<std::size_t> row_sizes, std::vector<std::size_t> col_sizes)
        : poset_(std::move(poset)), m_(std::move(row_sizes)), n_(std::move(col_sizes)) {
        if (m_.size() != poset_.size() || n_.size() != poset_.size())
            throw std::invalid_argument("shape: size vectors must match the poset");
        const bool any_row = std::any_of(m_.begin(), m_.end(), [](auto v) { return v > 0; });
        const bool any_col = std::any_of(n_.begin(), n_.end(), [](auto v) { return v > 0; });
        if (!any_row || !any_col) throw std::invalid_argument("shape: I and J must be nonempty");
        row_off_.assign(m_.size() + 1, 0);
        col_off_.assign(n_.size() + 1, 0);
        for (std::size_t i = 0; i < m_.size(); ++i) {
            row_off_[i + 1] = row_off_[i] + m_[i];
            col_off_[i + 1] = col_off_[i] + n_[i];
        }
    }

    static BlockShape square(Poset poset, std::vector<std::size_t> sizes) {
        auto copy = sizes;
        return BlockShape(std::move(poset), std::move(sizes), std::move(copy));
    }

    const Poset& poset() const { return poset_; }
    std::size_t blocks() const { return poset_.size(); }
    const std::vector<std::size_t>& row_sizes() const { return m_; }
    const std::vector<std::size_t>& col_sizes() const { return n_; }
    bool is_square() const { return m_ == n_; }

    std::size_t total_rows() const { return row_off_.back(); }
    std::size_t total_cols() const { return col_off_.back(); }
    std::size_t row_offset(std::size_t i) const { return row_off_[i]; }
    std::size_t col_offset(std::size_t j) const { return col_off_[j]; }

    std::size_t block_of_row(std::size_t r) const {
        return static_cast<std::size_t>(std::upper_bound(row_off_.begin(), row_off_.end(), r) - row_off_.begin()) - 1;
    }
    std::size_t block_of_col(std::size_t c) const {
        return static_cast<std::size_t>(std::upper_bound(col_off_.begin(), col_off_.end(), c) - col_off_.begin()) - 1;
    }

    // Elements with nonempty rows (I) / columns (J).
    std::vector<char> row_support() const {
        std::vector<char> s(m_.size());
        for (std::size_t i = 0; i < m_.size(); ++i) s[i] = m_[i] > 0;
        return s;
    }
    std::vector<char> col_support() const {
        std::vector<char> s(n_.size());
        for (std::size_t i = 0; i < n_.size(); ++i) s[i] = n_[i] > 0;
        return s;
    }

    // Square shape (P, m, m) / (P, n, n) acting on the left / right.
    BlockShape left_shape() const { return square(poset_, m_); }
    BlockShape right_shape() const { return square(poset_, n_); }

    // Row / column indices of the blocks in `elems` (in the given order).
    std::vector<std::size_t> row_indices(const std::vector<std::size_t>& elems) const {
        std::vector<std::size_t> idx;
        for (auto e : elems)
            for (std::size_t k = 0; k < m_[e]; ++k) idx.push_back(row_off_[e] + k);
        return idx;
    }
    std::vector<std::size_t> col_indices(const std::vector<std::size_t>& elems) const {
        std::vector<std::size_t> idx;
        for (auto e : elems)
            for (std::size_t k = 0; k < n_[e]; ++k) idx.push_back(col_off_[e] + k);
        return idx;
    }

    friend bool operator==(const BlockShape& a, const BlockShape& b) {
        return a.poset_ == b.poset_ && a.m_ == b.m_ && a.n_ == b.n_;
    }

private:
    Poset poset_;
    std::vector<std::size_t> m_, n_;
    std::vector<std::size_t> row_off_, col_off_;
};

/// True iff M has the shape's dimensions and every block (i,j) with i not
/// preceding j is zero. Throws on a dimension mismatch.
inline bool validate_membership(const IntMatrix& M, const BlockShape& shape) {
    if (M.rows() != shape.total_rows() || M.cols() != shape.total_cols())
        throw std::invalid_argument("membership: matrix dimensions do not match the shape");
    for (std::size_t r = 0; r < M.rows(); ++r) {
        const std::size_t bi = shape.block_of_row(r);
        for (std::size_t c = 0; c < M.cols(); ++c) {
            if (M(r, c) == 0) continue;
            if (!shape.poset().leq(bi, shape.block_of_col(c))) return false;
        }
    }
    return true;
}

/// An element of M_{P,m,n}(Z).
class BlockedMatrix {
public:
    BlockedMatrix() = default;

    BlockedMatrix(BlockShape shape, IntMatrix data) : shape_(std::move(shape)), data_(std::move(data)) {
        if (!validate_membership(data_, shape_))
            throw std::invalid_argument("blocked matrix: nonzero entry outside the poset pattern");
    }

    static BlockedMatrix identity(const BlockShape& shape) {
        if (!shape.is_square()) throw std::invalid_argument("identity: shape is not square");
        return {shape, IntMatrix::identity(shape.total_rows())};
    }

    const BlockShape& shape() const { return shape_; }
    const IntMatrix& matrix() const { return data_; }

    // Block M{i,j}; empty when m_i or n_j is zero.
    IntMatrix block(std::size_t i, std::size_t j) const {
        return data_.submatrix(shape_.row_offset(i), shape_.col_offset(j), shape_.row_sizes()[i],
                               shape_.col_sizes()[j]);
    }

    // Restriction to the blocks in `elems` (rows and columns).
    IntMatrix restrict_to(const std::vector<std::size_t>& elems) const {
        const auto r = shape_.row_indices(elems);
        const auto c = shape_.col_indices(elems);
        return data_.select(r, c);
    }

    friend bool operator==(const BlockedMatrix& a, const BlockedMatrix& b) {
        return a.shape_ == b.shape_ && a.data_ == b.data_;
    }

private:
    BlockShape shape_;
    IntMatrix data_;
};

/// Membership in GL / SL / unit-restricted GL of the square shape.
inline bool group_membership(const IntMatrix& M, const BlockShape& shape, Group group) {
    if (!shape.is_square()) throw std::invalid_argument("group membership: shape is not square");
    if (!validate_membership(M, shape)) return false;
    for (std::size_t i = 0; i < shape.blocks(); ++i) {
        const std::size_t k = shape.row_sizes()[i];
        if (k == 0) continue;
        const IntMatrix d = M.submatrix(shape.row_offset(i), shape.col_offset(i), k, k);
        const Integer det = determinant(d);
        switch (group) {
            case Group::GL:
                if (abs(det) != 1) return false;
                break;
            case Group::SL:
                if (det != 1) return false;
                break;
            case Group::UnitRestricted:
                if (abs(det) != 1) return false;
                if (k == 1 && d(0, 0) != 1) return false;
                break;
        }
    }
    return true;
}

inline BlockedMatrix multiply_blocked(const BlockedMatrix& a, const BlockedMatrix& b) {
    const auto& sa = a.shape();
    const auto& sb = b.shape();
    if (!(sa.poset() == sb.poset()) || sa.col_sizes() != sb.row_sizes())
        throw std::invalid_argument("multiply: shapes do not compose");
    BlockShape out(sa.poset(), sa.row_sizes(), sb.col_sizes());
    IntMatrix prod = a.matrix() * b.matrix();
    if (!validate_membership(prod, out)) throw std::logic_error("multiply: product left the blocked algebra");
    return {std::move(out), std::move(prod)};
}

inline BlockedMatrix invert_blocked(const BlockedMatrix& u, Group group) {
    if (!group_membership(u.matrix(), u.shape(), group))
        throw std::domain_error("invert: matrix is not a unit of the requested group");
    IntMatrix inv = inverse_unimodular(u.matrix());
    if (u.matrix() * inv != IntMatrix::identity(inv.rows()) || !group_membership(inv, u.shape(), group))
        throw std::logic_error("invert: inverse failed verification");
    return {u.shape(), std::move(inv)};
}

/// A generator of the blocked unit group: a transvection I + sign*E_{s,t}
/// (s != t) or a sign flip of coordinate s.
struct ElementaryMove {
    enum class Kind { Transvection, Flip };
    Kind kind = Kind::Transvection;
    std::size_t s = 0, t = 0;
    int sign = 1;
    std::size_t block_row = 0, block_col = 0;

    ElementaryMove inverse() const {
        ElementaryMove g = *this;
        if (kind == Kind::Transvection) g.sign = -sign;
        return g;
    }

    IntMatrix to_matrix(std::size_t n) const {
        IntMatrix g = IntMatrix::identity(n);
        if (kind == Kind::Transvection)
            g(s, t) = sign;
        else
            g(s, s) = -1;
        return g;
    }

    // g * X
    void apply_left(IntMatrix& X) const {
        if (kind == Kind::Transvection)
            X.add_row(s, t, Integer(sign));
        else
            X.negate_row(s);
    }
    // X * g
    void apply_right(IntMatrix& X) const {
        if (kind == Kind::Transvection)
            X.add_col(t, s, Integer(sign));
        else
            X.negate_col(s);
    }
    // g^T * v for a column vector v
    void apply_transpose(IntMatrix& v) const {
        if (kind == Kind::Transvection)
            v.add_row(t, s, Integer(sign));
        else
            v.negate_row(s);
    }
};

/// Generator alphabet of the square shape's unit group, sorted by
/// (block row, block column, sign, s, t); flips follow the transvections.
inline std::vector<ElementaryMove> elementary_moves(const BlockShape& shape, Group group) {
    if (!shape.is_square()) throw std::invalid_argument("generators: shape is not square");
    const std::size_t n = shape.total_rows();
    std::vector<ElementaryMove> out;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            if (s == t) continue;
            const std::size_t bi = shape.block_of_row(s), bj = shape.block_of_col(t);
            if (!shape.poset().leq(bi, bj)) continue;
            for (int sign : {1, -1})
                out.push_back({ElementaryMove::Kind::Transvection, s, t, sign, bi, bj});
        }
    std::stable_sort(out.begin(), out.end(), [](const ElementaryMove& a, const ElementaryMove& b) {
        if (a.block_row != b.block_row) return a.block_row < b.block_row;
        if (a.block_col != b.block_col) return a.block_col < b.block_col;
        if (a.sign != b.sign) return a.sign > b.sign;
        if (a.s != b.s) return a.s < b.s;
        return a.t < b.t;
    });
    if (group == Group::GL || group == Group::UnitRestricted) {
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t bi = shape.block_of_row(s);
            if (group == Group::UnitRestricted && shape.row_sizes()[bi] == 1) continue;
            out.push_back({ElementaryMove::Kind::Flip, s, s, -1, bi, bi});
        }
    }
    return out;
}

inline std::vector<BlockedMatrix> elementary_generators(const BlockShape& shape, Group group) {
    std::vector<BlockedMatrix> out;
    for (const auto& g : elementary_moves(shape, group)) {
        BlockedMatrix m(shape, g.to_matrix(shape.total_rows()));
        if (!group_membership(m.matrix(), shape, group)) throw std::logic_error("generator outside group");
        out.push_back(std::move(m));
    }
    return out;
}

/// Corner embedding into block sizes r >= m: block (i,j) of M sits in the
/// upper-left corner; the rest is identity on diagonal blocks, zero elsewhere.
inline BlockedMatrix iota_embed(const BlockedMatrix& M, const std::vector<std::size_t>& r) {
    const auto& sh = M.shape();
    if (!sh.is_square()) throw std::invalid_argument("iota: shape is not square");
    if (r.size() != sh.blocks()) throw std::invalid_argument("iota: target has wrong length");
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] < sh.row_sizes()[i]) throw std::invalid_argument("iota: target smaller than source");
    BlockShape out_shape = BlockShape::square(sh.poset(), r);
    IntMatrix out(out_shape.total_rows(), out_shape.total_cols());
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j)
            out.set_block(out_shape.row_offset(i), out_shape.col_offset(j), M.block(i, j));
        for (std::size_t k = sh.row_sizes()[i]; k < r[i]; ++k)
            out(out_shape.row_offset(i) + k, out_shape.col_offset(i) + k) = 1;
    }
    return {std::move(out_shape), std::move(out)};
}

/// Relabels poset elements: block k of the result is block old_of_new[k] of M.
/// The target poset must make the relabeled matrix blocked.
inline BlockedMatrix permute_blocks(const BlockedMatrix& M, const std::vector<std::size_t>& old_of_new,
                                    const Poset& target) {
    const auto& sh = M.shape();
    std::vector<std::size_t> m, n;
    for (auto o : old_of_new) {
        m.push_back(sh.row_sizes()[o]);
        n.push_back(sh.col_sizes()[o]);
    }
    const auto rows = sh.row_indices(old_of_new);
    const auto cols = sh.col_indices(old_of_new);
    return {BlockShape(target, std::move(m), std::move(n)), M.matrix().select(rows, cols)};
}

}  // namespace blockeq
