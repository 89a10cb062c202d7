#pragma once

// Shared helpers for the unit, property and acceptance tests.

#include "blockeq.hpp"

#include <initializer_list>
#include <random>

namespace blockeq::testing {

inline IntMatrix M(std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<Integer> e;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("ragged literal");
        for (long v : row) e.emplace_back(v);
    }
    return IntMatrix(r, c, std::move(e));
}

inline IntMatrix col(std::initializer_list<long> v) {
    std::vector<Integer> e;
    for (long x : v) e.emplace_back(x);
    return IntMatrix(v.size(), 1, std::move(e));
}

inline BlockedMatrix single_block(const IntMatrix& A) {
    return {BlockShape(Poset::antichain(1), {A.rows()}, {A.cols()}), A};
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1)); }
    bool coin() { return uniform(0, 1) == 1; }

    IntMatrix matrix(std::size_t r, std::size_t c, long lo, long hi) {
        IntMatrix A(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) A(i, j) = uniform(lo, hi);
        return A;
    }

    // Random poset on n elements already satisfying i <= j labeling.
    Poset poset(std::size_t n) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (coin()) pairs.emplace_back(i, j);
        return Poset(n, pairs);
    }

    // Square shape with at least one nonempty block.
    BlockShape square_shape(std::size_t max_elems, std::size_t min_block, std::size_t max_block) {
        const std::size_t n = static_cast<std::size_t>(uniform(1, static_cast<long>(max_elems)));
        std::vector<std::size_t> sizes(n);
        for (;;) {
            for (auto& s : sizes) s = static_cast<std::size_t>(uniform(static_cast<long>(min_block), static_cast<long>(max_block)));
            if (std::any_of(sizes.begin(), sizes.end(), [](auto s) { return s > 0; })) break;
        }
        return BlockShape::square(poset(n), sizes);
    }

    BlockedMatrix blocked(const BlockShape& sh, long lo, long hi) {
        IntMatrix A = matrix(sh.total_rows(), sh.total_cols(), lo, hi);
        for (std::size_t r = 0; r < A.rows(); ++r)
            for (std::size_t c = 0; c < A.cols(); ++c)
                if (!sh.poset().leq(sh.block_of_row(r), sh.block_of_col(c))) A(r, c) = 0;
        return {sh, A};
    }

    // Product of `len` random generators of the shape's group.
    IntMatrix word(const BlockShape& sh, Group g, std::size_t len) {
        const auto moves = elementary_moves(sh, g);
        IntMatrix X = IntMatrix::identity(sh.total_rows());
        if (moves.empty()) return X;
        for (std::size_t k = 0; k < len; ++k) moves[index(moves.size())].apply_left(X);
        return X;
    }

    // Unimodular n x n matrix from a random word of transvections and flips.
    IntMatrix unimodular(std::size_t n, std::size_t len) {
        return word(BlockShape::square(Poset::antichain(1), {n}), Group::GL, len);
    }

    std::mt19937_64& engine() { return g_; }

private:
    std::mt19937_64 g_;
};

inline bool divisibility_chain(const IntMatrix& S) {
    const std::size_t k = std::min(S.rows(), S.cols());
    for (std::size_t i = 0; i < S.rows(); ++i)
        for (std::size_t j = 0; j < S.cols(); ++j)
            if (i != j && S(i, j) != 0) return false;
    for (std::size_t i = 0; i < k; ++i) {
        if (S(i, i) < 0) return false;
        if (i + 1 < k) {
            if (S(i, i) == 0 && S(i + 1, i + 1) != 0) return false;
            if (S(i, i) != 0 && S(i + 1, i + 1) % S(i, i) != 0) return false;
        }
    }
    return true;
}

// Number of residue classes of Z^n modulo the column lattice L of a
// nonsingular A, by brute force. d Z^n lies inside L (d = |det A|), so the
// count is d^n divided by the size of L mod d, which is enumerated by BFS.
inline long residue_class_count(const IntMatrix& A) {
    const long d = std::labs(determinant(A).get_si());
    const std::size_t n = A.rows();
    std::size_t size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= static_cast<std::size_t>(d);
    std::vector<char> in_lattice(size, 0);
    auto encode = [&](const std::vector<long>& v) {
        std::size_t code = 0;
        for (long x : v) code = code * static_cast<std::size_t>(d) + static_cast<std::size_t>(((x % d) + d) % d);
        return code;
    };
    std::vector<std::vector<long>> queue{std::vector<long>(n, 0)};
    in_lattice[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t c = 0; c < A.cols(); ++c) {
            std::vector<long> w = queue[head];
            for (std::size_t i = 0; i < n; ++i) w[i] = (((w[i] + A(i, c).get_si()) % d) + d) % d;
            const auto code = encode(w);
            if (!in_lattice[code]) {
                in_lattice[code] = 1;
                queue.push_back(std::move(w));
            }
        }
    }
    const long total = static_cast<long>(in_lattice.size());
    return total / static_cast<long>(queue.size());
}

}  // namespace blockeq::testing
