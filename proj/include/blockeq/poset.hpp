#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace blockeq {

/// Finite poset on {0, ..., N-1}; stored as its full (reflexive, transitive) order relation.
class Poset {
public:
    Poset() = default;

    // Builds the reflexive-transitive closure of `pairs` (0-based). Throws on cycles.
    // Labels are kept as given; see normalize() for the i <= j relabeling.
    Poset(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
        : n_(n), leq_(n * n, 0) {
        for (std::size_t i = 0; i < n; ++i) at(i, i) = 1;
        for (auto [i, j] : pairs) {
            if (i >= n || j >= n) throw std::invalid_argument("poset: element out of range");
            at(i, j) = 1;
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (at(i, k))
                    for (std::size_t j = 0; j < n; ++j)
                        if (at(k, j)) at(i, j) = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (at(i, j) && at(j, i)) throw std::invalid_argument("poset: relation is not antisymmetric");
    }

    static Poset antichain(std::size_t n) { return Poset(n, {}); }

    static Poset chain(std::size_t n) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
        return Poset(n, pairs);
    }

    std::size_t size() const { return n_; }
    bool leq(std::size_t i, std::size_t j) const { return leq_[i * n_ + j] != 0; }
    bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }

    // i <= j (as integers) whenever i precedes j.
    bool is_normalized() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (leq(i, j)) return false;
        return true;
    }

    // Non-reflexive pairs of the order, in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (less(i, j)) out.emplace_back(i, j);
        return out;
    }

    // Poset with element k relabeled as new_of_old[k].
    Poset relabeled(const std::vector<std::size_t>& new_of_old) const {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (auto [i, j] : strict_pairs()) pairs.emplace_back(new_of_old[i], new_of_old[j]);
        return Poset(n_, pairs);
    }

    // Stable topological order: order[new] = old, ties broken by least old label.
    std::vector<std::size_t> topological_order() const {
        std::vector<std::size_t> indeg(n_, 0), order;
        for (auto [i, j] : strict_pairs()) ++indeg[j];
        std::vector<char> used(n_, 0);
        for (std::size_t step = 0; step < n_; ++step) {
            std::size_t pick = n_;
            for (std::size_t v = 0; v < n_; ++v)
                if (!used[v] && indeg[v] == 0) {
                    pick = v;
                    break;
                }
            used[pick] = 1;
            order.push_back(pick);
            for (std::size_t j = 0; j < n_; ++j)
                if (less(pick, j)) --indeg[j];
        }
        return order;
    }

    // S (given as membership flags over `allowed`) is convex in the subposet `allowed`.
    bool is_convex(const std::vector<char>& in_set, const std::vector<char>& allowed) const {
        for (std::size_t i = 0; i < n_; ++i) {
            if (!in_set[i]) continue;
            for (std::size_t k = 0; k < n_; ++k) {
                if (!in_set[k] || !leq(i, k)) continue;
                for (std::size_t j = 0; j < n_; ++j)
                    if (allowed[j] && !in_set[j] && leq(i, j) && leq(j, k)) return false;
            }
        }
        return true;
    }

    // All nonempty convex subsets of the subposet `allowed`, each as a sorted
    // element list, ordered by bitmask value.
    std::vector<std::vector<std::size_t>> convex_subsets(const std::vector<char>& allowed) const {
        if (n_ > 20) throw std::length_error("poset: too many elements for subset enumeration");
        std::vector<std::vector<std::size_t>> out;
        std::uint32_t allowed_mask = 0;
        for (std::size_t i = 0; i < n_; ++i)
            if (allowed[i]) allowed_mask |= 1u << i;
        for (std::uint32_t mask = 1; mask < (1u << n_); ++mask) {
            if ((mask & ~allowed_mask) != 0) continue;
            std::vector<char> in(n_, 0);
            std::vector<std::size_t> elems;
            for (std::size_t i = 0; i < n_; ++i)
                if (mask & (1u << i)) {
                    in[i] = 1;
                    elems.push_back(i);
                }
            if (is_convex(in, allowed)) out.push_back(std::move(elems));
        }
        return out;
    }

    friend bool operator==(const Poset& a, const Poset& b) { return a.n_ == b.n_ && a.leq_ == b.leq_; }

private:
    char& at(std::size_t i, std::size_t j) { return leq_[i * n_ + j]; }

    std::size_t n_ = 0;
    std::vector<char> leq_;
};

/// A poset relabeled so that i precedes j only if i <= j. order[new] = old label.
struct NormalizedPoset {
    Poset poset;
    std::vector<std::size_t> order;
};

inline NormalizedPoset normalize(const Poset& p) {
    NormalizedPoset out;
    out.order = p.topological_order();
    std::vector<std::size_t> new_of_old(p.size());
    for (std::size_t k = 0; k < out.order.size(); ++k) new_of_old[out.order[k]] = k;
    out.poset = p.relabeled(new_of_old);
    return out;
}

}  // namespace blockeq
