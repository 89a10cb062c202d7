#pragma once

// Bidirectional layered search over words in elementary generators acting on
// the left and right of a matrix:
//
//     X  ->  g X   (left move)      X  ->  X h   (right move)
//
// Optionally a column vector v is carried along, transformed as v -> h^T v by
// right moves, and stored reduced modulo the row lattice of the current X.
// States are canonicalized as byte strings, so the two frontiers meet by hash
// lookup.

#include "blockeq/blocked.hpp"
#include "blockeq/verdict.hpp"

#include <unordered_map>

namespace blockeq {

struct SearchProblem {
    IntMatrix start;
    IntMatrix goal;
    std::optional<IntMatrix> start_vector;  // carried vector on the start side
    std::optional<IntMatrix> goal_vector;   // carried vector on the goal side
    std::vector<ElementaryMove> left_moves;
    std::vector<ElementaryMove> right_moves;
};

/// On success, goal == U * start * W exactly (and, when vectors are carried,
/// W^T start_vector - goal_vector lies in the row lattice of goal).
struct SearchResult {
    bool found = false;
    IntMatrix U;
    IntMatrix W;
    BudgetReport report;
};

namespace detail {

class SearchSide {
public:
    struct Node {
        std::uint32_t parent;
        std::uint32_t move;  // index into the combined move list; unused for the root
        const std::string* key;
    };

    std::vector<Node> nodes;
    std::unordered_map<std::string, std::uint32_t> index;
    std::vector<std::uint32_t> frontier;
    std::size_t depth = 0;

    // Returns the node id, or nullopt if the key was already present.
    std::optional<std::uint32_t> insert(std::string key, std::uint32_t parent, std::uint32_t move) {
        auto [it, inserted] = index.try_emplace(std::move(key), static_cast<std::uint32_t>(nodes.size()));
        if (!inserted) return std::nullopt;
        nodes.push_back({parent, move, &it->first});
        return it->second;
    }

    // Moves from the root to `id`, in application order.
    std::vector<std::uint32_t> path(std::uint32_t id) const {
        std::vector<std::uint32_t> moves;
        while (id != 0) {
            moves.push_back(nodes[id].move);
            id = nodes[id].parent;
        }
        std::reverse(moves.begin(), moves.end());
        return moves;
    }
};

class Searcher {
public:
    Searcher(const SearchProblem& p, const SearchBudget& budget) : p_(p), budget_(budget) {
        rows_ = p.start.rows();
        cols_ = p.start.cols();
        tracked_ = p.start_vector.has_value();
        moves_ = p.left_moves;
        moves_.insert(moves_.end(), p.right_moves.begin(), p.right_moves.end());
        left_count_ = p.left_moves.size();
    }

    SearchResult run() {
        SearchResult res;
        res.report.budget = budget_;
        fwd_.insert(encode(p_.start, p_.start_vector), 0, 0);
        fwd_.frontier = {0};
        bwd_.insert(encode(p_.goal, p_.goal_vector), 0, 0);
        bwd_.frontier = {0};

        if (*fwd_.nodes[0].key == *bwd_.nodes[0].key) {
            finish(res, 0, 0);
            return res;
        }
        while (fwd_.depth + bwd_.depth < budget_.max_depth) {
            if (fwd_.frontier.empty() || bwd_.frontier.empty()) {
                res.report.exhausted = true;
                break;
            }
            const bool forward = fwd_.frontier.size() <= bwd_.frontier.size();
            SearchSide& side = forward ? fwd_ : bwd_;
            SearchSide& other = forward ? bwd_ : fwd_;
            std::vector<std::uint32_t> next;
            bool out_of_nodes = false;
            for (std::uint32_t id : side.frontier) {
                auto [X, v] = decode(*side.nodes[id].key);
                ++res.report.nodes_expanded;
                for (std::uint32_t mv = 0; mv < moves_.size(); ++mv) {
                    std::string key = child_key(X, v, mv);
                    auto found = other.index.find(key);
                    auto child = side.insert(std::move(key), id, mv);
                    if (!child) continue;
                    if (found != other.index.end()) {
                        side.depth += 1;
                        res.report.depth_reached = fwd_.depth + bwd_.depth;
                        res.report.nodes_stored = fwd_.nodes.size() + bwd_.nodes.size();
                        if (forward)
                            finish(res, *child, found->second);
                        else
                            finish(res, found->second, *child);
                        return res;
                    }
                    next.push_back(*child);
                    if (fwd_.nodes.size() + bwd_.nodes.size() >= budget_.max_nodes) {
                        out_of_nodes = true;
                        break;
                    }
                }
                if (out_of_nodes) break;
            }
            side.frontier = std::move(next);
            if (out_of_nodes) break;
            side.depth += 1;
            res.report.depth_reached = fwd_.depth + bwd_.depth;
        }
        // A side whose last layer produced nothing new has closed its orbit.
        if (fwd_.frontier.empty() || bwd_.frontier.empty()) res.report.exhausted = true;
        res.report.nodes_stored = fwd_.nodes.size() + bwd_.nodes.size();
        return res;
    }

private:
    std::string encode(const IntMatrix& X, const std::optional<IntMatrix>& v) const {
        std::string key = matrix_key(X);
        if (tracked_) {
            IntMatrix r = *v;
            CosetReducer(X).reduce(r);
            for (const auto& e : r.entries()) append_key(key, e);
        }
        return key;
    }

    std::pair<IntMatrix, std::optional<IntMatrix>> decode(const std::string& key) const {
        std::size_t pos = 0;
        IntMatrix X(rows_, cols_);
        for (auto& e : X.entries()) e = read_key(key, pos);
        std::optional<IntMatrix> v;
        if (tracked_) {
            v = IntMatrix(cols_, 1);
            for (auto& e : v->entries()) e = read_key(key, pos);
        }
        return {std::move(X), std::move(v)};
    }

    std::string child_key(const IntMatrix& X, const std::optional<IntMatrix>& v, std::uint32_t mv) const {
        IntMatrix Y = X;
        std::optional<IntMatrix> w = v;
        if (mv < left_count_) {
            moves_[mv].apply_left(Y);
        } else {
            moves_[mv].apply_right(Y);
            if (w) moves_[mv].apply_transpose(*w);
        }
        return encode(Y, w);
    }

    // U, W with X = U * root * W for the node at the end of `path`.
    void replay(const std::vector<std::uint32_t>& path, IntMatrix& U, IntMatrix& W) const {
        U = IntMatrix::identity(rows_);
        W = IntMatrix::identity(cols_);
        for (auto mv : path) {
            if (mv < left_count_)
                moves_[mv].apply_left(U);
            else
                moves_[mv].apply_right(W);
        }
    }

    // U^{-1}, W^{-1} for the same path.
    void replay_inverse(const std::vector<std::uint32_t>& path, IntMatrix& Uinv, IntMatrix& Winv) const {
        Uinv = IntMatrix::identity(rows_);
        Winv = IntMatrix::identity(cols_);
        for (auto mv : path) {
            if (mv < left_count_)
                moves_[mv].inverse().apply_right(Uinv);
            else
                moves_[mv].inverse().apply_left(Winv);
        }
    }

    void finish(SearchResult& res, std::uint32_t fwd_id, std::uint32_t bwd_id) const {
        IntMatrix Uf, Wf, Ub_inv, Wb_inv;
        replay(fwd_.path(fwd_id), Uf, Wf);
        replay_inverse(bwd_.path(bwd_id), Ub_inv, Wb_inv);
        res.found = true;
        res.U = Ub_inv * Uf;
        res.W = Wf * Wb_inv;
        res.report.nodes_stored = fwd_.nodes.size() + bwd_.nodes.size();
    }

    const SearchProblem& p_;
    SearchBudget budget_;
    std::size_t rows_ = 0, cols_ = 0;
    bool tracked_ = false;
    std::vector<ElementaryMove> moves_;
    std::size_t left_count_ = 0;
    SearchSide fwd_, bwd_;
};

}  // namespace detail

inline SearchResult bidirectional_search(const SearchProblem& problem, const SearchBudget& budget) {
    budget.validate();
    if (problem.start.rows() != problem.goal.rows() || problem.start.cols() != problem.goal.cols())
        throw std::invalid_argument("search: start and goal differ in shape");
    if (problem.start_vector.has_value() != problem.goal_vector.has_value())
        throw std::invalid_argument("search: carried vectors must be given on both sides");
    return detail::Searcher(problem, budget).run();
}

}  // namespace blockeq
