#pragma once

// K-webs of square blocked matrices. For every nonempty convex set S of the
// poset there are two nodes, ker B{S} (a free group) and cok B{S}. For every
// splitting of S into a nonempty proper down-set S1 and its complement S2,
// B{S} = [[B1, X], [0, B2]] and the snake lemma gives the exact sequence
//
//   0 -> ker B1 -> ker B -> ker B2 -d-> cok B1 -> cok B -> cok B2 -> 0
//
// with d(w) = X w. The web is stored as a representation of the quiver
// whose vertices are the nodes and whose edges are the five inner maps.

#include "blockeq/blocked.hpp"
#include "blockeq/quiver.hpp"

#include <array>
#include <map>

namespace blockeq {

struct KWebNode {
    enum class Kind { Ker, Cok };
    Kind kind;
    std::vector<std::size_t> set;  // sorted poset elements

    friend bool operator==(const KWebNode&, const KWebNode&) = default;
};

inline std::string to_string(KWebNode::Kind k) { return k == KWebNode::Kind::Ker ? "ker" : "cok"; }

struct KWebSplitting {
    std::vector<std::size_t> set, lower, upper;  // S, S1, S2
    // Nodes ker S1, ker S, ker S2, cok S1, cok S, cok S2.
    std::array<std::size_t, 6> nodes;
    // Edges ker S1->ker S, ker S->ker S2, delta, cok S1->cok S, cok S->cok S2.
    std::array<std::size_t, 5> edges;
};

struct KWeb {
    BlockShape shape;
    std::vector<KWebNode> nodes;
    std::vector<KWebSplitting> splittings;
    Quiver quiver;
    ZRep rep;

    /// Exactness of every six-term sequence at all six positions.
    bool is_exact() const;
};

namespace detail {

inline std::string set_label(const std::vector<std::size_t>& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
    return out + "}";
}

// im f == ker g inside the middle group Z^a / im R.
inline bool exact_at(const IntMatrix& F, const IntMatrix& G, const IntMatrix& R, const IntMatrix& R_next) {
    return same_subgroup(F, preimage_generators(G, R_next), R);
}

}  // namespace detail

inline bool KWeb::is_exact() const {
    for (const auto& sp : splittings) {
        std::array<IntMatrix, 6> R;
        for (std::size_t k = 0; k < 6; ++k) R[k] = rep.presentations[sp.nodes[k]];
        std::array<IntMatrix, 5> M;
        for (std::size_t k = 0; k < 5; ++k) M[k] = rep.maps[sp.edges[k]];
        const IntMatrix zero_in(R[0].rows(), 0);   // 0 -> ker S1
        const IntMatrix zero_out(0, R[5].rows());  // cok S2 -> 0
        const IntMatrix trivial(0, 0);
        if (!detail::exact_at(zero_in, M[0], R[0], R[1])) return false;
        for (std::size_t k = 1; k < 5; ++k)
            if (!detail::exact_at(M[k - 1], M[k], R[k], R[k + 1])) return false;
        if (!detail::exact_at(M[4], zero_out, R[5], trivial)) return false;
    }
    return true;
}

/// Builds the web over the convex subsets of the elements with nonempty blocks.
inline KWeb build_kweb(const BlockedMatrix& B) {
    const auto& sh = B.shape();
    if (!sh.is_square()) throw std::invalid_argument("kweb: shape is not square");
    const Poset& P = sh.poset();
    KWeb web;
    web.shape = sh;

    const auto support = sh.col_support();
    const auto sets = P.convex_subsets(support);
    std::map<std::vector<std::size_t>, std::size_t> set_index;
    std::vector<IntMatrix> blocks, kernels;
    for (const auto& S : sets) {
        set_index[S] = blocks.size();
        blocks.push_back(B.restrict_to(S));
        kernels.push_back(kernel_basis(blocks.back()));
        web.nodes.push_back({KWebNode::Kind::Ker, S});
        web.nodes.push_back({KWebNode::Kind::Cok, S});
        web.rep.presentations.push_back(IntMatrix(kernels.back().cols(), 0));
        web.rep.presentations.push_back(blocks.back());
    }
    web.quiver.vertices = web.nodes.size();
    auto ker_node = [&](const std::vector<std::size_t>& S) { return 2 * set_index.at(S); };
    auto cok_node = [&](const std::vector<std::size_t>& S) { return 2 * set_index.at(S) + 1; };

    auto add_edge = [&](std::size_t src, std::size_t dst, const std::string& kind, IntMatrix map) {
        const std::string id = kind + ":" + to_string(web.nodes[src].kind) + detail::set_label(web.nodes[src].set) +
                               "->" + to_string(web.nodes[dst].kind) + detail::set_label(web.nodes[dst].set);
        web.quiver.edges.push_back({id, src, dst});
        web.rep.maps.push_back(std::move(map));
        return web.quiver.edges.size() - 1;
    };

    for (const auto& S : sets) {
        if (S.size() < 2) continue;
        // Coordinates of each element of S inside B{S}.
        std::map<std::size_t, std::vector<std::size_t>> coords;
        std::size_t pos = 0;
        for (auto e : S)
            for (std::size_t k = 0; k < sh.col_sizes()[e]; ++k) coords[e].push_back(pos++);
        const std::size_t total = pos;

        const std::size_t s = S.size();
        for (std::uint32_t mask = 1; mask + 1 < (1u << s); ++mask) {
            std::vector<std::size_t> lower, upper;
            for (std::size_t k = 0; k < s; ++k) ((mask >> k) & 1u ? lower : upper).push_back(S[k]);
            bool down = true;
            for (auto i : lower)
                for (auto j : upper)
                    if (P.leq(j, i)) down = false;
            if (!down) continue;

            std::vector<std::size_t> lc, uc;
            for (auto e : lower) lc.insert(lc.end(), coords[e].begin(), coords[e].end());
            for (auto e : upper) uc.insert(uc.end(), coords[e].begin(), coords[e].end());
            const std::size_t iS = set_index.at(S), i1 = set_index.at(lower), i2 = set_index.at(upper);
            const IntMatrix& K = kernels[iS];
            const IntMatrix& K1 = kernels[i1];
            const IntMatrix& K2 = kernels[i2];

            // Inclusion / projection of coordinates.
            IntMatrix incl(total, lc.size()), proj(uc.size(), total);
            for (std::size_t k = 0; k < lc.size(); ++k) incl(lc[k], k) = 1;
            for (std::size_t k = 0; k < uc.size(); ++k) proj(k, uc[k]) = 1;

            auto ker_incl = solve_integer_columns(K, incl * K1);
            auto ker_proj = solve_integer_columns(K2, proj * K);
            if (!ker_incl || !ker_proj) throw std::logic_error("kweb: kernel maps are not integral");
            const IntMatrix X = blocks[iS].select(lc, uc);

            KWebSplitting sp;
            sp.set = S;
            sp.lower = lower;
            sp.upper = upper;
            sp.nodes = {ker_node(lower), ker_node(S), ker_node(upper), cok_node(lower), cok_node(S), cok_node(upper)};
            sp.edges[0] = add_edge(sp.nodes[0], sp.nodes[1], "incl", std::move(*ker_incl));
            sp.edges[1] = add_edge(sp.nodes[1], sp.nodes[2], "proj", std::move(*ker_proj));
            sp.edges[2] = add_edge(sp.nodes[2], sp.nodes[3], "delta", X * K2);
            sp.edges[3] = add_edge(sp.nodes[3], sp.nodes[4], "incl", incl);
            sp.edges[4] = add_edge(sp.nodes[4], sp.nodes[5], "proj", proj);
            web.splittings.push_back(std::move(sp));
        }
    }
    validate_rep(web.rep, web.quiver);
    if (!web.is_exact()) throw std::logic_error("kweb: six-term sequence is not exact");
    return web;
}

/// Isomorphism of webs over the same shape, with nodes matched by label.
inline Verdict decide_kweb_isomorphism(const KWeb& a, const KWeb& b, const SearchBudget& budget) {
    if (!(a.shape == b.shape) || !(a.quiver == b.quiver)) throw std::invalid_argument("kweb: shapes differ");
    // Webs are derived data, so a large vertex group is not an input error.
    return decide_rep_isomorphism(a.rep, b.rep, a.quiver, budget, OverCap::Unknown);
}

}  // namespace blockeq
