#pragma once

// Shifts of finite type given by nonnegative integer adjacency matrices:
// flow invariants, the irreducible decision, condensation of I - A into
// poset-blocked form, and the reducible decision through SL-blocked search.

#include "blockeq/equiv.hpp"

#include <functional>

namespace blockeq {

inline void check_sft(const IntMatrix& A) {
    if (!A.is_square()) throw std::invalid_argument("sft: matrix is not square");
    for (const auto& e : A.entries())
        if (e < 0) throw std::invalid_argument("sft: negative entry");
}

inline IntMatrix identity_minus(const IntMatrix& A) { return IntMatrix::identity(A.rows()) - A; }

inline FgAbelianGroup bowen_franks(const IntMatrix& A) {
    check_sft(A);
    return cokernel(identity_minus(A));
}

inline Integer parry_sullivan(const IntMatrix& A) {
    check_sft(A);
    return determinant(identity_minus(A));
}

struct FlowInvariant {
    FgAbelianGroup bowen_franks;
    Integer parry_sullivan;

    friend bool operator==(const FlowInvariant& a, const FlowInvariant& b) {
        return a.bowen_franks == b.bowen_franks && a.parry_sullivan == b.parry_sullivan;
    }
    std::string to_string() const { return "BF " + bowen_franks.to_string() + ", PS " + parry_sullivan.get_str(); }
};

inline FlowInvariant flow_invariant(const IntMatrix& A) { return {bowen_franks(A), parry_sullivan(A)}; }

namespace detail {

// reach[u][v]: a path of length >= 1 from u to v.
inline std::vector<std::vector<char>> reachability(const IntMatrix& A) {
    const std::size_t n = A.rows();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack;
        for (std::size_t v = 0; v < n; ++v)
            if (A(s, v) != 0 && !reach[s][v]) {
                reach[s][v] = 1;
                stack.push_back(v);
            }
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v)
                if (A(u, v) != 0 && !reach[s][v]) {
                    reach[s][v] = 1;
                    stack.push_back(v);
                }
        }
    }
    return reach;
}

}  // namespace detail

/// Strongly connected with at least one edge (a lone vertex needs a self-loop).
inline bool is_irreducible(const IntMatrix& A) {
    check_sft(A);
    if (A.rows() == 0) return false;
    const auto reach = detail::reachability(A);
    for (std::size_t u = 0; u < A.rows(); ++u)
        for (std::size_t v = 0; v < A.rows(); ++v)
            if (!reach[u][v]) return false;
    return true;
}

/// Irreducible and every vertex has exactly one outgoing edge: a single periodic orbit.
inline bool is_single_cycle(const IntMatrix& A) {
    if (!is_irreducible(A)) return false;
    for (std::size_t u = 0; u < A.rows(); ++u) {
        Integer s = 0;
        for (std::size_t v = 0; v < A.cols(); ++v) s += A(u, v);
        if (s != 1) return false;
    }
    return true;
}

inline bool decide_flow_equivalence_irreducible(const IntMatrix& A, const IntMatrix& B) {
    if (!is_irreducible(A) || !is_irreducible(B)) throw std::invalid_argument("flow: input is not irreducible");
    const bool ca = is_single_cycle(A), cb = is_single_cycle(B);
    if (ca || cb) return ca && cb;
    return flow_invariant(A) == flow_invariant(B);
}

/// I - A conjugated by the permutation that groups strongly connected
/// components, as a blocked matrix over the reachability order.
struct CondensedForm {
    Poset poset;
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> order;                    // order[new] = old vertex
    std::vector<std::vector<std::size_t>> components;  // old vertices of each component
    BlockedMatrix B;
    std::vector<char> trivial_flags;  // single vertex without a self-loop
};

inline CondensedForm condense(const IntMatrix& A) {
    check_sft(A);
    const std::size_t n = A.rows();
    if (n == 0) throw std::invalid_argument("condense: empty matrix");
    const auto reach = detail::reachability(A);

    // Components labeled by least vertex.
    std::vector<std::size_t> comp(n, n);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t v = 0; v < n; ++v) {
        if (comp[v] != n) continue;
        comp[v] = members.size();
        members.push_back({v});
        for (std::size_t w = v + 1; w < n; ++w)
            if (comp[w] == n && reach[v][w] && reach[w][v]) {
                comp[w] = comp[v];
                members.back().push_back(w);
            }
    }
    const std::size_t k = members.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (a != b && reach[members[a][0]][members[b][0]]) pairs.emplace_back(a, b);
    const auto norm = normalize(Poset(k, pairs));

    CondensedForm out;
    out.poset = norm.poset;
    for (auto c : norm.order) {
        out.components.push_back(members[c]);
        out.sizes.push_back(members[c].size());
        out.order.insert(out.order.end(), members[c].begin(), members[c].end());
        out.trivial_flags.push_back(members[c].size() == 1 && A(members[c][0], members[c][0]) == 0);
    }
    out.B = BlockedMatrix(BlockShape::square(out.poset, out.sizes), identity_minus(A).select(out.order, out.order));
    return out;
}

/// n_i = 1 where m_i = 1, else 2 + max(m_i, m'_i). Requires m_i = 1 iff m'_i = 1.
inline std::vector<std::size_t> stabilization_target(const std::vector<std::size_t>& m,
                                                     const std::vector<std::size_t>& mp) {
    if (m.size() != mp.size()) throw std::invalid_argument("stabilization: size vectors differ in length");
    std::vector<std::size_t> n(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if ((m[i] == 1) != (mp[i] == 1))
            throw std::invalid_argument("stabilization: block " + std::to_string(i + 1) + " has size 1 on one side only");
        n[i] = m[i] == 1 ? 1 : 2 + std::max(m[i], mp[i]);
    }
    return n;
}

/// Deletes, repeatedly, vertices with no outgoing or no incoming edges.
/// The shift space only lives on what remains.
inline IntMatrix essential_core(const IntMatrix& A) {
    check_sft(A);
    std::vector<std::size_t> keep(A.rows());
    std::iota(keep.begin(), keep.end(), 0);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::size_t> next;
        for (auto u : keep) {
            bool out = false, in = false;
            for (auto v : keep) {
                out = out || A(u, v) != 0;
                in = in || A(v, u) != 0;
            }
            if (out && in)
                next.push_back(u);
            else
                changed = true;
        }
        keep = std::move(next);
    }
    return A.select(keep, keep);
}

/// Removes every vertex t without a self-loop, replacing each path u -> t -> w
/// by an edge (A'_uw += A_ut A_tw). On I - A this is elimination on the unit
/// pivot (I - A)_tt = 1, so flow invariants are preserved. Afterwards each
/// vertex carries a loop and a periodic orbit has become the 1x1 matrix [1].
inline IntMatrix contract_loopless(IntMatrix A) {
    check_sft(A);
    for (;;) {
        const std::size_t n = A.rows();
        std::size_t t = n;
        for (std::size_t v = 0; v < n; ++v)
            if (A(v, v) == 0) {
                t = v;
                break;
            }
        if (t == n) return A;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t w = 0; w < n; ++w)
                if (u != t && w != t && A(u, t) != 0 && A(t, w) != 0) A(u, w) += A(u, t) * A(t, w);
        std::vector<std::size_t> rest;
        for (std::size_t v = 0; v < n; ++v)
            if (v != t) rest.push_back(v);
        A = A.select(rest, rest);
    }
}

/// Essential core with loopless vertices contracted.
inline IntMatrix flow_core(const IntMatrix& A) { return contract_loopless(essential_core(A)); }

namespace detail {

struct ComponentLabel {
    bool cycle;
    FlowInvariant invariant;

    friend bool operator==(const ComponentLabel&, const ComponentLabel&) = default;
    std::string to_string() const { return cycle ? "cycle" : invariant.to_string(); }
};

inline std::vector<ComponentLabel> component_labels(const CondensedForm& c, const IntMatrix& core) {
    std::vector<ComponentLabel> out;
    for (const auto& vs : c.components) {
        const IntMatrix block = core.select(vs, vs);
        out.push_back({is_single_cycle(block), flow_invariant(block)});
    }
    return out;
}

// All bijections sigma (component k of the left <-> sigma[k] of the right)
// preserving the order both ways and the labels; lexicographic order.
inline std::vector<std::vector<std::size_t>> poset_alignments(const Poset& p, const Poset& q,
                                                              const std::vector<ComponentLabel>& lp,
                                                              const std::vector<ComponentLabel>& lq) {
    const std::size_t n = p.size();
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> sigma(n);
    std::vector<char> used(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == n) {
            out.push_back(sigma);
            return;
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c] || !(lp[k] == lq[c])) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j)
                ok = p.leq(j, k) == q.leq(sigma[j], c) && p.leq(k, j) == q.leq(c, sigma[j]);
            if (!ok) continue;
            used[c] = 1;
            sigma[k] = c;
            rec(k + 1);
            used[c] = 0;
        }
    };
    rec(0);
    return out;
}

inline std::string label_multiset(std::vector<ComponentLabel> labels) {
    std::vector<std::string> names;
    for (const auto& l : labels) names.push_back(l.to_string());
    std::sort(names.begin(), names.end());
    std::string s;
    for (std::size_t k = 0; k < names.size(); ++k) s += (k ? "; " : "") + names[k];
    return s;
}

// Effective sizes: cycles keep size 1, any other 1x1 component is padded to 2.
inline std::vector<std::size_t> effective_sizes(const CondensedForm& c, const std::vector<ComponentLabel>& labels) {
    std::vector<std::size_t> m = c.sizes;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] == 1 && !labels[i].cycle) m[i] = 2;
    return m;
}

}  // namespace detail

/// Flow equivalence of two SFTs. Irreducible inputs are decided by invariants
/// alone (Yes then carries no matrix witness). Otherwise both sides are
/// condensed, aligned over their component posets, stabilized and handed to
/// the SL-blocked search; a Yes witness relates the stabilized matrices.
inline Verdict decide_flow_equivalence(const IntMatrix& A, const IntMatrix& Ap, const SearchBudget& budget) {
    check_sft(A);
    check_sft(Ap);
    budget.validate();
    BudgetReport report;
    report.budget = budget;

    const IntMatrix C = flow_core(A), Cp = flow_core(Ap);
    if (C.rows() == 0 || Cp.rows() == 0) {
        if (C.rows() == Cp.rows()) return Verdict::yes({}, report);
        return Verdict::no({"essential-vertices", std::to_string(C.rows()), std::to_string(Cp.rows())}, report);
    }
    if (is_irreducible(C) && is_irreducible(Cp)) {
        if (decide_flow_equivalence_irreducible(C, Cp)) return Verdict::yes({}, report);
        const bool ca = is_single_cycle(C), cb = is_single_cycle(Cp);
        if (ca != cb)
            return Verdict::no({"single-cycle", ca ? "cycle" : "not a cycle", cb ? "cycle" : "not a cycle"}, report);
        const auto fa = flow_invariant(C), fb = flow_invariant(Cp);
        if (fa.parry_sullivan != fb.parry_sullivan)
            return Verdict::no({"parry-sullivan", fa.parry_sullivan.get_str(), fb.parry_sullivan.get_str()}, report);
        return Verdict::no({"bowen-franks", fa.bowen_franks.to_string(), fb.bowen_franks.to_string()}, report);
    }

    const CondensedForm cf = condense(C), cfp = condense(Cp);
    if (cf.sizes.size() != cfp.sizes.size())
        return Verdict::no({"component-count", std::to_string(cf.sizes.size()), std::to_string(cfp.sizes.size())},
                           report);
    const auto labels = detail::component_labels(cf, C);
    const auto labels_p = detail::component_labels(cfp, Cp);
    const auto alignments = detail::poset_alignments(cf.poset, cfp.poset, labels, labels_p);
    if (alignments.empty()) {
        const auto la = detail::label_multiset(labels), lb = detail::label_multiset(labels_p);
        if (la != lb) return Verdict::no({"component-invariants", la, lb}, report);
        return Verdict::no({"component-poset", "no order isomorphism", "matching component invariants"}, report);
    }

    const auto m = detail::effective_sizes(cf, labels);
    const auto mp_full = detail::effective_sizes(cfp, labels_p);
    std::optional<Certificate> refuted;
    bool all_no = true;
    for (const auto& sigma : alignments) {
        std::vector<std::size_t> mp(sigma.size());
        for (std::size_t k = 0; k < sigma.size(); ++k) mp[k] = mp_full[sigma[k]];
        const auto n = stabilization_target(m, mp);
        const BlockedMatrix left = iota_embed(iota_embed(cf.B, m), n);
        const BlockedMatrix right_aligned = permute_blocks(cfp.B, sigma, cf.poset);
        const BlockedMatrix right = iota_embed(iota_embed(right_aligned, mp), n);
        Verdict v = decide_blocked_equivalence(left, right, Group::SL, Side::UAV, budget);
        report.nodes_expanded += v.budget.nodes_expanded;
        report.nodes_stored = std::max(report.nodes_stored, v.budget.nodes_stored);
        report.depth_reached = std::max(report.depth_reached, v.budget.depth_reached);
        if (v.status == Status::Yes) {
            v.budget = report;
            return v;
        }
        if (v.status == Status::No) {
            if (!refuted) refuted = v.certificate;
        } else {
            all_no = false;
        }
    }
    if (all_no) return Verdict::no(*refuted, report);
    return Verdict::unknown(report);
}

}  // namespace blockeq
