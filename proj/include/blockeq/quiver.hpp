#pragma once

// Representations of quivers by finitely generated abelian groups.
//
// A vertex group is presented as Z^g / im_Z(R) for a g x r relation matrix R.
// An edge map is a g_dst x g_src matrix sending generators to words in the
// target generators. Homomorphisms are compared modulo the target relations.

#include "blockeq/verdict.hpp"
#include "blockeq/intmat.hpp"

#include <functional>
#include <numeric>

namespace blockeq {

struct QuiverEdge {
    std::string id;
    std::size_t src = 0;
    std::size_t dst = 0;
    friend bool operator==(const QuiverEdge&, const QuiverEdge&) = default;
};

struct Quiver {
    std::size_t vertices = 0;
    std::vector<QuiverEdge> edges;

    void validate() const {
        for (const auto& e : edges)
            if (e.src >= vertices || e.dst >= vertices) throw std::invalid_argument("quiver: edge endpoint out of range");
    }
    friend bool operator==(const Quiver&, const Quiver&) = default;
};

struct ZRep {
    std::vector<IntMatrix> presentations;  // per vertex
    std::vector<IntMatrix> maps;           // per edge

    friend bool operator==(const ZRep&, const ZRep&) = default;
};

// ---------------------------------------------------------------------------
// Homomorphisms between presented groups

/// F induces a homomorphism Z^a/im R1 -> Z^b/im R2.
inline bool is_homomorphism(const IntMatrix& F, const IntMatrix& R1, const IntMatrix& R2) {
    if (F.rows() != R2.rows() || F.cols() != R1.rows()) throw std::invalid_argument("hom: dimension mismatch");
    return columns_in_image(R2, F * R1);
}

/// (lattice of gens + rel) / lattice of rel, for rel inside that lattice.
inline FgAbelianGroup subquotient(const IntMatrix& gens, const IntMatrix& rel) {
    const IntMatrix L = lattice_basis(hconcat(gens, rel));
    auto Y = solve_integer_columns(L, rel);
    if (!Y) throw std::logic_error("subquotient: relations outside the lattice");
    auto g = cokernel(*Y);
    return g;
}

inline FgAbelianGroup hom_kernel(const IntMatrix& F, const IntMatrix& R1, const IntMatrix& R2) {
    return subquotient(preimage_generators(F, R2), R1);
}

inline FgAbelianGroup hom_image(const IntMatrix& F, const IntMatrix& R2) { return subquotient(F, R2); }

inline FgAbelianGroup hom_cokernel(const IntMatrix& F, const IntMatrix& R2) { return cokernel(hconcat(F, R2)); }

/// Bijective homomorphism (F assumed well defined).
inline bool is_isomorphism(const IntMatrix& F, const IntMatrix& R1, const IntMatrix& R2) {
    if (!columns_in_image(R1, preimage_generators(F, R2))) return false;
    return hom_cokernel(F, R2).is_trivial();
}

/// Subgroups of Z^a / im R generated by the columns of H1 and of H2 coincide.
inline bool same_subgroup(const IntMatrix& H1, const IntMatrix& H2, const IntMatrix& R) {
    return columns_in_image(hconcat(H2, R), H1) && columns_in_image(hconcat(H1, R), H2);
}

// ---------------------------------------------------------------------------
// Representations

inline void validate_rep(const ZRep& rep, const Quiver& Q) {
    Q.validate();
    if (rep.presentations.size() != Q.vertices || rep.maps.size() != Q.edges.size())
        throw std::invalid_argument("rep: vertex or edge count does not match the quiver");
    for (std::size_t k = 0; k < Q.edges.size(); ++k) {
        const auto& e = Q.edges[k];
        const auto& Rs = rep.presentations[e.src];
        const auto& Rd = rep.presentations[e.dst];
        if (rep.maps[k].rows() != Rd.rows() || rep.maps[k].cols() != Rs.rows())
            throw std::invalid_argument("rep: edge " + e.id + " has the wrong dimensions");
        if (!is_homomorphism(rep.maps[k], Rs, Rd))
            throw std::invalid_argument("rep: edge " + e.id + " is not a well-defined homomorphism");
    }
}

inline FgAbelianGroup vertex_group(const ZRep& rep, std::size_t v) { return cokernel(rep.presentations[v]); }

/// f_v : rep1 vertex v -> rep2 vertex v is a family of homomorphisms
/// commuting with every edge map.
inline bool is_morphism(const std::vector<IntMatrix>& f, const ZRep& rep1, const ZRep& rep2, const Quiver& Q) {
    if (f.size() != Q.vertices) throw std::invalid_argument("morphism: family has the wrong length");
    for (std::size_t v = 0; v < Q.vertices; ++v) {
        if (f[v].rows() != rep2.presentations[v].rows() || f[v].cols() != rep1.presentations[v].rows())
            throw std::invalid_argument("morphism: dimension mismatch at vertex " + std::to_string(v + 1));
        if (!is_homomorphism(f[v], rep1.presentations[v], rep2.presentations[v])) return false;
    }
    for (std::size_t k = 0; k < Q.edges.size(); ++k) {
        const auto& e = Q.edges[k];
        const IntMatrix diff = f[e.dst] * rep1.maps[k] - rep2.maps[k] * f[e.src];
        if (!columns_in_image(rep2.presentations[e.dst], diff)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Path-ring modules

/// The direct sum of the vertex groups with the action of the path ring:
/// idempotent P_v projects to the v summand, edge e acts through phi_e.
struct PathModule {
    IntMatrix presentation;
    std::vector<IntMatrix> idempotents;
    std::vector<IntMatrix> edge_actions;
};

namespace detail {

inline bool equal_mod(const IntMatrix& X, const IntMatrix& Y, const IntMatrix& R) {
    return columns_in_image(R, X - Y);
}

}  // namespace detail

/// Throws unless the idempotents are orthogonal, sum to the identity, and the
/// edge actions are compatible with sources and targets.
inline void validate_module(const PathModule& mod, const Quiver& Q) {
    const IntMatrix& R = mod.presentation;
    const std::size_t g = R.rows();
    if (mod.idempotents.size() != Q.vertices || mod.edge_actions.size() != Q.edges.size())
        throw std::invalid_argument("module: action count does not match the quiver");
    const IntMatrix I = IntMatrix::identity(g);
    IntMatrix sum(g, g);
    for (std::size_t u = 0; u < Q.vertices; ++u) {
        const auto& P = mod.idempotents[u];
        if (P.rows() != g || P.cols() != g) throw std::invalid_argument("module: idempotent has the wrong size");
        if (!is_homomorphism(P, R, R)) throw std::invalid_argument("module: idempotent is not well defined");
        if (!detail::equal_mod(P * P, P, R)) throw std::invalid_argument("module: P_v is not idempotent");
        for (std::size_t v = 0; v < Q.vertices; ++v)
            if (u != v && !detail::equal_mod(P * mod.idempotents[v], IntMatrix(g, g), R))
                throw std::invalid_argument("module: idempotents are not orthogonal");
        sum = sum + P;
    }
    if (!detail::equal_mod(sum, I, R)) throw std::invalid_argument("module: idempotents do not sum to the identity");
    for (std::size_t k = 0; k < Q.edges.size(); ++k) {
        const auto& E = mod.edge_actions[k];
        const auto& e = Q.edges[k];
        if (E.rows() != g || E.cols() != g) throw std::invalid_argument("module: edge action has the wrong size");
        if (!is_homomorphism(E, R, R)) throw std::invalid_argument("module: edge action is not well defined");
        if (!detail::equal_mod(E * mod.idempotents[e.src], E, R) ||
            !detail::equal_mod(mod.idempotents[e.dst] * E, E, R))
            throw std::invalid_argument("module: edge " + e.id + " does not respect its endpoints");
    }
}

inline PathModule zrep_to_module(const ZRep& rep, const Quiver& Q) {
    validate_rep(rep, Q);
    std::vector<std::size_t> off(Q.vertices + 1, 0), roff(Q.vertices + 1, 0);
    for (std::size_t v = 0; v < Q.vertices; ++v) {
        off[v + 1] = off[v] + rep.presentations[v].rows();
        roff[v + 1] = roff[v] + rep.presentations[v].cols();
    }
    const std::size_t g = off.back();
    PathModule mod;
    mod.presentation = IntMatrix(g, roff.back());
    for (std::size_t v = 0; v < Q.vertices; ++v) {
        mod.presentation.set_block(off[v], roff[v], rep.presentations[v]);
        IntMatrix P(g, g);
        for (std::size_t i = off[v]; i < off[v + 1]; ++i) P(i, i) = 1;
        mod.idempotents.push_back(std::move(P));
    }
    for (std::size_t k = 0; k < Q.edges.size(); ++k) {
        IntMatrix E(g, g);
        E.set_block(off[Q.edges[k].dst], off[Q.edges[k].src], rep.maps[k]);
        mod.edge_actions.push_back(std::move(E));
    }
    return mod;
}

/// Action of the path e_k ... e_1 (written right to left, e_1 applied first);
/// zero when consecutive edges do not compose.
inline IntMatrix path_action(const PathModule& mod, const Quiver& Q, const std::vector<std::size_t>& path) {
    const std::size_t g = mod.presentation.rows();
    if (path.empty()) return IntMatrix::identity(g);
    IntMatrix out = IntMatrix::identity(g);
    for (std::size_t k = path.size(); k-- > 0;) {
        if (k + 1 < path.size() && Q.edges[path[k]].src != Q.edges[path[k + 1]].dst) return IntMatrix(g, g);
        out = mod.edge_actions[path[k]] * out;
    }
    return out;
}

/// Compact presentation of Z^g / im R: coordinates y = to * x with
/// y_i in Z/moduli_i (modulus 0 meaning Z); x = from * y.
struct NormalPresentation {
    std::vector<Integer> moduli;
    IntMatrix to;
    IntMatrix from;

    // Diagonal relations; free generators get no column.
    IntMatrix relations() const {
        std::size_t t = 0;
        for (const auto& d : moduli) t += d != 0;
        IntMatrix D(moduli.size(), t);
        for (std::size_t i = 0, c = 0; i < moduli.size(); ++i)
            if (moduli[i] != 0) D(i, c++) = moduli[i];
        return D;
    }
    void reduce(IntMatrix& y) const {
        for (std::size_t i = 0; i < moduli.size(); ++i)
            for (std::size_t j = 0; j < y.cols(); ++j)
                if (moduli[i] != 0) mpz_fdiv_r(y(i, j).get_mpz_t(), y(i, j).get_mpz_t(), moduli[i].get_mpz_t());
    }
};

inline NormalPresentation normal_presentation(const IntMatrix& R) {
    const auto st = detail::smith_reduce(R);
    const std::size_t g = R.rows();
    NormalPresentation np;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < g; ++i) {
        const Integer s = (i < R.cols()) ? Integer(st.S(i, i)) : Integer(0);
        if (s == 1) continue;
        keep.push_back(i);
        np.moduli.push_back(s);
    }
    std::vector<std::size_t> all(g);
    std::iota(all.begin(), all.end(), 0);
    np.to = st.U.select(keep, all);
    np.from = st.Uinv.select(all, keep);
    return np;
}

/// A_v = P_v applied to the module, presented on all g generators with
/// relations {c : P_v c in im R}; the edge map is E P_src.
inline ZRep module_to_zrep(const PathModule& mod, const Quiver& Q) {
    validate_module(mod, Q);
    const IntMatrix& R = mod.presentation;
    ZRep raw;
    for (std::size_t v = 0; v < Q.vertices; ++v) raw.presentations.push_back(preimage_generators(mod.idempotents[v], R));
    for (std::size_t k = 0; k < Q.edges.size(); ++k)
        raw.maps.push_back(mod.edge_actions[k] * mod.idempotents[Q.edges[k].src]);

    // Shrink to normal presentations.
    ZRep rep;
    std::vector<NormalPresentation> np;
    for (const auto& P : raw.presentations) {
        np.push_back(normal_presentation(P));
        rep.presentations.push_back(np.back().relations());
    }
    for (std::size_t k = 0; k < Q.edges.size(); ++k) {
        IntMatrix M = np[Q.edges[k].dst].to * raw.maps[k] * np[Q.edges[k].src].from;
        np[Q.edges[k].dst].reduce(M);
        rep.maps.push_back(std::move(M));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Isomorphism

inline constexpr long kMaxEnumeratedOrder = 64;

namespace detail {

// Orders of group elements in normal coordinates; 0 for infinite order.
inline Integer element_order(const std::vector<Integer>& moduli, const IntMatrix& y) {
    Integer ord = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (y(i, 0) == 0) continue;
        if (moduli[i] == 0) return 0;
        Integer g;
        mpz_gcd(g.get_mpz_t(), y(i, 0).get_mpz_t(), moduli[i].get_mpz_t());
        const Integer o = moduli[i] / g;
        mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), o.get_mpz_t());
    }
    return ord;
}

class IsoSearch {
public:
    IsoSearch(const ZRep& a, const ZRep& b, const Quiver& Q, const SearchBudget& budget)
        : a_(a), b_(b), Q_(Q), budget_(budget) {
        for (std::size_t v = 0; v < Q.vertices; ++v) {
            na_.push_back(normal_presentation(a.presentations[v]));
            nb_.push_back(normal_presentation(b.presentations[v]));
        }
        for (std::size_t k = 0; k < Q.edges.size(); ++k) {
            const auto& e = Q.edges[k];
            IntMatrix A = na_[e.dst].to * a.maps[k] * na_[e.src].from;
            IntMatrix B = nb_[e.dst].to * b.maps[k] * nb_[e.src].from;
            nb_[e.dst].reduce(A);
            nb_[e.dst].reduce(B);
            phi_.push_back(std::move(A));
            rho_.push_back(std::move(B));
        }
        H_.resize(Q.vertices);
    }

    bool all_finite() const {
        for (const auto& np : na_)
            for (const auto& d : np.moduli)
                if (d == 0) return false;
        return true;
    }

    enum class Outcome { Found, Exhausted, OutOfBudget };

    // Entries of free coordinates range over [-bound, bound].
    Outcome run(long bound) {
        bound_ = bound;
        found_ = false;
        out_of_budget_ = false;
        assign(0);
        if (found_) return Outcome::Found;
        return out_of_budget_ ? Outcome::OutOfBudget : Outcome::Exhausted;
    }

    std::size_t nodes() const { return nodes_; }

    // Witness in the original coordinates of the presentations.
    std::vector<IntMatrix> witness() const {
        std::vector<IntMatrix> f;
        for (std::size_t v = 0; v < Q_.vertices; ++v) f.push_back(nb_[v].from * H_[v] * na_[v].to);
        return f;
    }

private:
    bool stop() const { return found_ || out_of_budget_; }

    void assign(std::size_t v) {
        if (v == Q_.vertices) {
            found_ = true;
            return;
        }
        const auto& dom = na_[v].moduli;
        const auto& cod = nb_[v].moduli;
        IntMatrix H(cod.size(), dom.size());
        columns(v, H, 0);
    }

    // Chooses the image of generator j of vertex v.
    void columns(std::size_t v, IntMatrix& H, std::size_t j) {
        if (stop()) return;
        const auto& dom = na_[v].moduli;
        if (j == dom.size()) {
            if (++nodes_ > budget_.max_nodes) {
                out_of_budget_ = true;
                return;
            }
            if (!bijective(v, H) || !edges_commute(v, H)) return;
            H_[v] = H;
            assign(v + 1);
            return;
        }
        const auto& cod = nb_[v].moduli;
        IntMatrix y(cod.size(), 1);
        elements(v, H, j, y, 0);
    }

    // Enumerates target elements coordinate by coordinate.
    void elements(std::size_t v, IntMatrix& H, std::size_t j, IntMatrix& y, std::size_t i) {
        if (stop()) return;
        const auto& cod = nb_[v].moduli;
        if (i == cod.size()) {
            const Integer want = na_[v].moduli[j];
            if (element_order(cod, y) != want) return;
            for (std::size_t r = 0; r < cod.size(); ++r) H(r, j) = y(r, 0);
            columns(v, H, j + 1);
            return;
        }
        if (cod[i] != 0) {
            for (Integer c = 0; c < cod[i] && !stop(); ++c) {
                y(i, 0) = c;
                elements(v, H, j, y, i + 1);
            }
        } else {
            for (long c = -bound_; c <= bound_ && !stop(); ++c) {
                y(i, 0) = c;
                elements(v, H, j, y, i + 1);
            }
        }
        y(i, 0) = 0;
    }

    bool bijective(std::size_t v, const IntMatrix& H) const {
        const IntMatrix Ra = na_[v].relations(), Rb = nb_[v].relations();
        return is_isomorphism(H, Ra, Rb);
    }

    // Edges among the vertices assigned so far (v included).
    bool edges_commute(std::size_t v, const IntMatrix& Hv) const {
        for (std::size_t k = 0; k < Q_.edges.size(); ++k) {
            const auto& e = Q_.edges[k];
            if (std::max(e.src, e.dst) != v) continue;
            const IntMatrix& Hs = e.src == v ? Hv : H_[e.src];
            const IntMatrix& Hd = e.dst == v ? Hv : H_[e.dst];
            IntMatrix diff = Hd * phi_[k] - rho_[k] * Hs;
            nb_[e.dst].reduce(diff);
            if (!diff.is_zero()) return false;
        }
        return true;
    }

    const ZRep& a_;
    const ZRep& b_;
    const Quiver& Q_;
    SearchBudget budget_;
    std::vector<NormalPresentation> na_, nb_;
    std::vector<IntMatrix> phi_, rho_, H_;
    long bound_ = 1;
    std::size_t nodes_ = 0;
    bool found_ = false;
    bool out_of_budget_ = false;
};

}  // namespace detail

/// Necessary conditions: equal vertex groups and, per edge, equal kernel,
/// image and cokernel groups. Returns the first mismatch.
inline std::optional<Certificate> rep_invariant_mismatch(const ZRep& a, const ZRep& b, const Quiver& Q) {
    for (std::size_t v = 0; v < Q.vertices; ++v) {
        const auto ga = vertex_group(a, v), gb = vertex_group(b, v);
        if (!(ga == gb)) return Certificate{"vertex " + std::to_string(v + 1) + " group", ga.to_string(), gb.to_string()};
    }
    for (std::size_t k = 0; k < Q.edges.size(); ++k) {
        const auto& e = Q.edges[k];
        const auto& Ra_s = a.presentations[e.src];
        const auto& Ra_d = a.presentations[e.dst];
        const auto& Rb_s = b.presentations[e.src];
        const auto& Rb_d = b.presentations[e.dst];
        const std::string tag = "edge " + e.id;
        const auto ka = hom_kernel(a.maps[k], Ra_s, Ra_d), kb = hom_kernel(b.maps[k], Rb_s, Rb_d);
        if (!(ka == kb)) return Certificate{tag + " kernel", ka.to_string(), kb.to_string()};
        const auto ia = hom_image(a.maps[k], Ra_d), ib = hom_image(b.maps[k], Rb_d);
        if (!(ia == ib)) return Certificate{tag + " image", ia.to_string(), ib.to_string()};
        const auto ca = hom_cokernel(a.maps[k], Ra_d), cb = hom_cokernel(b.maps[k], Rb_d);
        if (!(ca == cb)) return Certificate{tag + " cokernel", ca.to_string(), cb.to_string()};
    }
    return std::nullopt;
}

/// Yes: verified isomorphism family f1, f2, ... . No: invariant mismatch, or
/// exhaustive search when every vertex group is finite. Otherwise the free
/// parts are searched with entry bounds 1 .. max_depth and Unknown is returned
/// when nothing is found.
///
/// Torsion above kMaxEnumeratedOrder at some vertex: throws domain_error, or
/// with OverCap::Unknown returns Unknown once the invariants agree.
enum class OverCap { Throw, Unknown };

inline Verdict decide_rep_isomorphism(const ZRep& a, const ZRep& b, const Quiver& Q, const SearchBudget& budget,
                                      OverCap over_cap = OverCap::Throw) {
    validate_rep(a, Q);
    validate_rep(b, Q);
    budget.validate();
    BudgetReport report;
    report.budget = budget;
    if (auto cert = rep_invariant_mismatch(a, b, Q)) return Verdict::no(*cert, report);

    for (std::size_t v = 0; v < Q.vertices; ++v) {
        Integer torsion = 1;
        for (const auto& d : vertex_group(a, v).torsion) torsion *= d;
        if (torsion <= kMaxEnumeratedOrder) continue;
        if (over_cap == OverCap::Unknown) return Verdict::unknown(report);
        throw std::domain_error("rep isomorphism: torsion of vertex " + std::to_string(v + 1) +
                                " exceeds the enumeration cap of " + std::to_string(kMaxEnumeratedOrder));
    }

    detail::IsoSearch search(a, b, Q, budget);
    const bool finite = search.all_finite();
    const long max_bound = finite ? 1 : static_cast<long>(budget.max_depth);
    for (long bound = 1; bound <= max_bound; ++bound) {
        const auto outcome = search.run(bound);
        report.nodes_expanded = search.nodes();
        report.depth_reached = static_cast<std::size_t>(bound);
        if (outcome == detail::IsoSearch::Outcome::Found) {
            auto f = search.witness();
            if (!is_morphism(f, a, b, Q)) throw std::logic_error("rep isomorphism: witness failed verification");
            for (std::size_t v = 0; v < Q.vertices; ++v)
                if (!is_isomorphism(f[v], a.presentations[v], b.presentations[v]))
                    throw std::logic_error("rep isomorphism: witness is not bijective");
            std::vector<std::pair<std::string, IntMatrix>> w;
            for (std::size_t v = 0; v < Q.vertices; ++v) w.emplace_back("f" + std::to_string(v + 1), std::move(f[v]));
            return Verdict::yes(std::move(w), report);
        }
        if (outcome == detail::IsoSearch::Outcome::OutOfBudget) return Verdict::unknown(report);
        if (finite) {
            report.exhausted = true;
            return Verdict::no({"exhaustive-enumeration", std::to_string(search.nodes()) + " candidate families",
                                "none commutes with the edge maps"},
                               report);
        }
    }
    return Verdict::unknown(report);
}

}  // namespace blockeq
