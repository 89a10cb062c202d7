#pragma once

// JSON encodings. Integers travel as decimal strings, rationals as "p/q".
// Poset elements, quiver vertices and K-web node/edge references are 1-based.
// Emission is canonical: parsing an emitted document and emitting it again
// reproduces it byte for byte.

#include "blockeq/kweb.hpp"
#include "blockeq/sft.hpp"

#include <nlohmann/json.hpp>

#include <regex>

namespace blockeq::io {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::size_t count(const Json& j, const std::string& what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw ParseError(what + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

// 1-based index into [0, n).
inline std::size_t index(const Json& j, std::size_t n, const std::string& what) {
    const std::size_t v = count(j, what);
    if (v < 1 || v > n) throw ParseError(what + ": index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
    return v - 1;
}

inline void require_exact_keys(const Json& j, std::initializer_list<const char*> required,
                               std::initializer_list<const char*> optional, const std::string& what) {
    if (!j.is_object()) throw ParseError(what + ": expected an object");
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (auto r : required) known = known || k == r;
        for (auto o : optional) known = known || k == o;
        if (!known) throw ParseError(what + ": unexpected field \"" + k + "\"");
    }
    for (auto r : required)
        if (!j.contains(r)) throw ParseError(what + ": missing field \"" + std::string(r) + "\"");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scalars

inline Integer parse_integer(const Json& j, const std::string& what = "integer") {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    if (!j.is_string()) throw ParseError(what + ": expected a decimal string");
    static const std::regex re("-?(0|[1-9][0-9]*)");
    const auto& s = j.get_ref<const std::string&>();
    if (!std::regex_match(s, re) || s == "-0") throw ParseError(what + ": \"" + s + "\" is not a canonical decimal");
    return Integer(s);
}

inline Json emit_integer(const Integer& v) { return v.get_str(); }

inline Rational parse_rational(const Json& j, const std::string& what = "rational") {
    if (!j.is_string()) return Rational(parse_integer(j, what));
    const auto& s = j.get_ref<const std::string&>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(j, what));
    const Integer p = parse_integer(Json(s.substr(0, slash)), what);
    const Integer q = parse_integer(Json(s.substr(slash + 1)), what);
    if (q <= 1) throw ParseError(what + ": denominator must exceed 1");
    Rational r(p, q);
    r.canonicalize();
    if (r.get_num() != p || r.get_den() != q) throw ParseError(what + ": \"" + s + "\" is not in lowest terms");
    return r;
}

inline Json emit_rational(Rational r) {
    r.canonicalize();
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// ---------------------------------------------------------------------------
// Matrices and groups

template <typename T, typename Parse>
Matrix<T> parse_matrix_with(const Json& j, Parse parse, const std::string& what) {
    detail::require_exact_keys(j, {"rows", "cols", "entries"}, {}, what);
    const std::size_t r = detail::count(j["rows"], what + ".rows");
    const std::size_t c = detail::count(j["cols"], what + ".cols");
    const Json& e = j["entries"];
    if (!e.is_array()) throw ParseError(what + ".entries: expected an array");
    if (e.size() != r * c)
        throw ParseError(what + ": expected " + std::to_string(r * c) + " entries, found " + std::to_string(e.size()));
    Matrix<T> m(r, c);
    for (std::size_t k = 0; k < e.size(); ++k) m.entries()[k] = parse(e[k], what + ".entries");
    return m;
}

inline IntMatrix parse_matrix(const Json& j, const std::string& what = "matrix") {
    return parse_matrix_with<Integer>(j, [](const Json& x, const std::string& w) { return parse_integer(x, w); }, what);
}

inline RatMatrix parse_rational_matrix(const Json& j, const std::string& what = "matrix") {
    return parse_matrix_with<Rational>(j, [](const Json& x, const std::string& w) { return parse_rational(x, w); },
                                       what);
}

inline Json emit_matrix(const IntMatrix& m) {
    Json e = Json::array();
    for (const auto& v : m.entries()) e.push_back(emit_integer(v));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(e)}};
}

inline Json emit_matrix(const RatMatrix& m) {
    Json e = Json::array();
    for (const auto& v : m.entries()) e.push_back(emit_rational(v));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(e)}};
}

/// A column vector: Matrix JSON with one column, or a plain array of integers.
inline IntMatrix parse_vector(const Json& j, const std::string& what = "vector") {
    if (j.is_array()) {
        IntMatrix v(j.size(), 1);
        for (std::size_t k = 0; k < j.size(); ++k) v(k, 0) = parse_integer(j[k], what);
        return v;
    }
    IntMatrix v = parse_matrix(j, what);
    if (v.cols() != 1) throw ParseError(what + ": expected a single column");
    return v;
}

inline Json emit_group(const FgAbelianGroup& g) {
    Json t = Json::array();
    for (const auto& d : g.torsion) t.push_back(emit_integer(d));
    Json out{{"free_rank", g.free_rank}, {"torsion", std::move(t)}};
    if (g.presentation) out["presentation"] = emit_matrix(*g.presentation);
    return out;
}

inline FgAbelianGroup parse_group(const Json& j, const std::string& what = "group") {
    detail::require_exact_keys(j, {"free_rank", "torsion"}, {"presentation"}, what);
    FgAbelianGroup g;
    g.free_rank = detail::count(j["free_rank"], what + ".free_rank");
    if (!j["torsion"].is_array()) throw ParseError(what + ".torsion: expected an array");
    for (const auto& d : j["torsion"]) g.torsion.push_back(parse_integer(d, what + ".torsion"));
    for (std::size_t k = 0; k < g.torsion.size(); ++k) {
        if (g.torsion[k] < 2) throw ParseError(what + ".torsion: factors must be at least 2");
        if (k > 0 && !mpz_divisible_p(g.torsion[k].get_mpz_t(), g.torsion[k - 1].get_mpz_t()))
            throw ParseError(what + ".torsion: factors must form a divisibility chain");
    }
    if (j.contains("presentation")) {
        g.presentation = parse_matrix(j["presentation"], what + ".presentation");
        if (!(cokernel(*g.presentation) == g)) throw ParseError(what + ": presentation does not match the factors");
    }
    return g;
}

inline Json emit_smith(const SmithDecomposition& d) {
    return Json{{"U", emit_matrix(d.U)}, {"S", emit_matrix(d.S)}, {"V", emit_matrix(d.V)}};
}

inline SmithDecomposition parse_smith(const Json& j, const std::string& what = "snf") {
    detail::require_exact_keys(j, {"U", "S", "V"}, {}, what);
    SmithDecomposition d{parse_matrix(j["U"], what + ".U"), parse_matrix(j["S"], what + ".S"),
                         parse_matrix(j["V"], what + ".V")};
    const std::size_t m = d.S.rows(), n = d.S.cols();
    if (d.U.rows() != m || d.U.cols() != m || d.V.rows() != n || d.V.cols() != n)
        throw ParseError(what + ": U, S, V dimensions do not fit");
    if (abs(determinant(d.U)) != 1 || abs(determinant(d.V)) != 1) throw ParseError(what + ": U or V is not unimodular");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (i != k && d.S(i, k) != 0) throw ParseError(what + ".S: not diagonal");
    const std::size_t r = std::min(m, n);
    for (std::size_t i = 0; i < r; ++i) {
        const Integer& a = d.S(i, i);
        if (a < 0) throw ParseError(what + ".S: negative diagonal entry");
        if (i + 1 == r) continue;
        const Integer& b = d.S(i + 1, i + 1);
        if (a == 0 ? b != 0 : b % a != 0) throw ParseError(what + ".S: diagonal is not a divisibility chain");
    }
    return d;
}

inline Json emit_annihilator(const AnnihilatorMatrix& a) {
    return Json{{"M", emit_matrix(a.M)}, {"source_cols", a.source_cols}};
}

// ---------------------------------------------------------------------------
// Posets, shapes, blocked matrices

/// The poset exactly as labeled in the document (not normalized).
inline Poset parse_poset_raw(const Json& j, const std::string& what = "poset") {
    detail::require_exact_keys(j, {"n", "leq"}, {}, what);
    const std::size_t n = detail::count(j["n"], what + ".n");
    if (!j["leq"].is_array()) throw ParseError(what + ".leq: expected an array");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& p : j["leq"]) {
        if (!p.is_array() || p.size() != 2) throw ParseError(what + ".leq: expected pairs [i, j]");
        pairs.emplace_back(detail::index(p[0], n, what + ".leq"), detail::index(p[1], n, what + ".leq"));
    }
    try {
        return Poset(n, pairs);
    } catch (const std::invalid_argument& e) {
        throw ParseError(what + ": " + e.what());
    }
}

/// Strict pairs of the transitive closure, 1-based, lexicographic.
inline Json emit_poset(const Poset& p) {
    Json leq = Json::array();
    for (auto [i, j] : p.strict_pairs()) leq.push_back(Json::array({i + 1, j + 1}));
    return Json{{"n", p.size()}, {"leq", std::move(leq)}};
}

inline BlockShape parse_shape_raw(const Json& j, const std::string& what = "shape") {
    detail::require_exact_keys(j, {"poset", "m", "n"}, {}, what);
    Poset p = parse_poset_raw(j["poset"], what + ".poset");
    auto sizes = [&](const Json& a, const std::string& w) {
        if (!a.is_array()) throw ParseError(w + ": expected an array");
        std::vector<std::size_t> out;
        for (const auto& x : a) out.push_back(detail::count(x, w));
        return out;
    };
    try {
        return BlockShape(std::move(p), sizes(j["m"], what + ".m"), sizes(j["n"], what + ".n"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(what + ": " + e.what());
    }
}

/// Relabels a shape so that i precedes j only when i <= j.
inline BlockShape normalized(const BlockShape& sh) {
    const auto np = normalize(sh.poset());
    std::vector<std::size_t> m, n;
    for (auto o : np.order) {
        m.push_back(sh.row_sizes()[o]);
        n.push_back(sh.col_sizes()[o]);
    }
    return BlockShape(np.poset, std::move(m), std::move(n));
}

inline BlockShape parse_shape(const Json& j, const std::string& what = "shape") {
    return normalized(parse_shape_raw(j, what));
}

inline Json emit_shape(const BlockShape& sh) {
    return Json{{"poset", emit_poset(sh.poset())}, {"m", sh.row_sizes()}, {"n", sh.col_sizes()}};
}

/// Blocked matrix document, or a plain matrix read as one block over a
/// one-element poset. The result is relabeled to a normalized poset.
inline BlockedMatrix parse_blocked(const Json& j, const std::string& what = "blocked") {
    if (j.is_object() && j.contains("rows")) {
        IntMatrix m = parse_matrix(j, what);
        if (m.rows() == 0 || m.cols() == 0) throw ParseError(what + ": a single block must be nonempty");
        BlockShape sh(Poset::antichain(1), {m.rows()}, {m.cols()});
        return {std::move(sh), std::move(m)};
    }
    detail::require_exact_keys(j, {"shape", "matrix"}, {}, what);
    BlockShape sh = parse_shape_raw(j["shape"], what + ".shape");
    IntMatrix m = parse_matrix(j["matrix"], what + ".matrix");
    if (m.rows() != sh.total_rows() || m.cols() != sh.total_cols())
        throw ParseError(what + ": matrix dimensions do not match the shape");
    if (!validate_membership(m, sh)) throw ParseError(what + ": nonzero block outside the poset order");
    BlockedMatrix raw(sh, std::move(m));
    if (sh.poset().is_normalized()) return raw;
    const auto np = normalize(sh.poset());
    return permute_blocks(raw, np.order, np.poset);
}

inline Json emit_blocked(const BlockedMatrix& b) {
    return Json{{"shape", emit_shape(b.shape())}, {"matrix", emit_matrix(b.matrix())}};
}

// ---------------------------------------------------------------------------
// Verdicts

inline Json emit_budget(const BudgetReport& r) {
    return Json{{"nodes_expanded", r.nodes_expanded}, {"nodes_stored", r.nodes_stored},
                {"depth_reached", r.depth_reached},   {"exhausted", r.exhausted},
                {"max_depth", r.budget.max_depth},    {"max_nodes", r.budget.max_nodes},
                {"seed", r.budget.seed}};
}

inline BudgetReport parse_budget(const Json& j, const std::string& what = "budget") {
    detail::require_exact_keys(
        j, {"nodes_expanded", "nodes_stored", "depth_reached", "exhausted", "max_depth", "max_nodes", "seed"}, {}, what);
    BudgetReport r;
    r.nodes_expanded = detail::count(j["nodes_expanded"], what);
    r.nodes_stored = detail::count(j["nodes_stored"], what);
    r.depth_reached = detail::count(j["depth_reached"], what);
    if (!j["exhausted"].is_boolean()) throw ParseError(what + ".exhausted: expected a boolean");
    r.exhausted = j["exhausted"].get<bool>();
    r.budget.max_depth = detail::count(j["max_depth"], what);
    r.budget.max_nodes = detail::count(j["max_nodes"], what);
    r.budget.seed = detail::count(j["seed"], what);
    return r;
}

inline Json emit_verdict(const Verdict& v) {
    Json out{{"status", to_string(v.status)}};
    if (v.status == Status::Yes) {
        Json w = Json::object();
        for (const auto& [name, m] : v.witness) w[name] = emit_matrix(m);
        out["witness"] = std::move(w);
    }
    if (v.certificate)
        out["certificate"] = Json{{"name", v.certificate->name}, {"left", v.certificate->left},
                                  {"right", v.certificate->right}};
    out["budget"] = emit_budget(v.budget);
    return out;
}

inline Verdict parse_verdict(const Json& j, const std::string& what = "verdict") {
    detail::require_exact_keys(j, {"status", "budget"}, {"witness", "certificate", "flow_invariants"}, what);
    Verdict v;
    const Json& s = j["status"];
    if (!s.is_string()) throw ParseError(what + ".status: expected a string");
    const auto& st = s.get_ref<const std::string&>();
    if (st == "yes")
        v.status = Status::Yes;
    else if (st == "no")
        v.status = Status::No;
    else if (st == "unknown")
        v.status = Status::Unknown;
    else
        throw ParseError(what + ".status: unknown value \"" + st + "\"");
    if (j.contains("witness")) {
        if (!j["witness"].is_object()) throw ParseError(what + ".witness: expected an object");
        for (const auto& [name, m] : j["witness"].items()) v.witness.emplace_back(name, parse_matrix(m, what + ".witness"));
    }
    if (j.contains("certificate")) {
        const Json& c = j["certificate"];
        detail::require_exact_keys(c, {"name", "left", "right"}, {}, what + ".certificate");
        for (const char* k : {"name", "left", "right"})
            if (!c[k].is_string()) throw ParseError(what + ".certificate: fields must be strings");
        v.certificate = Certificate{c["name"].get<std::string>(), c["left"].get<std::string>(),
                                    c["right"].get<std::string>()};
    }
    if (v.status == Status::Yes && !j.contains("witness")) throw ParseError(what + ": yes without a witness");
    if (v.status == Status::No && !v.certificate) throw ParseError(what + ": no without a certificate");
    v.budget = parse_budget(j["budget"], what + ".budget");
    return v;
}

inline Json emit_flow_invariant(const FlowInvariant& f) {
    return Json{{"bowen_franks", emit_group(f.bowen_franks)}, {"parry_sullivan", emit_integer(f.parry_sullivan)}};
}

inline FlowInvariant parse_flow_invariant(const Json& j, const std::string& what = "flow invariant") {
    detail::require_exact_keys(j, {"bowen_franks", "parry_sullivan"}, {}, what);
    return {parse_group(j["bowen_franks"], what + ".bowen_franks"),
            parse_integer(j["parry_sullivan"], what + ".parry_sullivan")};
}

inline Json emit_flow_pair(const FlowInvariant& left, const FlowInvariant& right) {
    return Json{{"left", emit_flow_invariant(left)}, {"right", emit_flow_invariant(right)}};
}

// ---------------------------------------------------------------------------
// Quivers, representations, webs

inline Json emit_quiver(const Quiver& q) {
    Json edges = Json::array();
    for (const auto& e : q.edges) edges.push_back(Json{{"id", e.id}, {"src", e.src + 1}, {"dst", e.dst + 1}});
    return Json{{"vertices", q.vertices}, {"edges", std::move(edges)}};
}

inline Quiver parse_quiver(const Json& j, const std::string& what = "quiver") {
    detail::require_exact_keys(j, {"vertices", "edges"}, {}, what);
    Quiver q;
    q.vertices = detail::count(j["vertices"], what + ".vertices");
    if (!j["edges"].is_array()) throw ParseError(what + ".edges: expected an array");
    for (const auto& e : j["edges"]) {
        detail::require_exact_keys(e, {"id", "src", "dst"}, {}, what + ".edges");
        std::string id;
        if (e["id"].is_string())
            id = e["id"].get<std::string>();
        else if (e["id"].is_number_integer())
            id = std::to_string(e["id"].get<std::int64_t>());
        else
            throw ParseError(what + ".edges: id must be a string or an integer");
        for (const auto& other : q.edges)
            if (other.id == id) throw ParseError(what + ".edges: duplicate id \"" + id + "\"");
        q.edges.push_back({id, detail::index(e["src"], q.vertices, what + ".edges.src"),
                           detail::index(e["dst"], q.vertices, what + ".edges.dst")});
    }
    return q;
}

struct RepDocument {
    Quiver quiver;
    ZRep rep;
};

inline Json emit_rep(const Quiver& q, const ZRep& rep) {
    Json pres = Json::array(), maps = Json::array();
    for (const auto& p : rep.presentations) pres.push_back(emit_matrix(p));
    for (const auto& m : rep.maps) maps.push_back(emit_matrix(m));
    return Json{{"quiver", emit_quiver(q)}, {"presentations", std::move(pres)}, {"maps", std::move(maps)}};
}

inline RepDocument parse_rep(const Json& j, const std::string& what = "rep") {
    detail::require_exact_keys(j, {"quiver", "presentations", "maps"}, {}, what);
    RepDocument d;
    d.quiver = parse_quiver(j["quiver"], what + ".quiver");
    if (!j["presentations"].is_array() || !j["maps"].is_array())
        throw ParseError(what + ": presentations and maps must be arrays");
    for (const auto& p : j["presentations"]) d.rep.presentations.push_back(parse_matrix(p, what + ".presentations"));
    for (const auto& m : j["maps"]) d.rep.maps.push_back(parse_matrix(m, what + ".maps"));
    try {
        validate_rep(d.rep, d.quiver);
    } catch (const std::invalid_argument& e) {
        throw ParseError(what + ": " + e.what());
    }
    return d;
}

namespace detail {

inline Json emit_set(const std::vector<std::size_t>& s) {
    Json a = Json::array();
    for (auto e : s) a.push_back(e + 1);
    return a;
}

inline std::vector<std::size_t> parse_set(const Json& j, std::size_t n, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected an array");
    std::vector<std::size_t> s;
    for (const auto& e : j) s.push_back(index(e, n, what));
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ParseError(what + ": elements must be strictly increasing");
    return s;
}

}  // namespace detail

inline Json emit_kweb(const KWeb& w) {
    Json nodes = Json::array(), splits = Json::array();
    for (const auto& n : w.nodes) nodes.push_back(Json{{"kind", to_string(n.kind)}, {"set", detail::emit_set(n.set)}});
    for (const auto& sp : w.splittings) {
        Json ni = Json::array(), ei = Json::array();
        for (auto k : sp.nodes) ni.push_back(k + 1);
        for (auto k : sp.edges) ei.push_back(k + 1);
        splits.push_back(Json{{"set", detail::emit_set(sp.set)},
                              {"lower", detail::emit_set(sp.lower)},
                              {"upper", detail::emit_set(sp.upper)},
                              {"nodes", std::move(ni)},
                              {"edges", std::move(ei)}});
    }
    return Json{{"shape", emit_shape(w.shape)},
                {"nodes", std::move(nodes)},
                {"splittings", std::move(splits)},
                {"rep", emit_rep(w.quiver, w.rep)}};
}

inline KWeb parse_kweb(const Json& j, const std::string& what = "kweb") {
    detail::require_exact_keys(j, {"shape", "nodes", "splittings", "rep"}, {}, what);
    KWeb w;
    w.shape = parse_shape(j["shape"], what + ".shape");
    const std::size_t N = w.shape.blocks();
    auto rd = parse_rep(j["rep"], what + ".rep");
    w.quiver = std::move(rd.quiver);
    w.rep = std::move(rd.rep);
    if (!j["nodes"].is_array() || j["nodes"].size() != w.quiver.vertices)
        throw ParseError(what + ".nodes: expected one label per quiver vertex");
    for (const auto& n : j["nodes"]) {
        detail::require_exact_keys(n, {"kind", "set"}, {}, what + ".nodes");
        KWebNode node;
        if (n["kind"] == "ker")
            node.kind = KWebNode::Kind::Ker;
        else if (n["kind"] == "cok")
            node.kind = KWebNode::Kind::Cok;
        else
            throw ParseError(what + ".nodes: kind must be \"ker\" or \"cok\"");
        node.set = detail::parse_set(n["set"], N, what + ".nodes.set");
        w.nodes.push_back(std::move(node));
    }
    if (!j["splittings"].is_array()) throw ParseError(what + ".splittings: expected an array");
    for (const auto& s : j["splittings"]) {
        detail::require_exact_keys(s, {"set", "lower", "upper", "nodes", "edges"}, {}, what + ".splittings");
        KWebSplitting sp;
        sp.set = detail::parse_set(s["set"], N, what + ".splittings.set");
        sp.lower = detail::parse_set(s["lower"], N, what + ".splittings.lower");
        sp.upper = detail::parse_set(s["upper"], N, what + ".splittings.upper");
        if (!s["nodes"].is_array() || s["nodes"].size() != 6 || !s["edges"].is_array() || s["edges"].size() != 5)
            throw ParseError(what + ".splittings: expected 6 nodes and 5 edges");
        for (std::size_t k = 0; k < 6; ++k) sp.nodes[k] = detail::index(s["nodes"][k], w.quiver.vertices, what);
        for (std::size_t k = 0; k < 5; ++k) sp.edges[k] = detail::index(s["edges"][k], w.quiver.edges.size(), what);
        w.splittings.push_back(std::move(sp));
    }
    if (!w.is_exact()) throw ParseError(what + ": some six-term sequence is not exact");
    return w;
}

// ---------------------------------------------------------------------------
// Documents

inline Json parse_text(const std::string& text, const std::string& what = "input") {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Schema names accepted by the validate subcommand.
inline const std::vector<std::string>& schema_names() {
    static const std::vector<std::string> names{"matrix", "poset", "shape",  "blocked", "group", "snf",
                                                "verdict", "quiver", "rep", "kweb",    "vector"};
    return names;
}

/// Guesses the schema of a document from its top-level fields.
inline std::string detect_schema(const Json& j) {
    if (j.is_array()) return "vector";
    if (!j.is_object()) throw ParseError("document: expected an object");
    if (j.contains("rows")) return "matrix";
    if (j.contains("leq")) return "poset";
    if (j.contains("status")) return "verdict";
    if (j.contains("splittings")) return "kweb";
    if (j.contains("presentations")) return "rep";
    if (j.contains("vertices")) return "quiver";
    if (j.contains("free_rank")) return "group";
    if (j.contains("S")) return "snf";
    if (j.contains("matrix")) return "blocked";
    if (j.contains("poset")) return "shape";
    throw ParseError("document: unrecognized schema");
}

/// Parses under `schema` and returns the canonical re-emission.
inline Json canonical(const Json& j, const std::string& schema) {
    if (schema == "matrix") return emit_matrix(parse_matrix(j));
    if (schema == "vector") return emit_matrix(parse_vector(j));
    if (schema == "poset") return emit_poset(normalize(parse_poset_raw(j)).poset);
    if (schema == "shape") return emit_shape(parse_shape(j));
    if (schema == "blocked") return emit_blocked(parse_blocked(j));
    if (schema == "group") return emit_group(parse_group(j));
    if (schema == "snf") return emit_smith(parse_smith(j));
    if (schema == "verdict") {
        Json out = emit_verdict(parse_verdict(j));
        if (j.contains("flow_invariants")) {
            const Json& f = j["flow_invariants"];
            detail::require_exact_keys(f, {"left", "right"}, {}, "verdict.flow_invariants");
            out["flow_invariants"] =
                emit_flow_pair(parse_flow_invariant(f["left"]), parse_flow_invariant(f["right"]));
        }
        return out;
    }
    if (schema == "quiver") return emit_quiver(parse_quiver(j));
    if (schema == "rep") {
        auto d = parse_rep(j);
        return emit_rep(d.quiver, d.rep);
    }
    if (schema == "kweb") return emit_kweb(parse_kweb(j));
    throw ParseError("unknown schema \"" + schema + "\"");
}

}  // namespace blockeq::io
