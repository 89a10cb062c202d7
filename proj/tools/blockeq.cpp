// blockeq: command-line front end. Every subcommand reads JSON documents and
// writes one JSON document. Exit codes: 0 yes/success, 1 no, 2 unknown,
// 64 usage error, 65 malformed input.

#include "blockeq/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using blockeq::io::Json;
using blockeq::io::ParseError;

constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitSoftware = 70;

struct Options {
    std::vector<std::string> inputs;
    std::string output;
    std::string format = "json";
    std::size_t max_depth = 8;
    std::size_t max_nodes = 1'000'000;
    std::uint64_t seed = 0;
    std::string group = "gl";
    std::string side = "uav";
    std::string x_path, y_path;
    std::string schema;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return blockeq::io::parse_text(ss.str(), path);
}

blockeq::SearchBudget budget(const Options& o) {
    if (o.max_depth == 0 || o.max_nodes == 0) throw UsageError("--max-depth and --max-nodes must be positive");
    return {o.max_depth, o.max_nodes, o.seed};
}

blockeq::Group parse_group_flag(const std::string& g) {
    if (g == "gl") return blockeq::Group::GL;
    if (g == "sl") return blockeq::Group::SL;
    if (g == "unit") return blockeq::Group::UnitRestricted;
    throw UsageError("--group must be gl, sl or unit");
}

int status_exit(blockeq::Status s) {
    switch (s) {
        case blockeq::Status::Yes: return 0;
        case blockeq::Status::No: return kExitNo;
        case blockeq::Status::Unknown: return kExitUnknown;
    }
    return kExitUnknown;
}

// Rethrows library argument errors as input errors.
template <typename F>
auto on_input(const std::string& what, F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw ParseError(what + ": " + e.what());
    } catch (const std::domain_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

struct Result {
    Json doc;
    int code = 0;
};

Result run(const std::string& cmd, const Options& o) {
    namespace io = blockeq::io;
    const auto& in = o.inputs;

    if (cmd == "snf") {
        const auto A = io::parse_matrix(read_json(in[0]), in[0]);
        return {io::emit_smith(blockeq::smith_normal_form(A))};
    }
    if (cmd == "cokernel") {
        const auto A = io::parse_matrix(read_json(in[0]), in[0]);
        return {io::emit_group(blockeq::cokernel(A))};
    }
    if (cmd == "bf") {
        const auto A = io::parse_matrix(read_json(in[0]), in[0]);
        return {on_input(in[0], [&] { return io::emit_group(blockeq::bowen_franks(A)); })};
    }
    if (cmd == "ps") {
        const auto A = io::parse_matrix(read_json(in[0]), in[0]);
        return {Json{{"parry_sullivan", on_input(in[0], [&] { return io::emit_integer(blockeq::parry_sullivan(A)); })}}};
    }
    if (cmd == "flow-eq") {
        const auto A = io::parse_matrix(read_json(in[0]), in[0]);
        const auto B = io::parse_matrix(read_json(in[1]), in[1]);
        const auto b = budget(o);
        const auto v = on_input("flow-eq", [&] { return blockeq::decide_flow_equivalence(A, B, b); });
        Json doc = io::emit_verdict(v);
        if (v.status == blockeq::Status::Yes) {
            const auto ca = blockeq::flow_core(A), cb = blockeq::flow_core(B);
            if (ca.rows() > 0 && blockeq::is_irreducible(ca) && blockeq::is_irreducible(cb))
                doc["flow_invariants"] = io::emit_flow_pair(blockeq::flow_invariant(A), blockeq::flow_invariant(B));
        }
        return {doc, status_exit(v.status)};
    }
    if (cmd == "blocked-eq") {
        const auto A = io::parse_blocked(read_json(in[0]), in[0]);
        const auto B = io::parse_blocked(read_json(in[1]), in[1]);
        const auto g = parse_group_flag(o.group);
        if (o.side != "uav" && o.side != "uavinv") throw UsageError("--side must be uav or uavinv");
        const auto side = o.side == "uav" ? blockeq::Side::UAV : blockeq::Side::UAVinv;
        const auto b = budget(o);
        const auto v = on_input("blocked-eq", [&] { return blockeq::decide_blocked_equivalence(A, B, g, side, b); });
        return {io::emit_verdict(v), status_exit(v.status)};
    }
    if (cmd == "unit-eq") {
        const auto A = io::parse_blocked(read_json(in[0]), in[0]);
        const auto B = io::parse_blocked(read_json(in[1]), in[1]);
        const auto x = io::parse_vector(read_json(o.x_path), o.x_path);
        const auto y = io::parse_vector(read_json(o.y_path), o.y_path);
        const auto g = parse_group_flag(o.group);
        const auto b = budget(o);
        const auto v = on_input("unit-eq", [&] { return blockeq::decide_with_unit(A, B, x, y, g, b); });
        return {io::emit_verdict(v), status_exit(v.status)};
    }
    if (cmd == "kweb") {
        const auto A = io::parse_blocked(read_json(in[0]), in[0]);
        const auto wa = on_input(in[0], [&] { return blockeq::build_kweb(A); });
        if (in.size() == 1) return {io::emit_kweb(wa)};
        const auto B = io::parse_blocked(read_json(in[1]), in[1]);
        const auto wb = on_input(in[1], [&] { return blockeq::build_kweb(B); });
        const auto b = budget(o);
        const auto v = on_input("kweb", [&] { return blockeq::decide_kweb_isomorphism(wa, wb, b); });
        return {io::emit_verdict(v), status_exit(v.status)};
    }
    if (cmd == "rep-iso") {
        const auto ra = io::parse_rep(read_json(in[0]), in[0]);
        const auto rb = io::parse_rep(read_json(in[1]), in[1]);
        if (!(ra.quiver == rb.quiver)) throw ParseError("rep-iso: the two representations use different quivers");
        const auto b = budget(o);
        const auto v = on_input("rep-iso", [&] { return blockeq::decide_rep_isomorphism(ra.rep, rb.rep, ra.quiver, b); });
        return {io::emit_verdict(v), status_exit(v.status)};
    }
    if (cmd == "validate") {
        const Json doc = read_json(in[0]);
        std::string schema = o.schema.empty() ? io::detect_schema(doc) : o.schema;
        const auto& names = io::schema_names();
        if (std::find(names.begin(), names.end(), schema) == names.end())
            throw UsageError("--schema must be one of the documented schema names");
        on_input(in[0], [&] { return io::canonical(doc, schema); });
        return {Json{{"valid", true}, {"schema", schema}}};
    }
    throw UsageError("unknown subcommand " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact decision procedures for blocked integer matrices, flow equivalence and quiver representations"};
    app.require_subcommand(1);
    Options o;

    struct Spec {
        const char* name;
        const char* help;
        std::size_t min_inputs, max_inputs;
        bool search;
    };
    const Spec specs[] = {
        {"snf", "Smith normal form U A V = S of a matrix", 1, 1, false},
        {"cokernel", "cokernel Z^rows / im A as invariant factors", 1, 1, false},
        {"bf", "Bowen-Franks group cok(I - A) of an SFT matrix", 1, 1, false},
        {"ps", "Parry-Sullivan number det(I - A) of an SFT matrix", 1, 1, false},
        {"flow-eq", "decide flow equivalence of two SFT matrices", 2, 2, true},
        {"blocked-eq", "decide blocked equivalence of two blocked matrices", 2, 2, true},
        {"unit-eq", "blocked equivalence with the unit-vector condition", 2, 2, true},
        {"kweb", "build the K-web of a blocked matrix, or compare two", 1, 2, true},
        {"rep-iso", "decide isomorphism of two quiver representations", 2, 2, true},
        {"validate", "check a document against its schema", 1, 1, false},
    };
    for (const auto& s : specs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        auto* opt = sub->add_option("inputs", o.inputs, "input JSON files")->required();
        opt->expected(static_cast<int>(s.min_inputs), static_cast<int>(s.max_inputs));
        sub->add_option("-o,--output", o.output, "write the result here instead of stdout");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json"}));
        if (s.search) {
            sub->add_option("--max-depth", o.max_depth, "search depth limit")->capture_default_str();
            sub->add_option("--max-nodes", o.max_nodes, "search node limit")->capture_default_str();
            sub->add_option("--seed", o.seed, "recorded in the budget report")->capture_default_str();
        }
        if (std::string(s.name) == "blocked-eq" || std::string(s.name) == "unit-eq")
            sub->add_option("--group", o.group, "gl, sl or unit")->capture_default_str();
        if (std::string(s.name) == "blocked-eq")
            sub->add_option("--side", o.side, "uav (U A V = B) or uavinv (U A V^-1 = B)")->capture_default_str();
        if (std::string(s.name) == "unit-eq") {
            sub->add_option("--x", o.x_path, "vector x (JSON)")->required();
            sub->add_option("--y", o.y_path, "vector y (JSON)")->required();
        }
        if (std::string(s.name) == "validate")
            sub->add_option("--schema", o.schema, "schema name; detected when omitted");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        Result r = run(cmd, o);
        const std::string text = blockeq::io::dump(r.doc);
        if (o.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(o.output);
            if (!out) throw UsageError("cannot write " + o.output);
            out << text;
        }
        return r.code;
    } catch (const UsageError& e) {
        std::cerr << "blockeq: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "blockeq: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "blockeq: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "blockeq: internal error: " << e.what() << "\n";
        return kExitSoftware;
    }
}
