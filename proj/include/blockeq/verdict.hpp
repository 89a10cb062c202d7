#pragma once

#include "blockeq/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blockeq {

enum class Status { Yes, No, Unknown };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::Yes: return "yes";
        case Status::No: return "no";
        case Status::Unknown: return "unknown";
    }
    return "unknown";
}

/// Resource limits for the semi-decision procedures.
struct SearchBudget {
    std::size_t max_depth = 8;
    std::size_t max_nodes = 1'000'000;
    std::uint64_t seed = 0;

    void validate() const {
        if (max_depth == 0 || max_nodes == 0)
            throw std::invalid_argument("budget: max_depth and max_nodes must be positive");
    }
};

/// A named invariant that takes different values on the two inputs.
struct Certificate {
    std::string name;
    std::string left;
    std::string right;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct BudgetReport {
    std::size_t nodes_expanded = 0;
    std::size_t nodes_stored = 0;
    std::size_t depth_reached = 0;
    bool exhausted = false;  // some search orbit was enumerated completely
    SearchBudget budget;

    friend bool operator==(const BudgetReport& a, const BudgetReport& b) {
        return a.nodes_expanded == b.nodes_expanded && a.nodes_stored == b.nodes_stored &&
               a.depth_reached == b.depth_reached && a.exhausted == b.exhausted &&
               a.budget.max_depth == b.budget.max_depth && a.budget.max_nodes == b.budget.max_nodes &&
               a.budget.seed == b.budget.seed;
    }
};

/// Yes (verified witness) | No (certificate) | Unknown (budget report).
struct Verdict {
    Status status = Status::Unknown;
    std::vector<std::pair<std::string, IntMatrix>> witness;  // e.g. {"U", ...}, {"V", ...}
    std::optional<Certificate> certificate;
    BudgetReport budget;

    static Verdict yes(std::vector<std::pair<std::string, IntMatrix>> w, BudgetReport r = {}) {
        return {Status::Yes, std::move(w), std::nullopt, r};
    }
    static Verdict no(Certificate c, BudgetReport r = {}) { return {Status::No, {}, std::move(c), r}; }
    static Verdict unknown(BudgetReport r) { return {Status::Unknown, {}, std::nullopt, r}; }

    const IntMatrix* witness_matrix(const std::string& name) const {
        for (const auto& [k, m] : witness)
            if (k == name) return &m;
        return nullptr;
    }

    friend bool operator==(const Verdict& a, const Verdict& b) {
        return a.status == b.status && a.witness == b.witness && a.certificate == b.certificate &&
               a.budget == b.budget;
    }
};

}  // namespace blockeq
