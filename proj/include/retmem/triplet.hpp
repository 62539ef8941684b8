#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "retmem/errors.hpp"

namespace retmem {

// One stored fact <first argument, relation, second argument> plus its
// insertion sequence number.
struct Triplet {
    std::string t1;
    std::string t2;
    std::string t3;
    std::uint64_t seq = 0;

    bool operator==(const Triplet&) const = default;
};

// A partial triplet: one or two slots filled.
struct TripletQuery {
    std::optional<std::string> q1;
    std::optional<std::string> q2;
    std::optional<std::string> q3;

    int present_count() const {
        return static_cast<int>(q1.has_value()) + static_cast<int>(q2.has_value()) +
               static_cast<int>(q3.has_value());
    }

    void validate() const {
        int n = present_count();
        if (n < 1 || n > 2)
            throw Error(ErrorCode::InvalidQueryShape,
                        "query must fill one or two slots, got " + std::to_string(n));
    }
};

// slot is the 1-based column of the substituted term
struct Substitution {
    int slot = 0;
    std::string original;
    std::string substituted;
    double cosine = 0.0;

    bool operator==(const Substitution&) const = default;
};

struct QueryResult {
    std::vector<Triplet> matches;  // seq order
    std::vector<Substitution> substitutions;

    bool operator==(const QueryResult&) const = default;
};

enum class ConflictPolicy {
    AppendAll,            // duplicates are idempotent, conflicting facts coexist
    SupersedeByArg1Rel,   // a new (t1, t2, *) replaces any stored (t1, t2, *)
};

struct MemoryConfig {
    ConflictPolicy conflict_policy = ConflictPolicy::AppendAll;
    double fuzzy_threshold = 0.7;
};

}  // namespace retmem
