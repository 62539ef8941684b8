#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "retmem/protocol.hpp"
#include "retmem/triplet.hpp"

namespace retmem {

// The closed relation set of the synthetic task.
enum class Relation { Employment, Manager, Investor, Founder, Customer };

inline constexpr Relation kAllRelations[] = {Relation::Employment, Relation::Manager,
                                             Relation::Investor, Relation::Founder,
                                             Relation::Customer};

// Canonical surface forms for one relation. `key` is what gets stored in the
// memory's second column; the phrase forms appear in statements and answers
// ("X is employed by BMW.", "A and B are investors in Siemens."); the noun
// forms appear in bare-relation questions and answers ("Who are the
// investors?", "A is an investor.").
struct RelationForms {
    Relation relation;
    std::string_view key;
    std::string_view phrase_singular;
    std::string_view phrase_plural;
    std::string_view noun_singular;  // with article
    std::string_view noun_plural;
};

const RelationForms& relation_forms(Relation relation);
std::optional<Relation> relation_from_key(std::string_view key);

// The six query shapes of the synthetic task.
enum class QueryType { Per, PerOrg, PerRel, Org, Rel, RelOrg };

inline constexpr QueryType kAllQueryTypes[] = {QueryType::Per,  QueryType::PerOrg,
                                               QueryType::PerRel, QueryType::Org,
                                               QueryType::Rel,  QueryType::RelOrg};

std::string_view query_type_name(QueryType type);                      // "per", "per_org", ...
std::optional<QueryType> query_type_from_name(std::string_view name);

// The terms a question binds. Only the slots the type requires are set.
struct QuestionBinding {
    std::optional<std::string> per;
    std::optional<Relation> rel;
    std::optional<std::string> org;
};

struct ParsedStatement {
    std::vector<std::string> persons;
    Relation relation;
    std::string org;
};

struct ParsedQuestion {
    QueryType type;
    QuestionBinding binding;
};

struct Unrecognized {};

using ParsedUtterance = std::variant<ParsedStatement, ParsedQuestion, Unrecognized>;

// Matches the statement template and the six question templates; anything
// else is Unrecognized.
ParsedUtterance parse_utterance(std::string_view text);

// "A", "A and B", "A, B, and C"
std::string join_names(std::span<const std::string> names);
std::vector<std::string> split_names(std::string_view list);

std::string render_statement(std::span<const std::string> persons, Relation relation,
                             std::string_view org);
std::string render_question(QueryType type, const QuestionBinding& binding);

// The memory read call a question compiles to.
protocol::ReadCall read_call_for(QueryType type, const QuestionBinding& binding);

// One sentence covering the matched triplets; the fixed no-information
// sentence when there are none.
std::string render_answer(QueryType type, std::span<const Triplet> matches);

inline constexpr std::string_view kAckSentence = "Okay, I will remember that.";
inline constexpr std::string_view kNoInfoSentence = "I have no stored information about that.";
inline constexpr std::string_view kUnrecognizedSentence = "I cannot process this input.";

}  // namespace retmem
