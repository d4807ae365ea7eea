#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "text.hpp"

namespace normforge {

enum class Modality { Obligation, Prohibition, Permission };

// Surface keyword inside "It is ... that".
inline const char* modality_keyword(Modality m) {
    switch (m) {
        case Modality::Obligation: return "obligatory";
        case Modality::Prohibition: return "prohibited";
        case Modality::Permission: return "permitted";
    }
    return "";
}

inline const char* modality_name(Modality m) {
    switch (m) {
        case Modality::Obligation: return "obligation";
        case Modality::Prohibition: return "prohibition";
        case Modality::Permission: return "permission";
    }
    return "";
}

inline std::optional<Modality> modality_from_keyword(std::string_view kw) {
    if (kw == "obligatory") return Modality::Obligation;
    if (kw == "prohibited") return Modality::Prohibition;
    if (kw == "permitted") return Modality::Permission;
    return std::nullopt;
}

inline std::optional<Modality> modality_from_name(std::string_view n) {
    if (n == "obligation") return Modality::Obligation;
    if (n == "prohibition") return Modality::Prohibition;
    if (n == "permission") return Modality::Permission;
    return std::nullopt;
}

class MalformedLexeme : public Error {
public:
    explicit MalformedLexeme(std::string_view lexeme)
        : Error("malformed lexeme: '" + std::string(lexeme) + "'") {}
};

// Subject–verb–object triple over snake_case lexemes. The surface article
// "the" is not stored.
struct Clause {
    std::string subject;
    std::string verb;
    std::string object;

    auto operator<=>(const Clause&) const = default;
};

inline Clause make_clause(std::string_view subject, std::string_view verb,
                          std::string_view object) {
    for (auto part : {subject, verb, object}) {
        if (!is_lexeme(part)) throw MalformedLexeme(part);
    }
    return Clause{std::string(subject), std::string(verb), std::string(object)};
}

// Condition tree: ATOM(Clause) | AND(children) | OR(children), AND/OR with
// at least two children.
struct Condition {
    enum class Kind { Atom, And, Or };

    Kind kind = Kind::Atom;
    Clause atom;                      // Kind::Atom only
    std::vector<Condition> children;  // Kind::And / Kind::Or only

    bool operator==(const Condition&) const = default;
};

inline Condition make_atom(Clause c) {
    Condition cond;
    cond.kind = Condition::Kind::Atom;
    cond.atom = std::move(c);
    return cond;
}

inline Condition make_connective(Condition::Kind kind, std::vector<Condition> children) {
    if (kind == Condition::Kind::Atom)
        throw Error("make_connective: kind must be And or Or");
    if (children.size() < 2)
        throw Error("and/or conditions need at least two children");
    Condition cond;
    cond.kind = kind;
    cond.children = std::move(children);
    return cond;
}

inline Condition make_and(std::vector<Condition> children) {
    return make_connective(Condition::Kind::And, std::move(children));
}

inline Condition make_or(std::vector<Condition> children) {
    return make_connective(Condition::Kind::Or, std::move(children));
}

// Body evaluation over a ground fact set. Conditions are negation-free.
inline bool evaluate(const Condition& c, const std::set<Clause>& facts) {
    switch (c.kind) {
        case Condition::Kind::Atom:
            return facts.count(c.atom) > 0;
        case Condition::Kind::And:
            return std::all_of(c.children.begin(), c.children.end(),
                               [&](const Condition& ch) { return evaluate(ch, facts); });
        case Condition::Kind::Or:
            return std::any_of(c.children.begin(), c.children.end(),
                               [&](const Condition& ch) { return evaluate(ch, facts); });
    }
    return false;
}

// Facts that witness a true condition: every satisfied atom in the tree.
inline void collect_matched_facts(const Condition& c, const std::set<Clause>& facts,
                                  std::set<Clause>& out) {
    switch (c.kind) {
        case Condition::Kind::Atom:
            if (facts.count(c.atom)) out.insert(c.atom);
            break;
        case Condition::Kind::And:
        case Condition::Kind::Or:
            for (const auto& ch : c.children) collect_matched_facts(ch, facts, out);
            break;
    }
}

// Closed time window; absent bound = unbounded. Bounds are inclusive.
struct TimeInterval {
    std::optional<Instant> start;
    std::optional<Instant> end;

    bool contains(Instant t) const {
        if (start && t < *start) return false;
        if (end && *end < t) return false;
        return true;
    }

    auto operator<=>(const TimeInterval&) const = default;
};

inline TimeInterval make_interval(std::optional<Instant> start, std::optional<Instant> end) {
    if (start && end && *end < *start) throw Error("time interval: start must be <= end");
    return TimeInterval{start, end};
}

// The pragmatics envelope attached to a rule: sources, references, authority,
// jurisdictions, associations, time window. Empty jurisdictions = applies
// everywhere.
struct RulePragmatics {
    std::vector<std::string> sources;
    std::vector<std::string> references;
    std::optional<std::string> authority;
    std::vector<std::string> jurisdictions;  // sorted, unique, lowercase
    std::vector<std::string> associations;
    std::optional<TimeInterval> time;

    auto operator<=>(const RulePragmatics&) const = default;
};

inline void normalize_jurisdictions(RulePragmatics& p) {
    for (auto& j : p.jurisdictions) j = to_lower_ascii(j);
    std::sort(p.jurisdictions.begin(), p.jurisdictions.end());
    p.jurisdictions.erase(std::unique(p.jurisdictions.begin(), p.jurisdictions.end()),
                          p.jurisdictions.end());
    // An interval with no bounds constrains nothing.
    if (p.time && !p.time->start && !p.time->end) p.time.reset();
    if (p.authority && trim(*p.authority).empty()) p.authority.reset();
}

struct DeonticRule {
    std::string id;
    Modality modality = Modality::Obligation;
    Clause head;
    std::optional<Condition> body;
    RulePragmatics pragmatics;

    bool operator==(const DeonticRule&) const = default;
};

struct RuleBase {
    std::string scope_id;
    std::vector<DeonticRule> rules;
    std::vector<Clause> facts;  // asserted ground facts

    bool operator==(const RuleBase&) const = default;
};

class DuplicateRuleId : public Error {
public:
    explicit DuplicateRuleId(std::string_view id)
        : Error("duplicate rule id: '" + std::string(id) + "'"), id(id) {}

    std::string id;
};

inline const DeonticRule* find_rule(const RuleBase& rb, std::string_view id) {
    for (const auto& r : rb.rules)
        if (r.id == id) return &r;
    return nullptr;
}

}  // namespace normforge
