#ifndef SPRINGOPT_TOPOLOGY_HPP
#define SPRINGOPT_TOPOLOGY_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace springopt {

enum class NodeKind { Leaf, Series, Parallel };

/// Two-terminal series-parallel network over 1-based spring indices.
/// Trees are immutable value types; Series/Parallel nodes always have
/// at least two children and nested nodes of the same kind are flattened
/// (normal form).
struct SPTree {
    NodeKind kind = NodeKind::Leaf;
    int index = 0;                  // leaf only
    std::vector<SPTree> children;   // series/parallel only

    static SPTree leaf(int index);
    static SPTree series(std::vector<SPTree> children);
    static SPTree parallel(std::vector<SPTree> children);

    bool operator==(const SPTree&) const = default;
};

/// Flatten same-kind nesting; idempotent.
SPTree normalized(const SPTree& t);

/// Number of leaves (= m, the number of springs).
int spring_count(const SPTree& t);

/// Throws std::invalid_argument unless the leaf index set is exactly {1..m}.
void validate_indices(const SPTree& t);

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& what, std::size_t offset_)
        : std::runtime_error(what + " at offset " + std::to_string(offset_)),
          offset(offset_) {}
};

/// Grammar: T := INT | s(T,T[,T...]) | p(T,T[,T...]); whitespace ignored.
/// Result is validated and in normal form.
SPTree parse_topology(std::string_view expr);

/// Inverse of parse_topology on normal-form trees, e.g. "s(1,p(s(2,3),4))".
std::string print_topology(const SPTree& t);

/// The ten canonical four-spring arrangements. id in 1..10.
SPTree canonical_case(int id);

/// Human-readable closed form of the equivalent resistance in c-variables.
std::string case_resistance_formula(int id);

inline constexpr int kCaseCount = 10;

}  // namespace springopt

#endif
