#include "springopt/topology.hpp"

#include <algorithm>
#include <cctype>

namespace springopt {

SPTree SPTree::leaf(int index) {
    if (index < 1) throw std::invalid_argument("spring index must be >= 1");
    SPTree t;
    t.kind = NodeKind::Leaf;
    t.index = index;
    return t;
}

namespace {

SPTree make_node(NodeKind kind, std::vector<SPTree> children) {
    if (children.size() < 2)
        throw std::invalid_argument("series/parallel nodes need >= 2 children");
    SPTree t;
    t.kind = kind;
    t.children = std::move(children);
    return t;
}

void flatten_into(const SPTree& t, NodeKind kind, std::vector<SPTree>& out) {
    if (t.kind == kind) {
        for (const SPTree& ch : t.children) flatten_into(ch, kind, out);
    } else {
        out.push_back(normalized(t));
    }
}

void collect_indices(const SPTree& t, std::vector<int>& out) {
    if (t.kind == NodeKind::Leaf) {
        out.push_back(t.index);
    } else {
        for (const SPTree& ch : t.children) collect_indices(ch, out);
    }
}

}  // namespace

SPTree SPTree::series(std::vector<SPTree> children) {
    return normalized(make_node(NodeKind::Series, std::move(children)));
}

SPTree SPTree::parallel(std::vector<SPTree> children) {
    return normalized(make_node(NodeKind::Parallel, std::move(children)));
}

SPTree normalized(const SPTree& t) {
    if (t.kind == NodeKind::Leaf) return t;
    std::vector<SPTree> flat;
    for (const SPTree& ch : t.children) flatten_into(ch, t.kind, flat);
    SPTree out;
    out.kind = t.kind;
    out.children = std::move(flat);
    return out;
}

int spring_count(const SPTree& t) {
    if (t.kind == NodeKind::Leaf) return 1;
    int n = 0;
    for (const SPTree& ch : t.children) n += spring_count(ch);
    return n;
}

void validate_indices(const SPTree& t) {
    std::vector<int> idx;
    collect_indices(t, idx);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] == idx[i + 1])
            throw std::invalid_argument("duplicate spring index " + std::to_string(idx[i]));
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (idx[i] != static_cast<int>(i) + 1)
            throw std::invalid_argument("spring indices must be exactly {1.." +
                                        std::to_string(idx.size()) + "}");
}

namespace {

struct Parser {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
        return s[pos];
    }

    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }

    SPTree term() {
        char c = peek();
        if (c == 's' || c == 'p') {
            NodeKind kind = c == 's' ? NodeKind::Series : NodeKind::Parallel;
            ++pos;
            expect('(');
            std::vector<SPTree> children;
            children.push_back(term());
            expect(',');
            children.push_back(term());
            while (true) {
                skip_ws();
                if (pos < s.size() && s[pos] == ',') {
                    ++pos;
                    children.push_back(term());
                } else {
                    break;
                }
            }
            expect(')');
            SPTree t;
            t.kind = kind;
            t.children = std::move(children);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                v = v * 10 + (s[pos] - '0');
                ++pos;
            }
            if (v < 1) throw ParseError("spring index must be >= 1", pos);
            return SPTree::leaf(v);
        }
        throw ParseError("expected 's', 'p' or an integer", pos);
    }
};

}  // namespace

SPTree parse_topology(std::string_view expr) {
    Parser p{expr};
    SPTree t = p.term();
    p.skip_ws();
    if (p.pos != expr.size()) throw ParseError("trailing input", p.pos);
    t = normalized(t);
    validate_indices(t);
    return t;
}

std::string print_topology(const SPTree& t) {
    if (t.kind == NodeKind::Leaf) return std::to_string(t.index);
    std::string out(1, t.kind == NodeKind::Series ? 's' : 'p');
    out += '(';
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += ',';
        out += print_topology(t.children[i]);
    }
    out += ')';
    return out;
}

SPTree canonical_case(int id) {
    using T = SPTree;
    auto L = [](int i) { return T::leaf(i); };
    switch (id) {
        case 1: return T::series({L(1), T::parallel({L(2), L(3)}), L(4)});
        case 2: return T::series({L(1), L(2), L(3), L(4)});
        case 3: return T::parallel({T::series({L(1), L(2)}), T::series({L(3), L(4)})});
        case 4: return T::parallel({T::series({L(1), L(2), L(3)}), L(4)});
        case 5: return T::parallel({T::series({L(1), L(2)}), L(3), L(4)});
        case 6: return T::series({L(1), T::parallel({L(2), L(3), L(4)})});
        case 7: return T::series({T::parallel({L(1), L(3)}), T::parallel({L(2), L(4)})});
        case 8: return T::parallel({L(1), L(2), L(3), L(4)});
        case 9: return T::series({L(1), T::parallel({T::series({L(2), L(3)}), L(4)})});
        case 10:
            return T::parallel({T::series({L(1), T::parallel({L(2), L(3)})}), L(4)});
        default:
            throw std::domain_error("case id must be in 1..10, got " + std::to_string(id));
    }
}

std::string case_resistance_formula(int id) {
    switch (id) {
        case 1: return "R = 1/c1 + 1/(c2 + c3) + 1/c4";
        case 2: return "R = 1/c1 + 1/c2 + 1/c3 + 1/c4";
        case 3: return "R = 1/(1/(1/c1 + 1/c2) + 1/(1/c3 + 1/c4))";
        case 4: return "R = 1/(1/(1/c1 + 1/c2 + 1/c3) + c4)";
        case 5: return "R = 1/(1/(1/c1 + 1/c2) + c3 + c4)";
        case 6: return "R = 1/c1 + 1/(c2 + c3 + c4)";
        case 7: return "R = 1/(c1 + c3) + 1/(c2 + c4)";
        case 8: return "R = 1/(c1 + c2 + c3 + c4)";
        case 9: return "R = 1/c1 + 1/(c4 + 1/(1/c2 + 1/c3))";
        case 10: return "R = 1/(c4 + 1/(1/c1 + 1/(c2 + c3)))";
        default:
            throw std::domain_error("case id must be in 1..10, got " + std::to_string(id));
    }
}

}  // namespace springopt
