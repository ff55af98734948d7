#include "propkit/models.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include "propkit/error.hpp"
#include "propkit/parser.hpp"

namespace propkit {

namespace {

std::string sendmory() {
    std::string out = "// SEND + MORE = MONEY\n";
    const std::string letters = "SENDMORY";
    for (char c : letters) out += std::string("var ") + c + (c == 'S' || c == 'M' ? " in 1..9;\n" : " in 0..9;\n");
    out += "constraint 10000*M + 1000*O + 100*N + 10*E + Y = "
           "1000*S + 100*E + 10*N + D + 1000*M + 100*O + 10*R + E;\n";
    // x != y for x before y alphabetically
    std::string sorted = letters;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            out += std::string("constraint ") + sorted[i] + " != " + sorted[j] + ";\n";
    return out;
}

std::string latin(int n) {
    if (n < 2) throw Error("latin needs order n >= 2");
    auto cell = [](int r, int c) { return "c" + std::to_string(r) + "_" + std::to_string(c); };
    std::string out = "// Latin square of order " + std::to_string(n) + "\n";
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c) out += "var " + cell(r, c) + " in 1.." + std::to_string(n) + ";\n";
    out += "var one in 1..1;\n";
    for (int k = 1; k <= n; ++k) out += "var s" + std::to_string(k) + " in " + std::to_string(k) + ".." + std::to_string(k) + ";\n";
    auto line = [&](bool row, int i) {
        std::string l = "[";
        for (int j = 1; j <= n; ++j) l += (j > 1 ? ", " : "") + (row ? cell(i, j) : cell(j, i));
        return l + "]";
    };
    for (int row = 1; row >= 0; --row)
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= n; ++k)
                out += "constraint exactly(one, " + line(row, i) + ", s" + std::to_string(k) + ");\n";
    return out;
}

std::optional<int> latin_order(std::string_view name) {
    if (name.rfind("latin", 0) != 0) return std::nullopt;
    std::string_view rest = name.substr(5);
    if (rest.empty()) return 0;
    if (rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    int n = 0;
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
    if (ec != std::errc() || p != rest.data() + rest.size()) return std::nullopt;
    return n;
}

}  // namespace

std::vector<std::string> example_names() {
    return {"sendmory", "latin", "lin1", "lin1_fixpoint", "parity", "davis", "twoeq"};
}

std::string gen_example(std::string_view name, int n) {
    if (name == "sendmory") return sendmory();
    if (auto order = latin_order(name)) return latin(*order ? *order : n);
    if (name == "lin1") return "var x in 0..9;\nvar y in 1..8;\nconstraint 3*x - 5*y = 4;\n";
    if (name == "lin1_fixpoint") return "var x in 3..8;\nvar y in 1..4;\nconstraint 3*x - 5*y = 4;\n";
    if (name == "parity")
        return "var x in 0..1;\nvar y in 0..1;\nvar z in 0..1;\nconstraint 2*x + 2*y - 2*z = 1;\n";
    if (name == "davis")
        return "realvar x in [0,100];\nrealvar y in [0,100];\nconstraint x = y;\nconstraint x = 2*y;\n";
    if (name == "twoeq")
        return "var x in 0..10;\nvar y in 0..10;\nconstraint x + y = 10;\nconstraint x - y = 0;\n";
    throw Error("unknown example '" + std::string(name) + "'");
}

std::string sendmory_script_text() {
    const std::string sum = "-1000*S - 91*E + 90*N - D + 9000*M + 900*O - 10*R + Y = 0";
    std::string out = "LIN_EQ: " + sum + "\n";
    out += "SIMPLE_DISEQ_3: M != O\n";
    for (char v : std::string("ENDRY")) {
        std::string x(1, v);
        out += "SIMPLE_DISEQ_2: " + x + " != O\n";
        out += "SIMPLE_DISEQ_2: " + x + " != M\n";
        out += "SIMPLE_DISEQ_3: S != " + x + "\n";
    }
    for (int i = 0; i < 5; ++i) out += "LIN_EQ: " + sum + "\n";
    return out;
}

std::vector<ScriptStep> parse_script(const Csp& csp, std::string_view text) {
    std::vector<ScriptStep> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, first + 1, "expected 'RULE: constraint'");
        std::string_view head = line.substr(first, colon - first);
        while (!head.empty() && (head.back() == ' ' || head.back() == '\t')) head.remove_suffix(1);
        std::string_view var_name;
        if (auto sp = head.find_first_of(" \t"); sp != std::string_view::npos) {
            var_name = head.substr(head.find_first_not_of(" \t", sp));
            head = head.substr(0, sp);
        }
        auto id = rule_id_from_string(head);
        if (!id) throw ParseError(line_no, first + 1, "unknown rule '" + std::string(head) + "'");
        ScriptStep step{*id, Target{}};
        try {
            step.target.constraint = parse_constraint(csp, line.substr(colon + 1));
        } catch (const ParseError& e) {
            throw ParseError(line_no, colon + 1 + e.column(), e.what());
        }
        if (!var_name.empty()) {
            auto v = csp.find(var_name);
            if (!v) throw ParseError(line_no, first + 1, "unknown identifier '" + std::string(var_name) + "'");
            step.target.var = *v;
        }
        out.push_back(std::move(step));
    }
    return out;
}

}  // namespace propkit
