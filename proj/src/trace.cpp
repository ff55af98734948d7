#include "propkit/trace.hpp"

#include <json.hpp>

#include "propkit/error.hpp"
#include "propkit/parser.hpp"
#include "propkit/render.hpp"

namespace propkit {

using json = nlohmann::ordered_json;

namespace {

json trace_record(const Csp& after, const DerivationStep& step) {
    json j;
    j["step"] = step.index;
    j["rule"] = std::string(to_string(step.rule));
    j["constraint"] = render_constraint(after, step.target.constraint);
    if (step.target.var) j["var"] = after.name(*step.target.var);
    json changes = json::object();
    for (const auto& [v, ch] : step.delta.domain_changes)
        changes[after.name(v)] = json{{"old", ch.before.to_string()}, {"new", ch.after.to_string()}};
    j["changes"] = std::move(changes);
    json added = json::array(), removed = json::array();
    for (const auto& c : step.delta.added) added.push_back(render_constraint(after, c));
    for (const auto& c : step.delta.removed) removed.push_back(render_constraint(after, c));
    j["added"] = std::move(added);
    j["removed"] = std::move(removed);
    json fresh = json::array();
    for (const auto& f : step.delta.fresh_vars) fresh.push_back(json{{"name", f.name}, {"domain", f.domain.to_string()}});
    j["fresh"] = std::move(fresh);
    return j;
}

std::string split_detail(const Csp& csp, const SplitLabel& s) {
    std::string out(to_string(s.rule));
    if (s.target.var) {
        out += " " + csp.name(*s.target.var);
        if (s.target.value) out += "=" + std::to_string(*s.target.value);
    }
    if (s.target.constraint) out += " on " + render_constraint(csp, *s.target.constraint);
    return out;
}

std::string leaf_name(DerivationStatus s) {
    switch (s) {
        case DerivationStatus::Successful: return "solved";
        case DerivationStatus::Failed: return "failed";
        case DerivationStatus::Stuck: return "stuck";
    }
    return "?";
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

class DotWriter {
public:
    std::string run(const ProofNode& root) {
        out_ = "digraph proof {\n  node [shape=box, fontname=\"monospace\"];\n";
        node(root);
        return out_ + "}\n";
    }

private:
    std::string fresh_node(const std::string& label, const std::string& extra = "") {
        std::string id = "n" + std::to_string(next_++);
        out_ += "  " + id + " [label=" + quote(label) + extra + "];\n";
        return id;
    }

    void edge(const std::string& from, const std::string& to, const std::string& label, const std::string& tooltip) {
        out_ += "  " + from + " -> " + to + " [label=" + quote(label) + ", tooltip=" + quote(tooltip) + "];\n";
    }

    std::string node(const ProofNode& n) {
        std::size_t count = n.steps.size() + 1;
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < count; ++i) {
            std::string label, extra;
            if (i + 1 == count && n.leaf_status) {
                const char* color = *n.leaf_status == DerivationStatus::Successful ? "palegreen"
                                    : *n.leaf_status == DerivationStatus::Failed   ? "lightpink"
                                                                                   : "khaki";
                label = leaf_name(*n.leaf_status);
                extra = std::string(", style=filled, fillcolor=") + color;
            }
            ids.push_back(fresh_node(label, extra));
        }
        Csp csp = n.start;
        for (std::size_t i = 0; i < n.steps.size(); ++i) {
            const auto& s = n.steps[i];
            csp = apply_delta(csp, s.delta);
            edge(ids[i], ids[i + 1], std::string(to_string(s.rule)), render_constraint(csp, s.target.constraint));
        }
        if (n.split) {
            for (const auto& child : n.children) {
                std::string c = node(*child);
                edge(ids.back(), c, std::string(to_string(n.split->rule)), split_detail(n.end, *n.split));
            }
        }
        return ids.front();
    }

    std::string out_;
    std::size_t next_ = 0;
};

json tree_json(const ProofNode& n) {
    json j;
    json steps = json::array();
    Csp csp = n.start;
    for (const auto& s : n.steps) {
        csp = apply_delta(csp, s.delta);
        steps.push_back(trace_record(csp, s));
    }
    j["steps"] = std::move(steps);
    if (n.split) {
        json sp;
        sp["rule"] = std::string(to_string(n.split->rule));
        if (n.split->target.var) sp["var"] = n.end.name(*n.split->target.var);
        if (n.split->target.value) sp["value"] = *n.split->target.value;
        if (n.split->target.constraint) sp["constraint"] = render_constraint(n.end, *n.split->target.constraint);
        j["split"] = std::move(sp);
    }
    if (n.leaf_status) j["status"] = leaf_name(*n.leaf_status);
    json children = json::array();
    for (const auto& c : n.children) children.push_back(tree_json(*c));
    j["children"] = std::move(children);
    return j;
}

std::string rational_text(const Rational& r) { return r.to_string(); }

}  // namespace

std::string trace_line(const Csp& after, const DerivationStep& step) { return trace_record(after, step).dump(); }

std::string trace_text(const Csp& start, std::span<const DerivationStep> steps) {
    std::string out;
    Csp csp = start;
    for (const auto& s : steps) {
        csp = apply_delta(csp, s.delta);
        out += trace_line(csp, s) + "\n";
    }
    return out;
}

Csp replay_trace(const Csp& initial, std::string_view trace) {
    Csp csp = initial.without_solved();
    std::size_t line_no = 0;
    while (!trace.empty()) {
        auto nl = trace.find('\n');
        std::string_view line = trace.substr(0, nl);
        trace = nl == std::string_view::npos ? std::string_view{} : trace.substr(nl + 1);
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        json j;
        try {
            j = json::parse(line);
            for (const auto& f : j.at("fresh")) {
                std::string name = f.at("name").get<std::string>();
                if (csp.next_fresh_name() != name)
                    throw ReplayError(line_no, "fresh variable " + name + " out of sequence");
                csp.add_fresh_variable(parse_domain(f.at("domain").get<std::string>()));
            }
            for (const auto& [name, ch] : j.at("changes").items()) {
                auto v = csp.find(name);
                if (!v) throw ReplayError(line_no, "unknown variable " + name);
                if (!(csp.domain(*v) == parse_domain(ch.at("old").get<std::string>())))
                    throw ReplayError(line_no, "domain of " + name + " does not match");
                csp.set_domain(*v, parse_domain(ch.at("new").get<std::string>()));
            }
            for (const auto& r : j.at("removed")) {
                if (!csp.remove_constraint(parse_constraint(csp, r.get<std::string>())))
                    throw ReplayError(line_no, "removed constraint not present: " + r.get<std::string>());
            }
            for (const auto& a : j.at("added")) csp.add_constraint(parse_constraint(csp, a.get<std::string>()));
        } catch (const json::exception& e) {
            throw ReplayError(line_no, std::string("malformed record: ") + e.what());
        } catch (const ParseError& e) {
            throw ReplayError(line_no, e.what());
        }
    }
    return csp;
}

std::string tree_to_dot(const ProofNode& root) { return DotWriter{}.run(root); }

std::string tree_to_json(const ProofNode& root) { return tree_json(root).dump(2) + "\n"; }

std::string report_to_json(const Csp& csp, const ConsistencyReport& report) {
    json j;
    j["kind"] = std::string(to_string(report.kind));
    j["verdict"] = report.verdict ? "consistent" : "inconsistent";
    j["failed"] = report.failed;
    json ws = json::array();
    for (const auto& w : report.witnesses) {
        json t = json::array();
        for (const auto& x : w.tuple) t.push_back(rational_text(x));
        ws.push_back(json{{"constraint", w.constraint},
                          {"var", csp.name(w.var)},
                          {"point", w.point},
                          {"value", rational_text(w.value)},
                          {"supported", w.supported},
                          {"tuple", std::move(t)}});
    }
    j["witnesses"] = std::move(ws);
    return j.dump();
}

std::string suites_to_json(std::span<const SuiteResult> suites) {
    std::string out;
    for (const auto& s : suites) {
        json j{{"suite", s.name},           {"passed", s.passed}, {"instances", s.instances},
               {"counterexamples", s.counterexamples}, {"seed", s.seed},     {"details", s.details}};
        out += j.dump() + "\n";
    }
    return out;
}

}  // namespace propkit
