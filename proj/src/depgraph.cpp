#include "aspforge/depgraph.hpp"

#include "aspforge/fol.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace aspforge::depgraph {

using fol::Formula;
using fol::FormulaPtr;

namespace {

void classify_rec(const FormulaPtr& f, int antecedents, bool negated, std::vector<int>& path,
                  std::vector<Occurrence>& out) {
    switch (f->kind) {
        case Formula::Kind::Bottom:
            return;
        case Formula::Kind::Atom:
            if (f->atom.kind == Atom::Kind::Predicate) {
                Occurrence o;
                o.predicate = f->atom.pred;
                o.strictly_positive = antecedents == 0;
                o.positive = antecedents % 2 == 0;
                o.negated = negated;
                o.path = path;
                out.push_back(std::move(o));
            }
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
            for (size_t i = 0; i < f->parts.size(); ++i) {
                path.push_back(static_cast<int>(i));
                classify_rec(f->parts[i], antecedents, negated, path, out);
                path.pop_back();
            }
            return;
        case Formula::Kind::Implies: {
            bool is_negation = f->parts[1]->kind == Formula::Kind::Bottom;
            path.push_back(0);
            classify_rec(f->parts[0], antecedents + 1, negated || is_negation, path, out);
            path.pop_back();
            path.push_back(1);
            classify_rec(f->parts[1], antecedents, negated, path, out);
            path.pop_back();
            return;
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            path.push_back(0);
            classify_rec(f->body, antecedents, negated, path, out);
            path.pop_back();
            return;
    }
}

void fol_rules_rec(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    switch (f->kind) {
        case Formula::Kind::Bottom:
        case Formula::Kind::Atom:
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
            for (const FormulaPtr& p : f->parts) {
                fol_rules_rec(p, out);
            }
            return;
        case Formula::Kind::Implies:
            out.push_back(f);
            // nested strictly positive implications live in the consequent
            fol_rules_rec(f->parts[1], out);
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            fol_rules_rec(f->body, out);
            return;
    }
}

} // namespace

std::vector<Occurrence> classify_occurrences(const FormulaPtr& formula) {
    std::vector<Occurrence> out;
    std::vector<int> path;
    classify_rec(formula, 0, false, path, out);
    return out;
}

std::vector<FormulaPtr> fol_rules(const FormulaPtr& formula) {
    std::vector<FormulaPtr> out;
    fol_rules_rec(formula, out);
    return out;
}

DependencyGraph dependency_graph(const FormulaPtr& formula, const std::set<std::string>& preds) {
    DependencyGraph g;
    g.vertices = preds;
    for (const FormulaPtr& rule : fol_rules(formula)) {
        std::set<std::string> heads;
        for (const Occurrence& o : classify_occurrences(rule->parts[1])) {
            if (o.strictly_positive && preds.count(o.predicate)) {
                heads.insert(o.predicate);
            }
        }
        if (heads.empty()) {
            continue; // G -> bot contributes nothing
        }
        std::set<std::string> sources;
        for (const Occurrence& o : classify_occurrences(rule->parts[0])) {
            if (o.positive && !o.negated && preds.count(o.predicate)) {
                sources.insert(o.predicate);
            }
        }
        for (const std::string& p : heads) {
            for (const std::string& q : sources) {
                g.edges.emplace(p, q);
            }
        }
    }
    return g;
}

DependencyGraph dependency_graph(const Program& program) {
    std::set<std::string> preds;
    for (const auto& [p, _] : signature(program).predicates) {
        preds.insert(p);
    }
    return dependency_graph(fol::fol_of_program(program), preds);
}

std::vector<std::vector<std::string>> sccs(const DependencyGraph& graph) {
    // Tarjan's algorithm, iterative over a deterministic vertex order.
    std::vector<std::string> verts(graph.vertices.begin(), graph.vertices.end());
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& [p, q] : graph.edges) {
        succ[p].push_back(q);
    }
    std::map<std::string, int> index, low;
    std::vector<std::string> stack;
    std::map<std::string, bool> on_stack;
    int counter = 0;
    std::vector<std::vector<std::string>> components;

    std::function<void(const std::string&)> strongconnect = [&](const std::string& v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (const std::string& w : succ[v]) {
            if (!index.count(w)) {
                strongconnect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::string> comp;
            while (true) {
                std::string w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
                if (w == v) {
                    break;
                }
            }
            std::sort(comp.begin(), comp.end());
            components.push_back(std::move(comp));
        }
    };
    for (const std::string& v : verts) {
        if (!index.count(v)) {
            strongconnect(v);
        }
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

std::string to_dot(const DependencyGraph& graph) {
    std::string out = "digraph dependencies {\n";
    for (const std::string& v : graph.vertices) {
        out += "  \"" + v + "\";\n";
    }
    for (const auto& [p, q] : graph.edges) {
        out += "  \"" + p + "\" -> \"" + q + "\";\n";
    }
    out += "}\n";
    return out;
}

} // namespace aspforge::depgraph
