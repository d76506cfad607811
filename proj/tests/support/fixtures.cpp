#include "fixtures.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "cohup/error.hpp"
#include "cohup/logic/parser.hpp"
#include "cohup/logic/render.hpp"

namespace cohup::testing {

CohesionModel m0() { return parse_model(kM0); }
DeltaSet r0() { return deltas(kR0); }
FactBase facts(std::string_view text) { return FactBase(parse_fact_file(text)); }
DeltaSet deltas(std::string_view text) { return DeltaSet::from_facts(parse_fact_file(text)); }

std::string canonical(const Rule& rule) {
    std::map<std::string, std::string> names;
    auto rename = [&](Atom atom) {
        for (auto& arg : atom.args) {
            if (auto* v = std::get_if<Variable>(&arg)) {
                auto [it, inserted] = names.emplace(v->name, "V" + std::to_string(names.size() + 1));
                v->name = it->second;
            }
        }
        return atom;
    };
    Rule out{"", rename(rule.head), {}};
    for (const auto& lit : rule.body) out.body.push_back({lit.kind, rename(lit.atom)});
    return render(out);
}

std::multiset<std::string> canonical(const std::vector<Rule>& rules) {
    std::multiset<std::string> out;
    for (const auto& r : rules) out.insert(canonical(r));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace cohup::testing
