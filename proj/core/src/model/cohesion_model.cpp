#include "cohup/model/cohesion_model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cohup/error.hpp"
#include "cohup/logic/parser.hpp"
#include "cohup/logic/render.hpp"

namespace cohup {

namespace {

const PredicateKey kClassT{"classT", 3};
const PredicateKey kInterfaceT{"interfaceT", 1};
const PredicateKey kExternT{"externT", 1};
const PredicateKey kMethodT{"methodT", 3};
const PredicateKey kFieldT{"fieldT", 3};
const PredicateKey kCallT{"callT", 2};
const PredicateKey kAccessT{"accessT", 2};

std::string describe(const PredicateKey& key, const Tuple& tuple) { return render_fact(key, tuple); }

} // namespace

const std::set<PredicateKey>& ProgramElementFacts::predicates() {
    static const std::set<PredicateKey> keys{kClassT, kInterfaceT, kExternT, kMethodT, kFieldT, kCallT, kAccessT};
    return keys;
}

ProgramElementFacts parse_pef(std::string_view text) {
    ProgramElementFacts pef;
    for (const auto& fact : parse_facts(text)) {
        const PredicateKey key = fact.atom.key();
        if (!ProgramElementFacts::predicates().contains(key)) {
            throw Error(ErrorKind::UnknownPredicate, "unknown program element predicate " + key.str(), fact.line);
        }
        Tuple t = fact.atom.to_tuple();
        if (key == kClassT) {
            pef.classes.push_back({t[0], t[1], t[2].text()});
        } else if (key == kInterfaceT) {
            pef.interfaces.insert(t[0]);
        } else if (key == kExternT) {
            pef.externs.insert(t[0]);
        } else if (key == kMethodT) {
            pef.methods.push_back({t[0], t[1], t[2].text()});
        } else if (key == kFieldT) {
            pef.fields.push_back({t[0], t[1], t[2].text()});
        } else if (key == kCallT) {
            pef.calls.emplace_back(t[0], t[1]);
        } else {
            pef.accesses.emplace_back(t[0], t[1]);
        }
    }
    return pef;
}

bool source_class(const ProgramElementFacts& pef, const Constant& class_id) {
    for (const auto& cls : pef.classes) {
        if (cls.id != class_id) continue;
        return !pef.externs.contains(class_id) && !pef.interfaces.contains(class_id) &&
               !cls.name.starts_with(kAnonymousPrefix);
    }
    throw Error(ErrorKind::UnknownClass, "no classT fact for class " + class_id.text());
}

const PredicateKey CohesionModel::c{"c", 1};
const PredicateKey CohesionModel::cm{"cm", 2};
const PredicateKey CohesionModel::cf{"cf", 2};
const PredicateKey CohesionModel::mf{"mf", 2};
const PredicateKey CohesionModel::mm{"mm", 2};

const std::set<PredicateKey>& CohesionModel::predicates() {
    static const std::set<PredicateKey> keys{c, cm, cf, mf, mm};
    return keys;
}

CohesionModel::CohesionModel(FactBase facts) : facts_(std::move(facts)) {
    for (const auto& key : facts_.predicates()) {
        if (!predicates().contains(key)) {
            throw Error(ErrorKind::UnknownPredicate, "unknown model predicate " + key.str());
        }
    }
    for (const auto* key : {&cm, &cf}) {
        const Relation* rel = facts_.find(*key);
        if (rel == nullptr) continue;
        for (const auto& t : *rel) {
            if (!facts_.contains(c, {t[0]})) {
                throw Error(ErrorKind::DanglingReference, describe(*key, t) + " names a class without a c fact");
            }
        }
    }
}

std::vector<Constant> CohesionModel::classes() const {
    std::vector<Constant> out;
    if (const Relation* rel = facts_.find(c)) {
        for (const auto& t : *rel) out.push_back(t[0]);
    }
    return out;
}

namespace {

std::vector<Constant> second_column(const FactBase& facts, const PredicateKey& key, const Constant& first) {
    std::vector<Constant> out;
    if (const Relation* rel = facts.find(key)) {
        for (const Tuple* t : rel->lookup(1, {first})) out.push_back((*t)[1]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<Constant> CohesionModel::methods_of(const Constant& cls) const { return second_column(facts_, cm, cls); }
std::vector<Constant> CohesionModel::fields_of(const Constant& cls) const { return second_column(facts_, cf, cls); }
bool CohesionModel::has_class(const Constant& cls) const { return facts_.contains(c, {cls}); }

std::set<Constant> CohesionModel::identifiers() const {
    std::set<Constant> out;
    for (const auto& [key, rel] : facts_.relations()) {
        for (const auto& t : rel) out.insert(t.begin(), t.end());
    }
    return out;
}

std::string CohesionModel::to_text() const {
    std::ostringstream out;
    for (const auto& atom : facts_.atoms()) out << render(atom) << ".\n";
    return out.str();
}

CohesionModel parse_model(std::string_view text) {
    FactBase facts;
    for (const auto& fact : parse_facts(text)) {
        if (!CohesionModel::predicates().contains(fact.atom.key())) {
            throw Error(ErrorKind::UnknownPredicate, "unknown model predicate " + fact.atom.key().str(), fact.line);
        }
        facts.insert(fact.atom);
    }
    return CohesionModel(std::move(facts));
}

CohesionModel derive_model(const ProgramElementFacts& pef) {
    std::map<Constant, std::string> kind_of;
    auto declare = [&](const Constant& id, const std::string& kind) {
        auto [it, inserted] = kind_of.emplace(id, kind);
        if (!inserted) {
            throw Error(ErrorKind::DuplicateElement,
                        "element id " + id.text() + " declared as " + it->second + " and " + kind);
        }
    };
    for (const auto& cls : pef.classes) declare(cls.id, "class");
    for (const auto& m : pef.methods) declare(m.id, "method");
    for (const auto& f : pef.fields) declare(f.id, "field");

    auto require = [&](const Constant& id, const std::string& kind, const std::string& fact) {
        auto it = kind_of.find(id);
        if (it == kind_of.end() || it->second != kind) {
            throw Error(ErrorKind::DanglingReference, fact + " references unknown " + kind + " " + id.text());
        }
    };
    for (const auto& id : pef.interfaces) require(id, "class", describe(kInterfaceT, {id}));
    for (const auto& id : pef.externs) require(id, "class", describe(kExternT, {id}));
    for (const auto& m : pef.methods) require(m.owner, "class", describe(kMethodT, {m.id, m.owner, sym(m.name)}));
    for (const auto& f : pef.fields) require(f.owner, "class", describe(kFieldT, {f.id, f.owner, sym(f.name)}));
    for (const auto& [a, b] : pef.calls) {
        require(a, "method", describe(kCallT, {a, b}));
        require(b, "method", describe(kCallT, {a, b}));
    }
    for (const auto& [a, b] : pef.accesses) {
        require(a, "method", describe(kAccessT, {a, b}));
        require(b, "field", describe(kAccessT, {a, b}));
    }

    FactBase facts;
    std::set<Constant> methods;
    std::set<Constant> fields;
    for (const auto& cls : pef.classes) {
        if (source_class(pef, cls.id)) facts.insert(CohesionModel::c, {cls.id});
    }
    for (const auto& m : pef.methods) {
        if (m.name == kConstructorName || !facts.contains(CohesionModel::c, {m.owner})) continue;
        facts.insert(CohesionModel::cm, {m.owner, m.id});
        methods.insert(m.id);
    }
    for (const auto& f : pef.fields) {
        if (!facts.contains(CohesionModel::c, {f.owner})) continue;
        facts.insert(CohesionModel::cf, {f.owner, f.id});
        fields.insert(f.id);
    }
    for (const auto& [m, f] : pef.accesses) {
        if (methods.contains(m) && fields.contains(f)) facts.insert(CohesionModel::mf, {m, f});
    }
    for (const auto& [m, n] : pef.calls) {
        if (methods.contains(m) && methods.contains(n)) facts.insert(CohesionModel::mm, {m, n});
    }
    return CohesionModel(std::move(facts));
}

} // namespace cohup
