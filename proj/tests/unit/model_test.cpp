#include <gtest/gtest.h>

#include "cohup/error.hpp"
#include "cohup/model/cohesion_model.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

namespace cohup {
namespace {

using namespace testing;

ErrorKind kind_of(const std::function<void()>& f, std::size_t* line = nullptr) {
    try {
        f();
    } catch (const Error& e) {
        if (line != nullptr) *line = e.line();
        return e.kind();
    }
    ADD_FAILURE() << "no error";
    return ErrorKind::Io;
}

TEST(ParsePef, ReadsEveryKind) {
    auto pef = parse_pef(read_file(std::string(COHUP_TEST_DATA_DIR) + "/filters.pef"));
    EXPECT_EQ(pef.classes.size(), 5u);
    EXPECT_EQ(pef.interfaces, (std::set<Constant>{sym("list")}));
    EXPECT_EQ(pef.externs, (std::set<Constant>{sym("string")}));
    EXPECT_EQ(pef.methods.size(), 7u);
    EXPECT_EQ(pef.fields.size(), 4u);
    EXPECT_EQ(pef.accesses.size(), 6u);
    EXPECT_EQ(pef.calls.size(), 4u);
    EXPECT_EQ(pef.methods[0].name, "<init>");
}

TEST(ParsePef, UnknownPredicateReportsLine) {
    std::size_t line = 0;
    EXPECT_EQ(kind_of([] { parse_pef("classT(a, p, 'A').\nenumT(a).\n"); }, &line), ErrorKind::UnknownPredicate);
    EXPECT_EQ(line, 2u);
    EXPECT_EQ(kind_of([] { parse_pef("classT(a, p)."); }), ErrorKind::UnknownPredicate);
}

TEST(SourceClass, Examples) {
    auto pef = parse_pef(read_file(std::string(COHUP_TEST_DATA_DIR) + "/filters.pef"));
    EXPECT_TRUE(source_class(pef, sym("order")));
    EXPECT_FALSE(source_class(pef, sym("list")));
    EXPECT_FALSE(source_class(pef, sym("string")));
    EXPECT_FALSE(source_class(pef, sym("anon")));
    EXPECT_TRUE(source_class(pef, sym("named")));
    EXPECT_EQ(kind_of([&] { source_class(pef, sym("nowhere")); }), ErrorKind::UnknownClass);
}

TEST(DeriveModel, M0FromProgramElements) {
    auto model = derive_model(parse_pef(read_file(std::string(COHUP_TEST_DATA_DIR) + "/m0.pef")));
    EXPECT_EQ(model, m0());
    EXPECT_FALSE(model.facts().contains(CohesionModel::cm, {sym("c1"), sym("m0")}));
    EXPECT_EQ(model.facts().size(CohesionModel::mm), 0u);
}

TEST(DeriveModel, KeepsCallsBetweenSourceMethods) {
    auto model = derive_model(parse_pef("classT(a, p, 'A').\n"
                                        "methodT(a1, a, run). methodT(a2, a, stop).\n"
                                        "callT(a1, a2). callT(a2, a2).\n"));
    EXPECT_TRUE(model.facts().contains(CohesionModel::mm, {sym("a1"), sym("a2")}));
    EXPECT_TRUE(model.facts().contains(CohesionModel::mm, {sym("a2"), sym("a2")}));
}

TEST(DeriveModel, Errors) {
    EXPECT_EQ(kind_of([] { derive_model(parse_pef("classT(a, p, 'A'). methodT(a, a, run).")); }),
              ErrorKind::DuplicateElement);
    EXPECT_EQ(kind_of([] { derive_model(parse_pef("classT(a, p, 'A'). classT(a, q, 'B').")); }),
              ErrorKind::DuplicateElement);
    EXPECT_EQ(kind_of([] { derive_model(parse_pef("methodT(m, nowhere, run).")); }), ErrorKind::DanglingReference);
    EXPECT_EQ(kind_of([] { derive_model(parse_pef("classT(a, p, 'A'). accessT(m, f).")); }),
              ErrorKind::DanglingReference);
    EXPECT_EQ(kind_of([] { derive_model(parse_pef("interfaceT(i).")); }), ErrorKind::DanglingReference);
}

TEST(DeriveModel, AddingSourceElementsOnlyGrowsTheModel) {
    const std::string base = "classT(a, p, 'A'). methodT(a1, a, run). fieldT(af, a, x). accessT(a1, af).\n";
    const auto small = derive_model(parse_pef(base));
    const auto large = derive_model(parse_pef(base + "classT(b, p, 'B'). methodT(b1, b, go). accessT(b1, af).\n"));
    for (const auto& key : CohesionModel::predicates()) {
        if (const Relation* rel = small.facts().find(key)) {
            for (const auto& t : *rel) EXPECT_TRUE(large.facts().contains(key, t));
        }
    }
    EXPECT_GT(large.facts().size(), small.facts().size());
}

TEST(DeriveModel, ExternOnlyGivesEmptyModel) {
    auto model = derive_model(parse_pef("classT(s, java, 'String'). externT(s). methodT(s1, s, length)."));
    EXPECT_EQ(model.facts().size(), 0u);
}

TEST(DeriveModel, DroppingAnExclusionMarkerNeverRemovesFacts) {
    const auto full = parse_pef(read_file(std::string(COHUP_TEST_DATA_DIR) + "/filters.pef"));
    const auto with = derive_model(full);
    for (int which = 0; which < 2; ++which) {
        auto relaxed = full;
        (which == 0 ? relaxed.interfaces : relaxed.externs).clear();
        const auto without = derive_model(relaxed);
        for (const auto& key : CohesionModel::predicates()) {
            if (const Relation* rel = with.facts().find(key)) {
                for (const auto& t : *rel) EXPECT_TRUE(without.facts().contains(key, t));
            }
        }
        EXPECT_GT(without.facts().size(), with.facts().size());
    }
}

TEST(CohesionModel, Accessors) {
    const auto model = m0();
    EXPECT_EQ(model.classes(), (std::vector<Constant>{sym("c1")}));
    EXPECT_EQ(model.methods_of(sym("c1")), (std::vector<Constant>{sym("m1"), sym("m2"), sym("m3")}));
    EXPECT_EQ(model.fields_of(sym("c1")), (std::vector<Constant>{sym("f1"), sym("f2")}));
    EXPECT_TRUE(model.has_class(sym("c1")));
    EXPECT_FALSE(model.has_class(sym("m1")));
    EXPECT_EQ(model.identifiers().size(), 6u);
    EXPECT_EQ(parse_model(model.to_text()), model);
}

TEST(CohesionModel, Validation) {
    std::size_t line = 0;
    EXPECT_EQ(kind_of([] { parse_model("c(c1).\nzz(c1).\n"); }, &line), ErrorKind::UnknownPredicate);
    EXPECT_EQ(line, 2u);
    EXPECT_EQ(kind_of([] { parse_model("cm(c9, m1)."); }), ErrorKind::DanglingReference);
    EXPECT_EQ(kind_of([] { parse_model("c(c1). cf(c2, f1)."); }), ErrorKind::DanglingReference);
    EXPECT_EQ(kind_of([] { parse_model("c(c1). cm(c1)."); }), ErrorKind::UnknownPredicate);
}

TEST(CohesionModel, RandomModelsRoundTrip) {
    Rng rng(41);
    for (int i = 0; i < 50; ++i) {
        const auto model = random_model(rng);
        EXPECT_EQ(parse_model(model.to_text()), model);
    }
}

} // namespace
} // namespace cohup
