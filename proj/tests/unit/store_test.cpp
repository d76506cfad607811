#include <gtest/gtest.h>

#include "cohup/error.hpp"
#include "cohup/logic/parser.hpp"
#include "cohup/store/delta_set.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

namespace cohup {
namespace {

using namespace testing;

const PredicateKey kCm{"cm", 2};

TEST(Query, M0Examples) {
    const FactBase base = m0().facts();
    auto methods = query(base, Atom{"cm", {sym("c1"), var("X")}});
    ASSERT_EQ(methods.size(), 3u);
    EXPECT_EQ(methods[0].at("X"), sym("m1"));
    EXPECT_EQ(methods[2].at("X"), sym("m3"));
    EXPECT_TRUE(query(base, Atom{"cm", {sym("c9"), var("X")}}).empty());
    auto present = query(base, Atom{"cm", {sym("c1"), sym("m1")}});
    ASSERT_EQ(present.size(), 1u);
    EXPECT_TRUE(present[0].empty());
    EXPECT_TRUE(query(base, Atom{"zz", {var("X")}}).empty());
}

TEST(Query, RepeatedVariablesMustAgree) {
    const FactBase base = facts("e(1, 1). e(1, 2). e(2, 2).");
    EXPECT_EQ(query(base, Atom{"e", {var("X"), var("X")}}).size(), 2u);
}

TEST(FactBase, SetSemantics) {
    FactBase base;
    EXPECT_TRUE(base.insert(Atom{"c", {sym("c1")}}));
    EXPECT_FALSE(base.insert(Atom{"c", {sym("c1")}}));
    EXPECT_EQ(base.size(), 1u);
    FactBase twice(parse_fact_file("c(c1). c(c1)."));
    EXPECT_EQ(twice, base);
}

TEST(FactBase, EmptyRelationsEqualAbsentOnes) {
    FactBase a;
    FactBase b;
    b.relation(kCm);
    EXPECT_EQ(a, b);
}

TEST(Relation, IndicesFollowInsertAndErase) {
    Relation rel(2);
    rel.insert({sym("a"), num(1)});
    EXPECT_EQ(rel.lookup(1, {sym("a")}).size(), 1u);
    rel.insert({sym("a"), num(2)});
    EXPECT_EQ(rel.lookup(1, {sym("a")}).size(), 2u);
    rel.erase({sym("a"), num(1)});
    EXPECT_EQ(rel.lookup(1, {sym("a")}).size(), 1u);
    EXPECT_EQ(rel.lookup(0, {}).size(), 1u);
    EXPECT_EQ(rel.lookup(3, {sym("a"), num(2)}).size(), 1u);
    EXPECT_THROW(rel.insert({sym("a")}), Error);
}

TEST(NormalizeSeeds, Examples) {
    const FactBase base = m0().facts();
    auto kept = normalize_seeds(base, deltas("add_cm(c2, m3)."));
    EXPECT_EQ(kept.seeds.insertions(kCm).size(), 1u);
    EXPECT_TRUE(kept.warnings.empty());

    auto dropped = normalize_seeds(base, deltas("del_cm(c9, m9). add_cm(c1, m1)."));
    EXPECT_TRUE(dropped.seeds.empty());
    EXPECT_EQ(dropped.warnings.size(), 2u);

    try {
        normalize_seeds(base, deltas("add_cm(c1, m1). del_cm(c1, m1)."));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ConflictingSeed);
    }
}

TEST(ApplyDeltaSet, Examples) {
    const FactBase base = m0().facts();
    const FactBase after = apply_delta_set(base, r0());
    EXPECT_EQ(after.find(kCm)->lookup(1, {sym("c1")}).size(), 2u);
    EXPECT_EQ(after.find(kCm)->lookup(1, {sym("c2")}).size(), 1u);
    EXPECT_TRUE(after.contains({"c", 1}, {sym("c2")}));
    EXPECT_EQ(apply_delta_set(base, DeltaSet{}), base);
    EXPECT_EQ(apply_delta_set(FactBase{}, deltas("add_c(c1).")), facts("c(c1)."));
}

TEST(ApplyDeltaSet, InverseRoundTrip) {
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        const FactBase base = random_model(rng).facts();
        DeltaSet raw;
        for (const auto& atom : base.atoms()) {
            if (chance(rng, 0.2)) raw.add_deletion(atom);
        }
        raw.add_insertion(kCm, {sym("cx"), sym("mx" + std::to_string(i))});
        const auto seeds = normalize_seeds(base, raw).seeds;
        EXPECT_EQ(apply_delta_set(apply_delta_set(base, seeds), seeds.inverse()), base);
    }
}

TEST(DeltaSet, TextRoundTrip) {
    const DeltaSet d = r0();
    EXPECT_EQ(d.to_text(), "del_cm(c1, m3).\nadd_c(c2).\nadd_cm(c2, m3).\n");
    EXPECT_EQ(deltas(d.to_text()), d);
    EXPECT_EQ(d.size(), 3u);
    EXPECT_TRUE(d.is_disjoint());
    EXPECT_THROW(deltas("cm(c1, m1)."), Error);
}

TEST(Snapshot, SharesAndNeverChanges) {
    FactBase base = m0().facts();
    const Snapshot snap(base);
    const Snapshot copy = snap;
    base.insert(Atom{"c", {sym("c7")}});
    EXPECT_EQ(&snap.get(), &copy.get());
    EXPECT_FALSE(snap->contains({"c", 1}, {sym("c7")}));
}

} // namespace
} // namespace cohup
