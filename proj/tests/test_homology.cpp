#include "support.hpp"

#include "vkh/half.hpp"
#include "vkh/homology.hpp"

#include <doctest.h>

using namespace vkh;

namespace {

using Table = std::map<std::pair<int, int>, HomologyGroup>;

HomologyGroup Z(std::size_t n = 1) { return {n, {}}; }
HomologyGroup torsion(std::vector<BigInt> t) { return {0, std::move(t)}; }

// Keys in whole units, for readability of the expected tables.
Table whole(std::initializer_list<std::tuple<int, int, HomologyGroup>> entries) {
    Table t;
    for (const auto& [i, j, g] : entries) t[{2 * i, 2 * j}] = g;
    return t;
}

std::size_t even_torsion(const HomologyTable& t, int i2, int j2) {
    auto it = t.entries.find({i2, j2});
    if (it == t.entries.end()) return 0;
    std::size_t n = 0;
    for (const auto& f : it->second.torsion) n += (f % 2 == 0);
    return n;
}

std::size_t free_at(const HomologyTable& t, int i2, int j2) {
    auto it = t.entries.find({i2, j2});
    return it == t.entries.end() ? 0 : it->second.free_rank;
}

HomologyOptions ring(Ring r) {
    HomologyOptions o;
    o.ring = r;
    return o;
}

} // namespace

TEST_CASE("ring names") {
    for (Ring r : {Ring::z, Ring::q, Ring::f2}) CHECK(parse_ring(ring_name(r)) == r);
    CHECK_THROWS(parse_ring("r"));
}

TEST_CASE("zero differential: homology is the chain groups") {
    BigradedComplex c = build_complex(support::load_fixture("virtual_trefoil").diagram, Algebra::khovanov);
    for (auto& m : c.boundary)
        for (auto& col : m.columns) col.clear();
    const HomologyTable t = homology_of(c, Ring::z);
    std::size_t dims = 0;
    for (auto d : c.dims) dims += d;
    CHECK(t.total_rank() == dims);
    for (std::size_t i = 0; i < c.dims.size(); ++i) {
        std::map<int, std::size_t> by_q;
        for (std::size_t g = 0; g < c.dims[i]; ++g) ++by_q[c.qgrade2(static_cast<int>(i), g)];
        for (const auto& [j2, n] : by_q) CHECK(free_at(t, 2 * static_cast<int>(i), j2) == n);
    }
}

TEST_CASE("classical Khovanov homology") {
    SUBCASE("stabilized unknot") {
        const auto t = kh_oriented(support::load_fixture("unknot_two_kinks").diagram);
        CHECK(t.entries == whole({{0, 1, Z()}, {0, -1, Z()}}));
    }
    SUBCASE("right trefoil") {
        const auto t = kh_oriented(support::load_fixture("trefoil_right").diagram);
        CHECK(t.entries == whole({{0, 1, Z()}, {0, 3, Z()}, {2, 5, Z()}, {3, 7, torsion({2})}, {3, 9, Z()}}));
    }
    SUBCASE("left trefoil") {
        const auto t = kh_oriented(support::load_fixture("trefoil_left").diagram);
        CHECK(t.entries ==
              whole({{0, -1, Z()}, {0, -3, Z()}, {-2, -5, Z()}, {-2, -7, torsion({2})}, {-3, -9, Z()}}));
    }
    SUBCASE("figure eight") {
        const auto t = kh_oriented(support::load_fixture("figure_eight").diagram);
        CHECK(t.entries == whole({{-2, -5, Z()},
                                  {-1, -3, torsion({2})},
                                  {-1, -1, Z()},
                                  {0, -1, Z()},
                                  {0, 1, Z()},
                                  {1, 1, Z()},
                                  {2, 3, torsion({2})},
                                  {2, 5, Z()}}));
    }
    SUBCASE("Hopf links") {
        CHECK(kh_oriented(support::load_fixture("hopf_positive").diagram).entries ==
              whole({{0, 0, Z()}, {0, 2, Z()}, {2, 4, Z()}, {2, 6, Z()}}));
        CHECK(kh_oriented(support::load_fixture("hopf_negative").diagram).entries ==
              whole({{0, 0, Z()}, {0, -2, Z()}, {-2, -4, Z()}, {-2, -6, Z()}}));
    }
}

TEST_CASE("trefoil: one Z/2, rank four, consistent with Q and F2") {
    const Diagram d = support::load_fixture("trefoil_right").diagram;
    const auto z = kh_oriented(d);
    std::size_t free = 0, tors = 0;
    for (const auto& [k, g] : z.entries) {
        free += g.free_rank;
        tors += g.torsion.size();
    }
    CHECK(free == 4);
    CHECK(tors == 1);
    CHECK(kh_oriented(d, ring(Ring::q)).total_rank() == 4);
    CHECK(kh_oriented(d, ring(Ring::f2)).total_rank() == 6);
}

TEST_CASE("universal coefficients on every fixture") {
    for (const auto& fx : support::load_fixtures(8)) {
        for (auto theory : {kh_unoriented, bracket_homology}) {
            const auto z = theory(fx.diagram, ring(Ring::z));
            const auto q = theory(fx.diagram, ring(Ring::q));
            const auto f2 = theory(fx.diagram, ring(Ring::f2));
            for (const auto& [k, g] : q.entries) CHECK_MESSAGE(free_at(z, k.first, k.second) == g.free_rank, fx.name);
            for (const auto& [k, g] : z.entries) CHECK(free_at(q, k.first, k.second) == g.free_rank);
            std::set<std::pair<int, int>> keys;
            for (const auto& kv : z.entries) {
                keys.insert(kv.first);
                keys.insert({kv.first.first - 2, kv.first.second});
            }
            for (const auto& kv : f2.entries) keys.insert(kv.first);
            for (const auto& [i2, j2] : keys) {
                const std::size_t want = free_at(z, i2, j2) + even_torsion(z, i2, j2) + even_torsion(z, i2 + 2, j2);
                CHECK_MESSAGE(free_at(f2, i2, j2) == want, fx.name << " at " << i2 << ',' << j2);
            }
        }
    }
}

TEST_CASE("Euler characteristics") {
    for (const auto& fx : support::load_fixtures(8)) {
        const Diagram& d = fx.diagram;
        CHECK_MESSAGE(graded_euler(bracket_homology(d)) == kauffman_bracket(d), fx.name);
        const BigradedComplex c = build_complex(d, Algebra::khovanov);
        CHECK(graded_euler(homology_of(c, Ring::q)) == chain_euler(c));
        CHECK(graded_euler(kh_oriented(d)) == jones(d));

        const BigradedComplex lee = build_complex(d, Algebra::lee);
        const HomologyTable lt = homology_of(lee, Ring::q);
        long long homology = 0, chains = 0;
        for (const auto& [i2, g] : lt.by_degree) homology += (mod(i2, 4) ? -1 : 1) * static_cast<long long>(g.free_rank);
        for (std::size_t i = 0; i < lee.dims.size(); ++i) chains += (i % 2 ? -1 : 1) * static_cast<long long>(lee.dims[i]);
        CHECK(homology == chains);
    }
    CHECK(graded_euler(HomologyTable{}).is_zero());
}

TEST_CASE("shifts") {
    const Diagram d = support::load_fixture("virtual_hopf_L1").diagram;
    const HomologyTable b = bracket_homology(d);
    CHECK(shift(b, 0, 0).entries == b.entries);
    CHECK(shift(shift(b, 1, -3), 2, 5).entries == shift(b, 3, 2).entries);
    CHECK(shift(b, 1, 1).shift_h2 == b.shift_h2 + 1);

    for (const auto& fx : support::load_fixtures(8)) {
        const auto [h2, q2] = oriented_shift(fx.diagram);
        CHECK_MESSAGE(shift(bracket_homology(fx.diagram), h2, q2).entries == kh_oriented(fx.diagram).entries, fx.name);
        const auto [uh2, uq2] = unoriented_shift(fx.diagram, false);
        CHECK(shift(bracket_homology(fx.diagram), uh2, uq2).entries == kh_unoriented(fx.diagram).entries);
        if (fx.diagram.num_components() <= 1)
            CHECK(kh_oriented(fx.diagram).same_groups(kh_unoriented(fx.diagram)));
    }

    BigradedComplex c = build_complex(support::load_fixture("virtual_trefoil").diagram, Algebra::khovanov);
    const HomologyTable plain = homology_of(c, Ring::z);
    CHECK(homology_of(shift(c, 3, -1), Ring::z).entries == shift(plain, 3, -1).entries);
}

TEST_CASE("sign incorporation moves the homological grading by l~") {
    for (const auto& fx : support::load_fixtures(8)) {
        HomologyOptions o;
        o.incorporate_sign = true;
        const int lt = l_tilde2(lambda_tilde2(fx.diagram, ParityScheme::multi_core));
        CHECK_MESSAGE(kh_unoriented(fx.diagram, o).entries == shift(kh_unoriented(fx.diagram), lt, 0).entries, fx.name);
    }
}

TEST_CASE("Lee homology of classical links has rank 2^l") {
    for (const char* name : {"unknot_two_kinks", "trefoil_right", "trefoil_left", "figure_eight", "hopf_positive",
                             "hopf_negative", "r3_left", "hopf_unknot_split"}) {
        const Diagram d = support::load_fixture(name).diagram;
        const HomologyTable t = lee_unoriented(d, ring(Ring::q));
        CHECK_MESSAGE(t.total_rank() == (std::size_t(1) << d.num_components()), name);
        std::size_t filtered = 0;
        for (const auto& kv : t.filtration) filtered += kv.second;
        CHECK(filtered == t.total_rank());
    }
}

TEST_CASE("unshifted bracket homology agrees up to a uniform shift on equivalent diagrams") {
    for (const auto& fx : support::load_fixtures(8)) {
        if (fx.equivalent.empty()) continue;
        const HomologyTable a = bracket_homology(fx.diagram);
        const HomologyTable b = bracket_homology(support::load_fixture(fx.equivalent).diagram);
        REQUIRE(!a.entries.empty());
        REQUIRE(a.entries.size() == b.entries.size());
        const auto ka = a.entries.begin()->first, kb = b.entries.begin()->first;
        CHECK_MESSAGE(shift(a, kb.first - ka.first, kb.second - ka.second).entries == b.entries, fx.name);
    }
}

TEST_CASE("homology does not depend on the worker count") {
    const Diagram d = support::load_fixture("virtual_borromean_even").diagram;
    HomologyOptions one, four;
    four.jobs = 4;
    CHECK(kh_unoriented(d, one).entries == kh_unoriented(d, four).entries);
    CHECK(lee_unoriented(d, one).by_degree == lee_unoriented(d, four).by_degree);
}

TEST_CASE("tables round-trip through JSON") {
    for (const auto& fx : support::load_fixtures(7)) {
        for (const HomologyTable& t : {kh_unoriented(fx.diagram), lee_unoriented(fx.diagram, ring(Ring::q)),
                                       kh_oriented(fx.diagram, ring(Ring::f2))}) {
            const HomologyTable back = HomologyTable::from_json(nlohmann::json::parse(t.to_json().dump()));
            CHECK_MESSAGE(back.entries == t.entries, fx.name);
            CHECK(back.by_degree == t.by_degree);
            CHECK(back.filtration == t.filtration);
            CHECK(back.theory == t.theory);
            CHECK(back.ring == t.ring);
            CHECK(back.shift_h2 == t.shift_h2);
            CHECK(back.shift_q2 == t.shift_q2);
            CHECK(back.same_groups(t));
        }
    }
}

TEST_CASE("text rendering") {
    const std::string text = kh_unoriented(support::load_fixture("virtual_hopf_L0").diagram).to_text();
    CHECK(text.find("i=-1/2") != std::string::npos);
    CHECK(text.find("j=3/2") != std::string::npos);
    CHECK(text.find("euler:") != std::string::npos);
    const std::string lee = lee_unoriented(support::load_fixture("hopf_positive").diagram).to_text();
    CHECK(lee.find("euler:") != std::string::npos);
}

TEST_CASE("empty link") {
    const Diagram d = parse_diagram("PD[]");
    CHECK(kh_unoriented(d).entries == whole({{0, 0, Z()}}));
    CHECK(lee_unoriented(d).total_rank() == 1);
}
