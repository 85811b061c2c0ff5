#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "f2lab/subspace.hpp"

using namespace f2lab;

namespace {
std::uint64_t gauss_oracle(unsigned n, unsigned k, unsigned p) {
    if (k > n) return 0;
    unsigned __int128 num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        unsigned __int128 pn = 1, pk = 1;
        for (unsigned j = 0; j < n - i; ++j) pn *= p;
        for (unsigned j = 0; j < k - i; ++j) pk *= p;
        num *= pn - 1;
        den *= pk - 1;
    }
    return std::uint64_t(num / den);
}
}  // namespace

TEST_CASE("span basics") {
    GroupSpec g = GroupSpec::make(2, 3);
    CHECK(Subspace::span(g, std::vector<point_t>{}).dim() == 0);  // empty span = {0}
    // dependent triple 100, 010, 110 (masks 1, 2, 3)
    Subspace s = Subspace::span(g, std::vector<point_t>{1, 2, 3});
    CHECK(s.dim() == 2);
    CHECK(s.contains(3));
    CHECK(!s.contains(4));
    CHECK(s.contains(0));
    CHECK_THROWS_AS(Subspace::span(g, std::vector<point_t>{9}),
                    std::invalid_argument);
}

TEST_CASE("span over F_3: (2,1) = 2*(1,2) is dependent") {
    // hand-run Gaussian elimination: (2,1) - 2*(1,2) = (0,-3) = 0 mod 3,
    // so the pair has rank 1
    GroupSpec g = GroupSpec::make(3, 2);
    point_t v1 = g.from_digits(std::vector<std::uint32_t>{1, 2});
    point_t v2 = g.from_digits(std::vector<std::uint32_t>{2, 1});
    CHECK(Subspace::span(g, std::vector<point_t>{v1, v2}).dim() == 1);
    // (1,2),(1,1): det = 1-2 = -1 != 0 mod 3, full space
    point_t v3 = g.from_digits(std::vector<std::uint32_t>{1, 1});
    CHECK(Subspace::span(g, std::vector<point_t>{v1, v3}).dim() == 2);
}

TEST_CASE("RREF canonicity: random generating sets of one subspace agree") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        GroupSpec g = GroupSpec::make(trial % 2 ? 2 : 3, 5);
        Subspace v = sample_uniform_subspace(g, 1 + trial % 4, rng);
        // generate random elements of v, spanning with redundancy
        std::uniform_int_distribution<std::uint64_t> dist(0, v.size() - 1);
        std::vector<point_t> gens;
        for (int i = 0; i < 12; ++i) gens.push_back(v.element(dist(rng)));
        Subspace w = Subspace::span(g, gens);
        if (w.dim() == v.dim()) {
            CHECK(w == v);
            CHECK(w.basis() == v.basis());  // bit-identical encodings
        } else {
            CHECK(v.contains_subspace(w));
        }
    }
}

TEST_CASE("reduce yields the index-least coset element") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        GroupSpec g = GroupSpec::make(trial % 2 ? 2 : 3, 4);
        Subspace v = sample_uniform_subspace(g, 2, rng);
        std::uniform_int_distribution<std::uint64_t> dist(0, g.order - 1);
        point_t x = dist(rng);
        point_t rep = v.reduce(x);
        CHECK(v.contains(g.sub(x, rep)));
        for (std::uint64_t i = 0; i < v.size(); ++i)
            CHECK(rep <= g.add(x, v.element(i)));
    }
}

TEST_CASE("intersect") {
    GroupSpec g = GroupSpec::make(2, 4);
    std::mt19937_64 rng(3);
    Subspace v = sample_uniform_subspace(g, 3, rng);
    CHECK(v.intersect(v) == v);  // idempotence
    // two distinct hyperplanes of F_2^4 meet in dim 2
    Subspace h1 = Subspace::span(g, std::vector<point_t>{1, 2, 4});
    Subspace h2 = Subspace::span(g, std::vector<point_t>{1, 2, 8});
    CHECK(h1.intersect(h2).dim() == 2);
    // dimension formula lower bound on random pairs
    for (int t = 0; t < 100; ++t) {
        Subspace a = sample_uniform_subspace(g, 1 + t % 4, rng);
        Subspace b = sample_uniform_subspace(g, 1 + (t / 4) % 4, rng);
        Subspace c = a.intersect(b);
        CHECK(c.dim() >= a.dim() + b.dim() - int(g.n));
        for (std::uint64_t i = 0; i < c.size(); ++i) {
            CHECK(a.contains(c.element(i)));
            CHECK(b.contains(c.element(i)));
        }
    }
}

TEST_CASE("dim V' = n+1-d meets every d-space") {
    GroupSpec g = GroupSpec::make(2, 5);
    const std::uint32_t d = 2;
    std::vector<point_t> rows;
    for (std::uint32_t i = 0; i < g.n + 1 - d; ++i) rows.push_back(g.pow(i));
    Subspace vp = Subspace::span(g, rows);
    enumerate_subspaces(Subspace::whole(g), d, [&](const Subspace& v) {
        CHECK(v.intersect(vp).dim() >= 1);
        return true;
    });
}

TEST_CASE("enumeration counts equal gaussian binomials") {
    for (unsigned p : {2u, 3u}) {
        for (unsigned n = 0; n <= (p == 2 ? 6u : 4u); ++n) {
            GroupSpec g = GroupSpec::make(p, n);
            Subspace whole = Subspace::whole(g);
            for (unsigned k = 0; k <= n; ++k) {
                std::uint64_t cnt = 0;
                std::set<std::vector<point_t>> seen;
                enumerate_subspaces(whole, k, [&](const Subspace& v) {
                    ++cnt;
                    CHECK(v.dim() == int(k));
                    seen.insert(v.basis());
                    return true;
                });
                CHECK(cnt == gauss_oracle(n, k, p));
                CHECK(seen.size() == cnt);  // exactly once
            }
        }
    }
}

TEST_CASE("enumeration within a subspace") {
    GroupSpec g = GroupSpec::make(2, 6);
    std::mt19937_64 rng(19);
    Subspace v = sample_uniform_subspace(g, 4, rng);
    std::uint64_t cnt = 0;
    enumerate_subspaces(v, 2, [&](const Subspace& w) {
        ++cnt;
        CHECK(v.contains_subspace(w));
        return true;
    });
    CHECK(cnt == gauss_oracle(4, 2, 2));
    CHECK_THROWS_AS(enumerate_subspaces(v, 5, [](const Subspace&) { return true; }),
                    std::invalid_argument);
}

TEST_CASE("k=0 enumeration emits exactly the zero space") {
    GroupSpec g = GroupSpec::make(2, 3);
    std::uint64_t cnt = 0;
    enumerate_subspaces(Subspace::whole(g), 0, [&](const Subspace& v) {
        ++cnt;
        CHECK(v.dim() == 0);
        return true;
    });
    CHECK(cnt == 1);
}

TEST_CASE("sampling edge cases") {
    GroupSpec g = GroupSpec::make(2, 6);
    std::mt19937_64 rng(0);
    CHECK(sample_uniform_subspace(g, 6, rng).dim() == 6);  // whole space
    CHECK(sample_uniform_subspace(g, 0, rng).dim() == 0);  // {0} always
}

TEST_CASE("sampler point-inclusion frequency (small smoke)") {
    // acceptance runs the full 1e5-draw calibration; this is a quick check
    GroupSpec g = GroupSpec::make(2, 4);
    std::mt19937_64 rng(123);
    const int draws = 20000;
    std::vector<int> hits(g.order, 0);
    for (int i = 0; i < draws; ++i) {
        Subspace v = sample_uniform_subspace(g, 2, rng);
        for (std::uint64_t j = 0; j < v.size(); ++j) ++hits[v.element(j)];
    }
    double expect = 3.0 / 15.0;
    double sigma = std::sqrt(expect * (1 - expect) / draws);
    for (point_t s = 1; s < g.order; ++s) {
        double freq = double(hits[s]) / draws;
        CHECK(std::fabs(freq - expect) <= 4 * sigma);
    }
}

TEST_CASE("induced coordinates are a group isomorphism") {
    std::mt19937_64 rng(5);
    GroupSpec g = GroupSpec::make(2, 10);
    Subspace v = sample_uniform_subspace(g, 5, rng);
    // round-trip of every element
    for (std::uint64_t i = 0; i < v.size(); ++i) {
        point_t x = v.element(i);
        CHECK(v.coordinates(x) == i);
    }
    // addition preserved, exhaustively
    GroupSpec ind = v.induced_spec();
    for (std::uint64_t i = 0; i < v.size(); ++i)
        for (std::uint64_t j = 0; j < v.size(); ++j)
            CHECK(v.element(ind.add(i, j)) == g.add(v.element(i), v.element(j)));
    // whole space: identity on the standard basis image
    Subspace whole = Subspace::whole(GroupSpec::make(2, 3));
    Subspace vv = Subspace::span(GroupSpec::make(2, 3), std::vector<point_t>{3, 6});
    CHECK(vv.element(1) != 0);  // basis vector maps to a basis row
    CHECK(vv.coordinates(vv.element(1)) == 1);
    CHECK(whole.dim() == 3);
}

TEST_CASE("annihilator and coset indexer") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        GroupSpec g = GroupSpec::make(trial % 2 ? 2 : 3, 4);
        Subspace v = sample_uniform_subspace(g, trial % 3 + 1, rng);
        Subspace ann = v.annihilator();
        CHECK(ann.dim() + v.dim() == int(g.n));
        for (std::uint64_t i = 0; i < ann.size(); ++i)
            for (std::uint64_t j = 0; j < v.size(); ++j)
                CHECK(g.dot(ann.element(i), v.element(j)) == 0);
        CHECK(ann.annihilator() == v);  // double dual
        CosetIndexer idx(v);
        CHECK(idx.num_cosets() * v.size() == g.order);
        for (point_t x = 0; x < g.order; ++x) {
            std::uint64_t ci = idx.index_of(x);
            point_t rep = idx.min_rep(ci);
            CHECK(v.contains(g.sub(x, rep)));
            CHECK(rep == v.reduce(x));
        }
    }
}

TEST_CASE("coset representative and membership") {
    GroupSpec g = GroupSpec::make(2, 4);
    Subspace v = Subspace::span(g, std::vector<point_t>{0b0011, 0b0101});
    Coset c(v, 0b1000);
    CHECK(c.contains(0b1000));
    CHECK(c.contains(0b1011));
    CHECK(!c.contains(0));
    CHECK(c.rep == v.reduce(0b1000));
    CHECK(c.size() == 4);
}
