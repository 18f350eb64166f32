#include "support.hpp"

using namespace t;

namespace {

const auto ex2 = make_chains({3}, {2});

Support sup(std::vector<int> pos) {
    Support s;
    for (int p : pos) s.push_back(C(p));
    return s;
}

}  // namespace

TEST_CASE("peel options") {
    CHECK(peel_options(ex2, cls(ex2, 1, {1, 2, 1})) == std::vector<Support>{sup({1, 2}), sup({2}), sup({2, 3})});

    auto a1 = make_chains({1}, {1});
    CHECK(peel_options(a1, cls(a1, 1, {1})) == std::vector<Support>{sup({1})});

    auto a5 = make_chains({5}, {3});
    auto e5 = cls(a5, 1, {1, 2, 3, 2, 1});
    auto opts = peel_options(a5, e5);
    CHECK(opts.size() >= 6);
    for (const auto& l : opts) CHECK(pair(a5, e5, class_of(a5, l)) == -1);

    CHECK(code_of([&] { peel_options(ex2, minus_one_class(ex2)); }) == Errc::precondition);
    auto loop = build_config({Mode::relaxed, {{3, {1, 3}}}, std::nullopt});
    CHECK(code_of([&] { peel_options(loop, cls(loop, 1, {1, 1, 0})); }) == Errc::precondition);
    CHECK(code_of([&] { peel_options(ex2, cls(ex2, 1, {1, 3, 1})); }) == Errc::precondition);
}

TEST_CASE("peel") {
    CHECK(peel(ex2, cls(ex2, 1, {1, 2, 1}), sup({2})) == cls(ex2, 1, {1, 1, 1}));
    CHECK(peel(ex2, cls(ex2, 1, {1, 1, 1}), sup({1, 2, 3})) == minus_one_class(ex2));
    auto a1 = make_chains({1}, {1});
    CHECK(peel(a1, cls(a1, 1, {1}), sup({1})) == minus_one_class(a1));
    CHECK(code_of([] { peel(ex2, cls(ex2, 1, {1, 2, 1}), sup({1})); }) == Errc::precondition);
}

TEST_CASE("reduce") {
    auto d = reduce_class(ex2, minus_one_class(ex2), Strategy::all);
    CHECK(d.branch_count() == 1);
    REQUIRE(d.certificates().size() == 1);
    CHECK(d.certificates()[0].twists.empty());

    auto a2 = make_chains({2}, {1});
    auto first = reduce_class(a2, cls(a2, 1, {1, 1})).certificates();
    REQUIRE(first.size() == 1);
    REQUIRE(first[0].twists.size() == 2);
    CHECK(first[0].twists[0].support == sup({2}));
    CHECK(first[0].twists[1].support == sup({1}));
    CHECK(verify_certificate(a2, cls(a2, 1, {1, 1}), first[0]).ok());

    auto tree = reduce_class(ex2, cls(ex2, 1, {1, 2, 1}), Strategy::all);
    CHECK(tree.contains({sup({2}), sup({1, 2, 3})}));
    CHECK_FALSE(tree.contains({sup({2})}));
}

TEST_CASE("verify") {
    auto e = cls(ex2, 1, {1, 2, 1});
    auto rep = verify_certificate(ex2, e, fixtures::example2_certificate());
    CHECK(rep.ok());
    CHECK(rep.count(CheckStatus::fail) == 0);
    CHECK(rep.count(CheckStatus::unchecked) == 0);
    REQUIRE(rep.sheaf);
    CHECK(*rep.sheaf == AtomicSheaf::make({{D, 1, 0}, {C(1), 1, 0}, {C(2), 2, 0}, {C(3), 1, 0}}));

    auto loop = fixtures::loop_config();
    CHECK(verify_certificate(loop, cls(loop, 1, {1, 2, 1}), fixtures::example3_certificate()).ok());

    TwistCertificate bad;
    bad.twists.push_back({sup({1, 3}), std::nullopt});
    auto br = verify_certificate(ex2, cls(ex2, 1, {1, 0, 1}), bad);
    CHECK_FALSE(br.ok());
    bool spherical_failed = false;
    for (const auto& c : br.checks)
        if (c.name == "spherical" && c.status == CheckStatus::fail) spherical_failed = true;
    CHECK(spherical_failed);

    // class-level user certificate: the sheaf hypothesis stays unchecked
    auto plain = fixtures::example2_certificate();
    for (auto& t : plain.twists) t.sheaf.reset();
    plain.seed_degree.reset();
    auto pr = verify_certificate(ex2, e, plain);
    CHECK(pr.ok());
    CHECK(pr.count(CheckStatus::unchecked) == 2);
    plain.generated = true;
    CHECK(verify_certificate(ex2, e, plain).count(CheckStatus::guaranteed) == 2);

    // wrong degrees are caught at sheaf level
    auto wrong = with_sheaves(plain, -2, {O({2}, {0}), O({1, 2, 3}, {0, 0, 0})});
    CHECK_FALSE(verify_certificate(ex2, e, wrong).ok());
}

TEST_CASE("reduction terminates with telescoping branches") {
    auto cfg = make_chains({4, 2}, {2, 1});
    for (const auto& e : enumerate_exceptional_classes(cfg)) {
        auto tree = reduce_class(cfg, e, Strategy::all);
        auto certs = tree.certificates();
        CHECK(certs.size() == tree.branch_count());
        for (const auto& c : certs) {
            int total = 0;
            auto cur = minus_one_class(cfg);
            for (auto it = c.twists.rbegin(); it != c.twists.rend(); ++it) {
                total += static_cast<int>(it->support.size());
                cur = cur + class_of(cfg, it->support);
            }
            CHECK(cur == e);
            CHECK(total == e.chain_total());
            CHECK(verify_certificate(cfg, e, c).ok());
        }
    }
}
