#include <doctest.h>

#include <lcr/corpus.hpp>
#include <lcr/json_io.hpp>
#include <lcr/oracle.hpp>

using namespace lcr;

TEST_CASE("corpus is deterministic and mixed")
{
    auto a = small_corpus();
    auto b = small_corpus();
    REQUIRE(a.size() == b.size());
    std::size_t sat = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(canonical_dump(to_json(a[i].csp)) == canonical_dump(to_json(b[i].csp)));
        sat += brute_solve_csp(a[i].csp).has_value();
    }
    CHECK(sat > a.size() / 4);
    CHECK(sat < a.size() * 3 / 4 + a.size() / 5);
    CHECK(canonical_dump(to_json(random_csp(5, 3, 3, 3, 2))) != canonical_dump(to_json(random_csp(6, 3, 3, 3, 2))));
}

TEST_CASE("property: no relaxation refutes a satisfiable corpus instance")
{
    std::size_t checks = 0, skipped = 0;
    for (const auto & e : small_corpus()) {
        auto r = check_soundness(e.csp);
        for (const auto & v : r.violations)
            FAIL_CHECK(e.name << " refuted by " << v);
        checks += r.checks;
        skipped += r.skipped;
    }
    MESSAGE("soundness checks run: " << checks << ", skipped over caps: " << skipped);
    CHECK(checks > 1000);
}
