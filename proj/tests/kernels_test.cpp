#include <doctest.h>

#include "autostack/exec.hpp"
#include "autostack/instances.hpp"
#include "autostack/kernels.hpp"
#include "autostack/verify.hpp"

using namespace autostack;

TEST_CASE("word generators") {
  auto const alpha = Alphabet::with_inverses({"a", "b"});
  auto const all   = all_words(alpha, 3);
  CHECK(all.size() == 1 + 4 + 16 + 64);
  CHECK(std::is_sorted(all.begin(), all.end(), shortlex_less));
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  auto const r1 = random_words(alpha, 100, 7, 42), r2 = random_words(alpha, 100, 7, 42);
  CHECK(r1 == r2);
  CHECK(r1 != random_words(alpha, 100, 7, 43));
  for (auto const& w : r1) {
    CHECK(w.size() <= 7);
  }
}

TEST_CASE("for_each_index visits every index once") {
  for (auto exec : {Exec::serial, Exec::parallel}) {
    std::vector<int> hits(1000, 0);
    for_each_index(hits.size(), exec, [&](std::size_t i) { ++hits[i]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  CHECK(max_threads() >= 1);
}

TEST_CASE("parallel kernels match the serial references") {
  for (auto const& name : {"stallings", "heisenberg", "S3", "index2Z"}) {
    CAPTURE(name);
    auto const s       = builtin(name);
    auto const members = ball(s, 3, Exec::serial);
    CHECK(ball(s, 3, Exec::parallel) == members);
    CHECK(scan_edges(s, members, std::nullopt, Exec::serial) == scan_edges(s, members, std::nullopt, Exec::parallel));
    CHECK(relator_failures(s, members, Exec::serial) == relator_failures(s, members, Exec::parallel));
    auto const words = random_words(s.alphabet(), 300, 10, 7);
    CHECK(oracle_mismatches(s, words, Exec::serial) == oracle_mismatches(s, words, Exec::parallel));
    CHECK(oracle_mismatches(s, words, Exec::parallel).empty());

    VerifyOptions serial, parallel;
    serial.exec     = Exec::serial;
    auto const a    = verify(s, 2, serial);
    auto const b    = verify(s, 2, parallel);
    CHECK(format_report(a) == format_report(b));
  }
  auto const c = heisenberg_construction();
  auto const p = check_psi(c.structure, c.psi, 3, Exec::serial);
  auto const q = check_psi(c.structure, c.psi, 3, Exec::parallel);
  CHECK(p.pairs == q.pairs);
  CHECK(p.violations == q.violations);
  CHECK(p.indeterminate == q.indeterminate);
}

TEST_CASE("scan records") {
  auto const s     = builtin("Z2");
  auto const alpha = s.alphabet();
  auto const edges = scan_edges(s, {alpha.parse("a b")}, std::nullopt, Exec::serial);
  REQUIRE(edges.size() == 4);
  auto const& e = edges[0];  // (a b, a)
  CHECK(!e.tree);
  CHECK(e.matches == 1);
  CHECK(alpha.format(*e.stack) == "b^-1 a b");
  CHECK(alpha.format(*e.target) == "a a b");
  REQUIRE(e.path.size() == 3);
  CHECK(e.path[0].tree);
  CHECK(alpha.format(e.path[2].target) == "a a b");
  CHECK(edges[2].tree);  // (a b, b)
}
