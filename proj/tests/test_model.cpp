#include "doctest.h"

#include <random>

#include "plogic/errors.hpp"
#include "plogic/model.hpp"

using namespace plogic;

namespace {

// Two states, p true at state 0 only, T(0) = (3/4, 1/4), T(1) = (0, 1).
// Not introspective: state 0 gives its own kernel class only 3/4.
FiniteTypeSpace introspection_counter_model() {
  FiniteTypeSpace m;
  m.num_states = 2;
  m.kernels = {{{{0, Rat(3, 4)}, {1, Rat(1, 4)}}, {{1, Rat(1)}}}};
  StateSet p(2);
  p.set(0);
  m.valuation[1] = p;
  validate_space(m);
  return m;
}

FiniteTypeSpace one_state_model() {
  FiniteTypeSpace m;
  m.num_states = 1;
  m.kernels = {{{{0, Rat(1)}}}};
  m.valuation[1] = full_set(1);
  validate_space(m);
  return m;
}

// Two states sharing the uniform kernel; Harsanyi.
FiniteTypeSpace uniform_two_state_model() {
  FiniteTypeSpace m;
  m.num_states = 2;
  KernelRow row{{0, Rat(1, 2)}, {1, Rat(1, 2)}};
  m.kernels = {{row, row}};
  StateSet p(2);
  p.set(0);
  m.valuation[1] = p;
  validate_space(m);
  return m;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("satisfaction clauses on the counter-model") {
    auto m = introspection_counter_model();
    CHECK(evaluate(m, 0, parse("L[1/2] p1")));            // 3/4 >= 1/2
    CHECK_FALSE(evaluate(m, 0, parse("L[1] L[1/2] p1"))); // class of L-half-p is {0}, mass 3/4
    CHECK(evaluate(m, 0, parse("L[0] p1")));
    CHECK(evaluate(m, 1, parse("L[0] p1")));
    CHECK(evaluate(m, 0, parse("M[1/4] ~p1")));           // mu(~p) = 1/4 <= 1/4
    CHECK_FALSE(evaluate(m, 1, parse("p1")));
  }

  TEST_CASE("extension basics") {
    auto m = introspection_counter_model();
    CHECK(extension(m, parse("p1 | ~p1")) == full_set(2));
    CHECK(extension(m, parse("p1")) == m.valuation[1]);
    StateSet only0(2);
    only0.set(0);
    CHECK(extension(m, parse("L[1/2] p1")) == only0);
  }

  TEST_CASE("unknown letters and missing agents are errors") {
    auto m = one_state_model();
    CHECK_THROWS_AS(evaluate(m, 0, parse("p7")), ModelError);
    CHECK_THROWS_AS(evaluate(m, 0, parse("L_2[1/2] p1")), ModelError);
    CHECK_THROWS_AS(evaluate(m, 0, parse("K p1")), ModelError);  // bare type space
  }

  TEST_CASE("belief_event boundary properties") {
    auto m = introspection_counter_model();
    StateSet e(2);
    e.set(0);
    CHECK(belief_event(m, 0, Rat(0), e) == full_set(2));
    CHECK(belief_event(m, 0, Rat(1), full_set(2)) == full_set(2));
    CHECK(belief_event(m, 0, Rat(1, 2), e) == e);
  }

  TEST_CASE("Harsanyi recognition") {
    CHECK(is_harsanyi(one_state_model(), 0));
    CHECK(is_harsanyi(uniform_two_state_model(), 0));
    CHECK_FALSE(is_harsanyi(introspection_counter_model(), 0));
  }

  TEST_CASE("both Harsanyi formulations agree on random models") {
    std::mt19937 rng(3);
    int harsanyi_seen = 0;
    for (int i = 0; i < 60; ++i) {
      auto m = (i % 2 == 0) ? random_type_space(rng, 2 + (int)(rng() % 3), 1, 4, 1)
                            : random_harsanyi_space(rng, 2 + (int)(rng() % 3), 1, 4, 1);
      bool h = is_harsanyi(m, 0);
      CHECK(h == is_harsanyi_hprime(m, 0));
      if (h) harsanyi_seen++;
    }
    CHECK(harsanyi_seen >= 30);  // the generator really does produce them
  }

  TEST_CASE("random Harsanyi spaces are Harsanyi for every agent") {
    std::mt19937 rng(5);
    for (int i = 0; i < 40; ++i) {
      auto m = random_harsanyi_space(rng, 2 + (int)(rng() % 4), 2, 6, 2);
      CHECK(is_harsanyi(m));
    }
  }

  TEST_CASE("belief antitone in the index and semantic A5") {
    std::mt19937 rng(9);
    for (int i = 0; i < 30; ++i) {
      auto m = random_type_space(rng, 3, 1, 4, 1);
      for (uint64_t mask = 0; mask < 8; ++mask) {
        StateSet e(3, mask);
        StateSet prev = belief_event(m, 0, Rat(0), e);
        for (int k = 1; k <= 4; ++k) {
          StateSet cur = belief_event(m, 0, Rat(k, 4), e);
          CHECK(cur.is_subset_of(prev));
          prev = cur;
        }
        for (int r = 0; r <= 4; ++r)
          for (int s = 0; s <= 4; ++s) {
            if (r + s <= 4) continue;
            CHECK((belief_event(m, 0, Rat(r, 4), e) &
                   belief_event(m, 0, Rat(s, 4), ~e)).none());
          }
      }
    }
  }

  TEST_CASE("operator law report") {
    auto good = uniform_two_state_model();
    auto report = check_operator_laws(good, 0, 2);
    for (const char* law : {"1", "2", "3", "4", "5", "6", "7"})
      CHECK(report.law_passed(law));
    CHECK(report.law_passed("4p"));
    CHECK(report.law_passed("5p"));

    auto bad = introspection_counter_model();
    auto bad_report = check_operator_laws(bad, 0, 2);
    for (const char* law : {"1", "2", "3", "4", "5", "6", "7"})
      CHECK(bad_report.law_passed(law));
    CHECK_FALSE(bad_report.law_passed("4p"));
  }

  TEST_CASE("validate_kb_space catches each failure mode") {
    // Discrete partition over the uniform Harsanyi model: cells are believed
    // with probability 1/2, so the certainty condition fails at E = {w}.
    KnowledgeBeliefSpace kb;
    kb.base = uniform_two_state_model();
    StateSet c0(2), c1(2);
    c0.set(0);
    c1.set(1);
    kb.partitions = {{c0, c1}};
    auto report = validate_kb_space(kb);
    CHECK_FALSE(report.all_passed());
    CHECK(report.checks[0].passed);   // structurally a partition
    CHECK(report.checks[1].passed);   // base is Harsanyi
    CHECK_FALSE(report.checks[2].passed);

    // Overlapping cells: structural error.
    KnowledgeBeliefSpace overlap;
    overlap.base = uniform_two_state_model();
    overlap.partitions = {{full_set(2), c0}};
    CHECK_FALSE(validate_kb_space(overlap).checks[0].passed);
  }

  TEST_CASE("extend_to_kb") {
    auto kb = extend_to_kb(one_state_model());
    CHECK(kb.partitions[0].size() == 1);
    CHECK(validate_kb_space(kb).all_passed());

    CHECK_THROWS_AS(extend_to_kb(introspection_counter_model()), ModelError);

    std::mt19937 rng(13);
    for (int i = 0; i < 25; ++i) {
      auto m = random_harsanyi_space(rng, 2 + (int)(rng() % 4), 2, 4, 1);
      CHECK(validate_kb_space(extend_to_kb(m)).all_passed());
    }
  }

  TEST_CASE("knowledge interaction laws on extended spaces") {
    std::mt19937 rng(41);
    for (int i = 0; i < 10; ++i) {
      auto m = random_harsanyi_space(rng, 2 + (int)(rng() % 3), 1, 4, 1);
      auto kb = extend_to_kb(m);
      auto report = check_operator_laws(kb, 0, 2);
      CHECK(report.all_passed());
    }
    // A partition coarser than kernel equality breaks the knowledge laws.
    FiniteTypeSpace two;
    two.num_states = 2;
    two.kernels = {{{{0, Rat(1)}}, {{1, Rat(1)}}}};
    two.valuation[1] = full_set(2);
    KnowledgeBeliefSpace coarse{two, {{full_set(2)}}};
    auto bad = check_operator_laws(coarse, 0, 1);
    CHECK_FALSE(bad.law_passed("B<=KB"));
  }

  TEST_CASE("knowledge semantics on an extended space") {
    auto kb = extend_to_kb(uniform_two_state_model());
    // Single cell {0,1}: K p1 is false everywhere, K (p1 | ~p1) true.
    CHECK_FALSE(evaluate(kb, 0, parse("K p1")));
    CHECK(evaluate(kb, 0, parse("K (p1 | ~p1)")));
    CHECK(evaluate(kb, 0, parse("K (p1 | ~p1) -> L[1] (p1 | ~p1)")));
  }

  TEST_CASE("JSON round trip") {
    std::mt19937 rng(21);
    auto m = random_harsanyi_space(rng, 4, 2, 4, 2);
    auto j = space_to_json(m);
    auto back = space_from_json(j);
    CHECK(back.num_states == m.num_states);
    CHECK(back.kernels == m.kernels);
    CHECK(back.valuation == m.valuation);

    auto kb = extend_to_kb(m);
    auto jkb = kb_to_json(kb);
    auto kb_back = kb_from_json(jkb);
    CHECK(kb_back.partitions == kb.partitions);
  }

  TEST_CASE("bad models are rejected") {
    nlohmann::json j = {
        {"states", 2},
        {"agents", 1},
        {"kernels", {{{"1/2", "1/4"}, {"0/1", "1/1"}}}},  // first row sums to 3/4
        {"valuation", {{"p1", {0}}}},
    };
    CHECK_THROWS_AS(space_from_json(j), ModelError);
  }
}
