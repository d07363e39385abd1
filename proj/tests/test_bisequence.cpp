#include "doctest.h"

#include "plogic/bisequence.hpp"
#include "plogic/errors.hpp"
#include "plogic/model.hpp"

using namespace plogic;

TEST_SUITE("bisequence") {
  TEST_CASE("state counts and coordinate encoding") {
    CHECK(build_space(1).num_states() == 8);
    CHECK(build_space(2).num_states() == 32);
    CHECK(build_space(3).num_states() == 128);
    CHECK_THROWS_AS(build_space(0), std::invalid_argument);
    CHECK_THROWS_AS(build_space(11), std::invalid_argument);

    auto space = build_space(3);
    for (int s = 0; s < space.num_states(); ++s) {
      uint32_t a = space.a_bits(s), b = space.b_bits(s);
      CHECK((a & 1u) == (b & 1u));  // shared first digit
      CHECK(space.index_of(a, b) == s);
    }
  }

  TEST_CASE("class sizes follow the free-coordinate count") {
    for (int n : {1, 2, 3, 4}) {
      auto space = build_space(n);
      for (int s = 0; s < space.num_states(); ++s) {
        uint32_t a = space.a_bits(s);
        int zeros = 0;
        for (int k = 1; k <= n; ++k)
          if (!((a >> k) & 1u)) zeros++;
        CHECK(space.class_size(0, s) == (1 << (zeros + 1)));
      }
    }
  }

  TEST_CASE("classes partition the space and are agent-symmetric") {
    auto space = build_space(3);
    for (int agent : {0, 1}) {
      StateSet seen(space.num_states());
      for (int s = 0; s < space.num_states(); ++s) {
        StateSet cls = class_of(space, agent, s);
        CHECK(cls.test(s));
        if (seen.test(s)) continue;
        CHECK((seen & cls).none());
        seen |= cls;
      }
      CHECK(seen.all());
    }
  }

  TEST_CASE("kernel cases for the event [b1=0] & [a1=1]") {
    auto space = build_space(2);
    StateSet e = space.coord_event('b', 1, 0) & space.coord_event('a', 1, 1);
    for (int s = 0; s < space.num_states(); ++s) {
      uint32_t a = space.a_bits(s), b = space.b_bits(s);
      Rat p = kernel_prob(space, 0, s, e);
      if (!((a >> 1) & 1u))
        CHECK(p == Rat(0));  // a1 = 0
      else if ((a >> 2) & 1u)
        CHECK(p == ((b >> 1) & 1u ? Rat(0) : Rat(1)));  // a2 = 1 pins b1
      else
        CHECK(p == Rat(1, 2));  // a2 = 0 leaves b1 free
    }
  }

  TEST_CASE("kernels are probability measures, constant on classes") {
    auto space = build_space(2);
    for (int agent : {0, 1})
      for (int s = 0; s < space.num_states(); ++s) {
        CHECK(kernel_prob(space, agent, s, full_set(space.num_states())) == 1);
        CHECK(kernel_prob(space, agent, s, class_of(space, agent, s)) == 1);
        for (int peer : space.class_members(agent, s))
          CHECK(kernel_prob(space, agent, peer, space.x_event()) ==
                kernel_prob(space, agent, s, space.x_event()));
      }
  }

  TEST_CASE("half-threshold J-operators saturate") {
    auto space = build_space(2);
    for (int agent : {0, 1}) {
      StateSet e = space.coord_event('b', 1, 1);
      CHECK(j_event(space, agent, Rat(1, 2), e) == full_set(space.num_states()));
      CHECK(j_event(space, agent, Rat(1, 2), space.x_event()) ==
            full_set(space.num_states()));
    }
  }

  TEST_CASE("J is blind to complement") {
    auto space = build_space(3);
    for (const Rat& r : {Rat(1), Rat(3, 4), Rat(1, 2)}) {
      StateSet e = space.coord_event('b', 2, 1) & space.coord_event('a', 1, 1);
      CHECK(j_event(space, 0, r, e) == j_event(space, 0, r, ~e));
      CHECK(j_event(space, 1, r, e) == j_event(space, 1, r, ~e));
    }
  }

  TEST_CASE("first-step coordinate identity") {
    auto space = build_space(2);
    CHECK(j_event(space, 0, Rat(1), space.coord_event('b', 0, 1)) ==
          space.coord_event('a', 1, 1));
  }

  TEST_CASE("coordinate lemma holds above one half and breaks at it") {
    auto space = build_space(4);
    CHECK(verify_coordinate_lemma(space, Rat(1)).all_passed());
    CHECK(verify_coordinate_lemma(space, Rat(3, 4)).all_passed());
    CHECK(verify_coordinate_lemma(space, Rat(2, 3)).all_passed());
    auto broken = verify_coordinate_lemma(space, Rat(1, 2));
    CHECK_FALSE(broken.all_passed());
  }

  TEST_CASE("worked J-list is a nonempty coordinate cylinder") {
    auto space = build_space(3);
    StateSet e = jlist_event(space, {true, true, false}, Rat(1));
    StateSet expected = space.x_event() & space.coord_event('a', 1, 1) &
                        space.coord_event('b', 2, 0);
    CHECK(e == expected);
    CHECK(e.any());
  }

  TEST_CASE("all-negative lists stay consistent at r = 1") {
    auto space = build_space(5);
    for (int m = 1; m <= 6; ++m) {
      std::vector<bool> signs(m, false);
      CHECK(jlist_event(space, signs, Rat(1)).any());
    }
  }

  TEST_CASE("negated entries at r = 1/2 empty the list") {
    auto space = build_space(4);
    for (uint32_t pattern = 0; pattern < 16; ++pattern) {
      std::vector<bool> signs(4);
      bool has_inner_negation = false;
      for (int j = 0; j < 4; ++j) {
        signs[j] = (pattern >> j) & 1;
        if (j > 0 && !signs[j]) has_inner_negation = true;
      }
      StateSet e = jlist_event(space, signs, Rat(1, 2));
      CHECK(e.any() == !has_inner_negation);
    }
  }

  TEST_CASE("consistent list counts") {
    auto space = build_space(5);
    CHECK(count_consistent_jlists(space, 3, Rat(1)) == 8);
    CHECK(count_consistent_jlists(space, 6, Rat(1)) == 64);
    CHECK(count_consistent_jlists(space, 2, Rat(1, 2)) == 2);
    for (int m = 1; m <= 6; ++m)
      CHECK(count_consistent_jlists(space, m, Rat(1)) == (1ull << m));
    CHECK(count_consistent_jlists(space, 4, Rat(1), 4) ==
          count_consistent_jlists(space, 4, Rat(1), 1));
    CHECK_THROWS_AS(count_consistent_jlists(space, 7, Rat(1)), std::invalid_argument);
  }

  TEST_CASE("exported space is introspective for both agents") {
    auto space = build_space(3);
    auto m = export_type_space(space);
    validate_space(m);
    CHECK(m.num_states == 128);
    CHECK(is_harsanyi(m, 0));
    CHECK(is_harsanyi(m, 1));
    // Kernel equality classes coincide with the information classes.
    auto classes = kernel_equality_classes(m, 0);
    CHECK(classes.size() == 27);  // sum over a-patterns of 2^(#ones) = 3^n
    for (const auto& cls : classes) {
      int first = (int)cls.find_first();
      CHECK(cls == class_of(space, 0, first));
    }
  }
}
