#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace cartan;

namespace {

// all compositions of n with at least two parts
std::vector<std::vector<int>> compositions(int n) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (int pos = 0; pos < n - 1; ++pos) {
      if (mask & (1u << pos)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.push_back(std::move(parts));
  }
  return out;
}

// independent rule evaluator: all rows of the condition table, in precedence
// order
std::vector<Case> matching_rows(const TripleSpec& s) {
  const int k = s.k(), l = s.l(), N = s.min_l_part(), M = s.min_h_part();
  std::vector<Case> rows;
  if (k == 2 && l == 2) rows.push_back(Case::Zero);
  if (k == 3 && N == 1 && l == 2) rows.push_back(Case::I);
  if (k == 3 && N >= 2 && l == 2 && M == 2) rows.push_back(Case::II);
  if (l == 2 && M == 1) rows.push_back(Case::III);
  if (k == 2 && l == 3 && M == 1) rows.push_back(Case::IPrime);
  if (k == 2 && N == 2 && l == 3 && M >= 2) rows.push_back(Case::IIPrime);
  if (k == 2 && N == 1) rows.push_back(Case::IIIPrime);
  return rows;
}

}  // namespace

TEST_CASE("classify: table examples") {
  CHECK(classify({4, {2, 2}, {2, 2}}).c == Case::Zero);
  CHECK(classify({6, {1, 2, 3}, {3, 3}}).c == Case::I);
  CHECK(classify({6, {2, 2, 2}, {2, 4}}).c == Case::II);
  CHECK(classify({4, {1, 1, 1, 1}, {2, 2}}).c == Case::NotSurjective);
  // overlapping rows: Case 0 wins over Case III by precedence
  CHECK(classify({6, {3, 3}, {1, 5}}).c == Case::Zero);
  // primed rows
  CHECK(classify({6, {3, 3}, {1, 2, 3}}).c == Case::IPrime);
  CHECK(classify({6, {2, 4}, {2, 2, 2}}).c == Case::IIPrime);
  CHECK(classify({6, {1, 5}, {1, 2, 3}}).c == Case::IIIPrime);
  CHECK(classify({6, {1, 2, 3}, {1, 2, 3}}).c == Case::NotSurjective);
}

TEST_CASE("classify: invalid specs") {
  CHECK_THROWS_AS(classify({4, {2, 3}, {2, 2}}), InvalidSpec);
  CHECK_THROWS_AS(classify({4, {4}, {2, 2}}), InvalidSpec);
  CHECK_THROWS_AS(classify({4, {2, 0, 2}, {2, 2}}), InvalidSpec);
}

TEST_CASE("classify: exhaustive agreement with the rule-evaluation oracle") {
  for (int n = 2; n <= 8; ++n) {
    const auto comps = compositions(n);
    for (const auto& lp : comps) {
      for (const auto& hp : comps) {
        const TripleSpec s{n, lp, hp};
        const CaseLabel got = classify(s);
        const std::vector<Case> rows = matching_rows(s);
        if (rows.empty()) {
          REQUIRE(got.c == Case::NotSurjective);
        } else {
          REQUIRE(got.c == rows.front());  // precedence = first matching row
        }
      }
    }
  }
}

TEST_CASE("b_shape: lengths per case") {
  CHECK(b_shape(Case::Zero, {4, {2, 2}, {2, 2}}).length == 2);
  CHECK(b_shape(Case::I, {6, {1, 2, 3}, {3, 3}}).length == 5);  // min(6,6,5,7)
  CHECK(b_shape(Case::II, {6, {2, 2, 2}, {2, 4}}).length == 5);
  CHECK(b_shape(Case::III, {5, {1, 1, 2, 1}, {1, 4}}).length == 3);  // k - 1
  CHECK_THROWS_AS(b_shape(Case::NotSurjective, {4, {2, 2}, {2, 2}}), NotApplicable);
}

TEST_CASE("b_shape: at least 10 specs per case match the shape table") {
  int count0 = 0, count1 = 0, count2 = 0, count3 = 0;
  for (int n = 4; n <= 9; ++n) {
    const auto comps = compositions(n);
    for (const auto& lp : comps) {
      for (const auto& hp : comps) {
        const TripleSpec s{n, lp, hp};
        const CaseLabel label = classify(s);
        if (label.c == Case::NotSurjective) continue;
        const BShape shape = b_shape(label.c, s);
        switch (unprimed(label.c)) {
          case Case::Zero: {
            const TripleSpec t = label.swapped ? s.swapped() : s;
            CHECK(shape.length == std::min(std::min(t.l_parts[0], t.l_parts[1]),
                                           std::min(t.h_parts[0], t.h_parts[1])));
            ++count0;
            break;
          }
          case Case::I: {
            const TripleSpec t = label.swapped ? s.swapped() : s;
            std::vector<int> rest;
            bool taken = false;
            for (int part : t.l_parts) {
              if (part == 1 && !taken) {
                taken = true;
                continue;
              }
              rest.push_back(part);
            }
            const int expect = std::min(std::min(2 * t.h_parts[0], 2 * t.h_parts[1]),
                                        std::min(2 * rest[0] + 1, 2 * rest[1] + 1));
            CHECK(shape.length == expect);
            ++count1;
            break;
          }
          case Case::II:
            CHECK(shape.length == 5);
            ++count2;
            break;
          case Case::III: {
            const TripleSpec t = label.swapped ? s.swapped() : s;
            CHECK(shape.length == t.k() - 1);
            ++count3;
            break;
          }
          default:
            break;
        }
      }
    }
  }
  CHECK(count0 >= 10);
  CHECK(count1 >= 10);
  CHECK(count2 >= 10);
  CHECK(count3 >= 10);
}
