#include "doctest.h"
#include "hcomm/cube.hpp"
#include "hcomm/error.hpp"

using namespace hcomm;

namespace {

// (a,b,c,d) = (0,1,2,3) in colex order over {0,1}.
Cube abcd() { return Cube(IndexSet{0, 1}, {0, 1, 2, 3}); }

std::vector<Element> v(std::initializer_list<Element> xs) { return xs; }

}  // namespace

TEST_CASE("index sets") {
  IndexSet s{2, 0, 5};
  CHECK(s.to_string() == "{0,2,5}");
  CHECK(s.position(5) == 2);
  CHECK_THROWS_AS(s.position(1), InvalidArgument);
  CHECK(s.without(2) == IndexSet{0, 5});
  CHECK(s.minus(IndexSet{0}) == IndexSet{2, 5});
  CHECK_THROWS_AS(IndexSet({1, 1}), InvalidArgument);
}

TEST_CASE("bit helpers") {
  CHECK(insert_bit(0b11, 1, 0) == 0b101);
  CHECK(insert_bit(0b11, 0, 0) == 0b110);
  CHECK(remove_bit(0b101, 1) == 0b11);
}

TEST_CASE("faces") {
  auto const g = abcd();
  auto const f00 = face(g, 0, 0);
  CHECK(std::vector(f00.labels().begin(), f00.labels().end()) == v({0, 2}));
  auto const f11 = face(g, 1, 1);
  CHECK(std::vector(f11.labels().begin(), f11.labels().end()) == v({2, 3}));
  CHECK(face(face(g, 0, 0), 1, 0).labels()[0] == 0);
  CHECK(face(g, 0, 0).shape() == IndexSet{1});
  CHECK_THROWS_AS(face(g, 2, 0), InvalidArgument);
}

TEST_CASE("reflections and symmetries") {
  auto const g = abcd();
  CHECK(refl(g, 0, 1) == Cube(IndexSet{0, 1}, {1, 1, 3, 3}));
  CHECK(sym(g, 0) == Cube(IndexSet{0, 1}, {1, 0, 3, 2}));
  CHECK(sym(sym(g, 1), 1) == g);
  CHECK(refl(g, 1, 0) == Cube(IndexSet{0, 1}, {0, 1, 0, 1}));
}

TEST_CASE("cut and glue") {
  auto const g = abcd();
  auto const c = cut(IndexSet{1}, g);
  CHECK(c.outer == IndexSet{1});
  REQUIRE(c.labels.size() == 2);
  CHECK(c.labels[0] == Cube(IndexSet{0}, {0, 1}));
  CHECK(c.labels[1] == Cube(IndexSet{0}, {2, 3}));
  CHECK(glue(c) == g);
  CHECK(glue(cut(IndexSet{}, g)) == g);
  CHECK(glue(cut(IndexSet{0, 1}, g)) == g);

  std::vector<Element> labels(16);
  for (Element i = 0; i < 16; ++i) {
    labels[i] = i;
  }
  Cube const big(IndexSet{0, 3, 7, 9}, labels);
  for (IndexSet q : {IndexSet{0}, IndexSet{3, 9}, IndexSet{0, 7, 9}, IndexSet{7}}) {
    auto const nested = cut(q, big);
    CHECK(glue(nested) == big);
    CHECK(cut(q, glue(nested)) == nested);
  }
  NestedCube bad{IndexSet{0}, IndexSet{0}, {Cube(IndexSet{0}, {0, 1}), Cube(IndexSet{0}, {0, 1})}};
  CHECK_THROWS_AS(glue(bad), InvalidArgument);
}

TEST_CASE("lines agree with cut") {
  std::vector<Element> labels(8);
  for (Element i = 0; i < 8; ++i) {
    labels[i] = i;
  }
  Cube const g(IndexSet{0, 1, 2}, labels);
  for (std::size_t i = 0; i < 3; ++i) {
    auto const ls = lines(g, i);
    auto const nested = cut(g.shape().without(i), g);
    REQUIRE(ls.size() == nested.labels.size());
    for (std::size_t b = 0; b < ls.size(); ++b) {
      CHECK(ls[b].first == nested.labels[b][0]);
      CHECK(ls[b].second == nested.labels[b][1]);
    }
  }
}

TEST_CASE("supporting and pivot lines") {
  auto const g = abcd();
  auto const p = pivot_line(g, 0);
  CHECK(p.first == 2);
  CHECK(p.second == 3);
  auto const s = supporting_lines(g, 0);
  REQUIRE(s.size() == 1);
  CHECK(s[0].first == 0);
  CHECK(s[0].second == 1);
  CHECK(cross_section_lines(g, 1).size() == 2);
  auto const sq = cross_section_squares(g, 0, 1);
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].corners == std::array<Element, 4>{0, 1, 2, 3});
  auto const tr = cross_section_squares(g, 1, 0);
  CHECK(tr[0].corners == std::array<Element, 4>{0, 2, 1, 3});
}

TEST_CASE("generator cubes") {
  IndexSet const s{0, 1};
  CHECK(cube_generator(s, 0, 5, 6) == Cube(s, {5, 6, 5, 6}));
  CHECK(cube_generator(s, 1, 5, 6) == Cube(s, {5, 5, 6, 6}));
  CHECK(commutator_cube(s, 5, 6) == Cube(s, {5, 5, 5, 6}));
  CHECK_THROWS_AS(cube_generator(s, 3, 0, 1), InvalidArgument);
}
