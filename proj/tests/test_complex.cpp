#include <algorithm>

#include "doctest.h"

#include "collapsar/two_complex.hpp"

using namespace collapsar;

TEST_CASE("presentation complex cell counts") {
  Presentation torus = parse_presentation("<a,b|[a,b]>");
  TwoComplex c = presentation_complex(torus);
  CHECK(c.num_vertices == 1);
  CHECK(c.num_edges() == 2);
  CHECK(c.num_faces() == 1);
  CHECK(c.euler_characteristic() == 0);

  Presentation dunce = parse_presentation("<a|aaA>");
  TwoComplex d = presentation_complex(dunce);
  CHECK(d.num_vertices == 1);
  CHECK(d.num_edges() == 1);
  CHECK(d.num_faces() == 1);
  CHECK(d.euler_characteristic() == 1);
  CHECK_FALSE(d.face_immersed(0));

  Presentation wedge = parse_presentation("<a,b|>");
  TwoComplex e = presentation_complex(wedge);
  CHECK(e.num_faces() == 0);
  CHECK(e.euler_characteristic() == -1);
}

TEST_CASE("chi = 1 - generators + relators for presentation complexes") {
  for (const char* s : {"<a,b|[a,b]>", "<a|aaA>", "<a,b|ab,b>", "<a,b,c|aAb,bc>"}) {
    Presentation p = parse_presentation(s);
    TwoComplex c = presentation_complex(p);
    CHECK(c.euler_characteristic() ==
          1 - static_cast<int>(p.generators.size()) + static_cast<int>(p.relators.size()));
  }
}

TEST_CASE("link of the torus vertex") {
  Presentation torus = parse_presentation("<a,b|[a,b]>");
  TwoComplex c = presentation_complex(torus);
  LinkGraph g = link(c, 0);
  CHECK(g.nodes.size() == 4);
  CHECK(g.arcs.size() == 4);
  auto gi = girth(g);
  REQUIRE(gi.has_value());
  CHECK(*gi == 4);
}

TEST_CASE("link of a wedge of two circles is a forest") {
  Presentation p = parse_presentation("<a,b|>");
  TwoComplex c = presentation_complex(p);
  LinkGraph g = link(c, 0);
  CHECK(g.nodes.size() == 4);
  CHECK(g.arcs.empty());
  CHECK_FALSE(girth(g).has_value());
}

TEST_CASE("link of the dunce cap vertex") {
  Presentation dunce = parse_presentation("<a|aaA>");
  TwoComplex c = presentation_complex(dunce);
  LinkGraph g = link(c, 0);
  CHECK(g.nodes.size() == 2);
  CHECK(g.arcs.size() == 3);
  auto gi = girth(g);
  REQUIRE(gi.has_value());
  CHECK(*gi == 1);  // loops from the aa corner
}

TEST_CASE("link arc count equals total relator length") {
  for (const char* s : {"<a,b|[a,b]>", "<a|aaA>", "<a,b|ab,b>", "<a,b,c|aAb,bc>"}) {
    Presentation p = parse_presentation(s);
    TwoComplex c = presentation_complex(p);
    CHECK(static_cast<int>(link(c, 0).arcs.size()) == p.total_relator_length());
  }
}

TEST_CASE("girth handles loops, parallels, and simple cycles") {
  LinkGraph g;
  g.nodes = {0, 1, 2, 3};
  g.arcs = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  CHECK(girth(g) == 4);
  g.arcs.push_back({0, 1});
  CHECK(girth(g) == 2);
  g.arcs.push_back({2, 2});
  CHECK(girth(g) == 1);
}

TEST_CASE("quotient_duplicates merges duplicate faces only") {
  // two faces on the same boundary cycle, one reversed
  TwoComplexBuilder b;
  int v = b.add_vertex();
  int da = b.add_edge(v, v, Letter(0, +1));
  int db = b.add_edge(v, v, Letter(1, +1));
  b.add_face({da, db});
  b.add_face({TwoComplex::reverse(db), TwoComplex::reverse(da)});  // mirror of the first
  b.add_face({da, db, da, db});                                    // different cycle
  TwoComplex c = b.build();
  TwoComplex q = quotient_duplicates(c);
  CHECK(q.num_faces() == 2);
  CHECK(q.num_edges() == c.num_edges());
  CHECK(q.num_vertices == c.num_vertices);
  TwoComplex qq = quotient_duplicates(q);
  CHECK(qq.num_faces() == q.num_faces());  // idempotent
}

TEST_CASE("quotient_duplicates is the identity without duplicates") {
  Presentation p = parse_presentation("<a,b|ab,b>");
  TwoComplex c = presentation_complex(p);
  TwoComplex q = quotient_duplicates(c);
  CHECK(q.num_faces() == c.num_faces());
}

TEST_CASE("boundary_intersection connectivity") {
  // two bigons sharing one edge, then two bigons sharing two isolated vertices
  TwoComplexBuilder b;
  int u = b.add_vertex();
  int v = b.add_vertex();
  int e1 = b.add_edge(u, v);
  int e2 = b.add_edge(u, v);
  int e3 = b.add_edge(u, v);
  // two bigon faces sharing edge e2
  b.add_face({e1, TwoComplex::reverse(e2)});
  b.add_face({e2, TwoComplex::reverse(e3)});
  TwoComplex c = b.build();
  auto bi = boundary_intersection(c, 0, 1);
  CHECK(bi.connected);  // the shared closed edge e2

  // faces sharing two isolated vertices: disconnected intersection
  TwoComplexBuilder b2;
  int x = b2.add_vertex();
  int y = b2.add_vertex();
  int f1 = b2.add_edge(x, y);
  int f2 = b2.add_edge(y, x);
  int f3 = b2.add_edge(x, y);
  int f4 = b2.add_edge(y, x);
  b2.add_face({f1, f2});
  b2.add_face({f3, f4});
  TwoComplex c2 = b2.build();
  auto bi2 = boundary_intersection(c2, 0, 1);
  CHECK_FALSE(bi2.connected);  // two shared vertices, no shared edge
  CHECK(bi2.cells.num_components() == 2);

  CHECK_THROWS_AS(boundary_intersection(c, 0, 0), PreconditionError);
}

TEST_CASE("face boundary euler characteristic") {
  Presentation torus = parse_presentation("<a,b|[a,b]>");
  TwoComplex c = presentation_complex(torus);
  CHECK(face_boundary_euler(c, 0) == -1);  // wedge of two circles
  TwoComplexBuilder b;
  int u = b.add_vertex(), v = b.add_vertex(), w = b.add_vertex();
  int e1 = b.add_edge(u, v), e2 = b.add_edge(v, w), e3 = b.add_edge(w, u);
  b.add_face({e1, e2, e3});
  TwoComplex tri = b.build();
  CHECK(face_boundary_euler(tri, 0) == 0);  // embedded circle
}

TEST_CASE("subcomplex closure and extraction") {
  Presentation p = parse_presentation("<a,b|ab,b>");
  TwoComplex c = presentation_complex(p);
  SubComplex s(c);
  s.add_closed_face(0);
  CHECK(s.closed());
  TwoComplex y = s.extract();
  CHECK(y.num_faces() == 1);
  CHECK(y.num_edges() == 2);
  CHECK(y.num_vertices == 1);
}
