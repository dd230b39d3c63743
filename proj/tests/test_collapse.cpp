#include <algorithm>
#include <random>

#include "doctest.h"

#include "collapsar/collapse.hpp"
#include "collapsar/two_complex.hpp"

using namespace collapsar;

namespace {

TwoComplex complex_of(const char* s) { return presentation_complex(parse_presentation(s)); }

int face_pairs(const std::vector<FreeFacePair>& ps) {
  int n = 0;
  for (const auto& p : ps) n += p.kind == FreeFacePair::Kind::face;
  return n;
}

}  // namespace

TEST_CASE("dunce cap has no free faces") {
  TwoComplex d = complex_of("<a|aaA>");
  CHECK(free_face_pairs(d).empty());
  CHECK(count_collapsible_cells(d) == 0);
  CHECK_FALSE(is_trivial_complex(d));
}

TEST_CASE("<a,b|ab> has two face pairs for one collapsible face") {
  TwoComplex c = complex_of("<a,b|ab>");
  auto ps = free_face_pairs(c);
  CHECK(face_pairs(ps) == 2);
  CHECK(count_collapsible_cells(c) == 1);
  CHECK(is_trivial_complex(c));  // closure of a single collapsing 2-cell
}

TEST_CASE("<a,b|ab,b> has exactly one collapsible cell") {
  TwoComplex c = complex_of("<a,b|ab,b>");
  auto ps = free_face_pairs(c);
  REQUIRE(face_pairs(ps) == 1);
  auto it = std::find_if(ps.begin(), ps.end(),
                         [](const FreeFacePair& p) { return p.kind == FreeFacePair::Kind::face; });
  CHECK(it->collapse_cell == 0);  // the ab face
  CHECK(count_collapsible_cells(c) == 1);
}

TEST_CASE("spur pairs on a path graph") {
  TwoComplexBuilder b;
  int u = b.add_vertex(), v = b.add_vertex(), w = b.add_vertex();
  b.add_edge(u, v);
  b.add_edge(v, w);
  TwoComplex path = b.build();
  auto ps = free_face_pairs(path);
  CHECK(ps.size() == 2);
  CHECK(count_collapsible_cells(path) == 2);
}

TEST_CASE("a spur blocked by a face that visits the valence-1 vertex") {
  // single edge u->v with a face attached along e e^-1: a 2-sphere, no collapse
  TwoComplexBuilder b;
  int u = b.add_vertex(), v = b.add_vertex();
  int e = b.add_edge(u, v);
  b.add_face({e, TwoComplex::reverse(e)});
  TwoComplex c = b.build();
  CHECK(c.euler_characteristic() == 2);
  CHECK(free_face_pairs(c).empty());
}

TEST_CASE("do_collapse of <a,b|ab> along a leaves a circle") {
  TwoComplex c = complex_of("<a,b|ab>");
  auto ps = free_face_pairs(c);
  auto it = std::find_if(ps.begin(), ps.end(),
                         [](const FreeFacePair& p) { return p.kind == FreeFacePair::Kind::face; });
  TwoComplex after = do_collapse(c, *it);
  CHECK(after.num_vertices == 1);
  CHECK(after.num_edges() == 1);
  CHECK(after.num_faces() == 0);
  CHECK(after.euler_characteristic() == c.euler_characteristic());
  CHECK(after.num_components() == c.num_components());
  CHECK_THROWS_AS(do_collapse(after, *it), PreconditionError);
}

TEST_CASE("collapse preserves chi and components over a fixture sweep") {
  for (const char* s : {"<a,b|ab>", "<a,b|ab,b>", "<a,b|[a,b]>", "<a,b,c|aAb,bc>"}) {
    TwoComplex c = complex_of(s);
    for (const auto& p : free_face_pairs(c)) {
      TwoComplex after = do_collapse(c, p);
      CHECK(after.euler_characteristic() == c.euler_characteristic());
      CHECK(after.num_components() == c.num_components());
    }
  }
}

TEST_CASE("collapses_to_graph") {
  auto seq = collapses_to_graph(complex_of("<a,b|ab,b>"));
  REQUIRE(seq.has_value());
  CHECK(seq->size() == 2);

  CHECK_FALSE(collapses_to_graph(complex_of("<a|aaA>")).has_value());

  auto empty_seq = collapses_to_graph(complex_of("<a,b|>"));
  REQUIRE(empty_seq.has_value());
  CHECK(empty_seq->size() == 0);
}

TEST_CASE("collapses_to_point") {
  CHECK(collapses_to_point(complex_of("<a,b|ab,b>")).has_value());
  CHECK(collapses_to_point(complex_of("<a|a>")).has_value());  // disk
  // a circle does not collapse
  TwoComplexBuilder b;
  int v = b.add_vertex();
  b.add_edge(v, v);
  CHECK_FALSE(collapses_to_point(b.build()).has_value());
  // single vertex: empty sequence
  TwoComplexBuilder b2;
  b2.add_vertex();
  auto s = collapses_to_point(b2.build());
  REQUIRE(s.has_value());
  CHECK(s->size() == 0);
}

TEST_CASE("collapses_to_point success implies chi == 1") {
  for (const char* s : {"<a,b|ab,b>", "<a|a>", "<a,b|ab>"}) {
    TwoComplex c = complex_of(s);
    if (collapses_to_point(c)) CHECK(c.euler_characteristic() == 1);
  }
}

TEST_CASE("is_trivial_complex") {
  TwoComplexBuilder b;
  b.add_vertex();
  CHECK(is_trivial_complex(b.build()));
  CHECK(is_trivial_complex(complex_of("<a,b|ab>")));
  CHECK_FALSE(is_trivial_complex(complex_of("<a|aaA>")));
  CHECK_FALSE(is_trivial_complex(complex_of("<a,b|ab,b>")));
}

TEST_CASE("adding extra 1-cells never decreases face-collapse pairs") {
  std::mt19937 rng(7);
  for (const char* s : {"<a,b|ab>", "<a,b|ab,b>", "<a,b|[a,b]>"}) {
    TwoComplex c = complex_of(s);
    int before = face_pairs(free_face_pairs(c));
    TwoComplexBuilder b;
    b.add_vertices(c.num_vertices + 1);
    for (int e = 0; e < c.num_edges(); ++e) b.add_edge(c.tail(2 * e), c.head(2 * e), c.label(2 * e));
    for (const auto& f : c.faces) b.add_face(f.path, f.relator, f.orient);
    for (int extra = 0; extra < 3; ++extra) {
      b.add_edge(static_cast<int>(rng() % static_cast<unsigned>(c.num_vertices + 1)),
                 static_cast<int>(rng() % static_cast<unsigned>(c.num_vertices + 1)));
    }
    TwoComplex bigger = b.build();
    CHECK(face_pairs(free_face_pairs(bigger)) >= before);
  }
}

TEST_CASE("check_n_collapsing refutes the two-face one-collapse complex") {
  TwoComplex c = complex_of("<a,b|ab,b>");
  std::vector<int> faces{0, 1};
  auto verdict = check_n_collapsing(c, faces, 2);
  CHECK(verdict.refuted());
  REQUIRE(verdict.witness.has_value());
  CHECK(verdict.witness_faces == faces);  // the whole complex
  CHECK(verdict.witness->num_faces() == 2);

  auto v1 = check_n_collapsing(c, faces, 1);
  CHECK(v1.certified());
}

TEST_CASE("sequences from the searches replay validly step by step") {
  for (const char* s : {"<a,b|ab,b>", "<a|a>"}) {
    TwoComplex c = complex_of(s);
    auto seq = collapses_to_point(c);
    REQUIRE(seq.has_value());
    CHECK(validate_sequence(c, *seq));
    if (!seq->steps.empty()) {
      // mangling the order of a two-phase sequence must be caught
      CollapseSequence broken = *seq;
      std::reverse(broken.steps.begin(), broken.steps.end());
      if (broken.steps.size() > 1 && !(broken.steps == seq->steps)) {
        CHECK_FALSE(validate_sequence(c, broken));
      }
    }
  }
}

TEST_CASE("complex-level shells") {
  // a triangle disk: the face has an exposed arc with free interior vertices
  TwoComplexBuilder b;
  b.add_vertices(3);
  int e0 = b.add_edge(0, 1), e1 = b.add_edge(1, 2), e2 = b.add_edge(2, 0);
  b.add_face({e0, e1, e2});
  CHECK(complex_shell_faces(b.build()) == std::vector<int>{0});
  // one-vertex presentation complexes have no free interior vertices and
  // no long exposed arcs
  CHECK(complex_shell_faces(complex_of("<a,b|ab>")).empty());
  CHECK(complex_shell_faces(complex_of("<a|aaA>")).empty());
}

TEST_CASE("certify_bicollapsible certifies the torus presentation") {
  auto v = certify_bicollapsible(parse_presentation("<a,b|[a,b]>"));
  CHECK(v.certified());
  CHECK(v.provenance.find("C(4)-T(4)") != std::string::npos);
}

TEST_CASE("certify_bicollapsible refutes <a,b|ab,b> with a 2-face/1-collapse witness") {
  auto v = certify_bicollapsible(parse_presentation("<a,b|ab,b>"));
  REQUIRE(v.refuted());
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->num_faces() == 2);
  CHECK(count_collapsible_cells(*v.witness) == 1);
  CHECK(collapses_to_point(*v.witness).has_value());
}

TEST_CASE("certify_bicollapsible refutes <a,b,c|aAb,bc>") {
  auto v = certify_bicollapsible(parse_presentation("<a,b,c|aAb,bc>"));
  REQUIRE(v.refuted());
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->num_faces() == 2);
  CHECK(count_collapsible_cells(*v.witness) <= 1);
}

TEST_CASE("certify_bicollapsible refutes the dunce cap via a sphere") {
  auto v = certify_bicollapsible(parse_presentation("<a|aaA>"));
  CHECK(v.refuted());
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->euler_characteristic() == 2);
}

TEST_CASE("certify_bicollapsible certifies one-relator without torsion (staggered route)") {
  // aabab decomposes into 3 pieces, so the small-cancellation route is out
  auto v = certify_bicollapsible(parse_presentation("<a,b|aabab>"));
  CHECK(v.certified());
  CHECK(v.provenance.find("staggered") != std::string::npos);
  auto v2 = certify_bicollapsible(parse_presentation("<a,b|aabb>"));
  CHECK(v2.certified());
}

TEST_CASE("certify witnesses re-validate over a seeded presentation sweep") {
  std::mt19937 rng(101);
  int refuted = 0, certified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Presentation p;
    p.generators = {{0, "a"}, {1, "b"}};
    int nrel = 1 + static_cast<int>(rng() % 2);
    for (int r = 0; r < nrel; ++r) {
      int len = 1 + static_cast<int>(rng() % 4);
      Word w;
      for (int i = 0; i < len; ++i) w.push_back(Letter::from_code(static_cast<int>(rng() % 4)));
      p.relators.emplace_back(std::move(w));
    }
    CollapsingVerdict v = certify_bicollapsible(p);
    if (v.certified()) ++certified;
    if (!v.refuted()) continue;
    ++refuted;
    REQUIRE(v.witness.has_value());
    const TwoComplex& y = *v.witness;
    if (v.provenance.find("spherical") != std::string::npos) {
      // sphere witness: closed surface, every edge in exactly two face sides
      CHECK(y.euler_characteristic() == 2);
      for (int cnt : y.edge_traversal_count()) CHECK(cnt == 2);
    } else {
      // amalgam witness: certified simply connected with at most one collapse
      CHECK(y.num_faces() == 2);
      CHECK(count_collapsible_cells(y) <= 1);
      CHECK(collapses_to_point(y).has_value());
      CHECK_FALSE(is_trivial_complex(y));
    }
  }
  CHECK(refuted > 0);
  CHECK(certified > 0);
}

TEST_CASE("certified_branch wires the certification into the branched presentation") {
  auto b = certified_branch(parse_presentation("<a,b|[a,b]>"), {2});
  CHECK(b.dehn_eligible());
  auto b2 = certified_branch(parse_presentation("<a,b|ab,b>"), {2, 2});
  CHECK_FALSE(b2.dehn_eligible());
}
