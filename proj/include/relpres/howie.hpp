#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relpres/group.hpp"
#include "relpres/rational.hpp"

namespace relpres {

// Face templates over the equation system
//   b^{-x} b^phi = 1          (B faces, bigons with two x-edges)
//   [t, c] = 1                (C faces, bigons with two t-edges)
//   x^-1 b0 a0^t ... bm am^t b(m+1) = 1   (W faces and their inverses)
// Inverses of B and C faces are B and C faces again (with inverted corner
// values); only the long face has a distinct inverse type.
enum class FaceType { B, C, W, WInv };

enum class CornerClass { B, C, A, WB };

// Combinatorial spherical map with labelled corners. Corners are formal
// words over a FormalSymbols backend; the backend's phi map realizes the
// formal automorphism pairing b -> b^phi.
struct HowieDiagram {
  int m = 1;
  std::vector<std::string> vertices;
  std::string exterior;

  struct Edge {
    std::string id, from, to;
    char label = 't';  // 't' or 'x'
  };
  std::vector<Edge> edges;

  // Face boundaries are anticlockwise; the corner follows its edge.
  struct BoundaryItem {
    std::string edge;
    bool along = true;
    Element corner;
  };
  struct Face {
    std::string id;
    FaceType type = FaceType::C;
    std::vector<BoundaryItem> boundary;
  };
  std::vector<Face> faces;

  GroupBackend corners = GroupBackend::formal({"c"});
  std::map<std::string, CornerClass> corner_classes;  // symbol name -> class
};

struct DiagramIssue {
  ErrorCode code;
  std::string detail;
};

struct ValidationReport {
  bool spherical = false;
  bool face_templates_ok = false;
  bool interior_labels_trivial = false;
  std::string exterior_label;  // unevaluated formal word, up to cyclic shift
  std::vector<DiagramIssue> issues;
  bool valid() const { return spherical && face_templates_ok && interior_labels_trivial; }
};

// Checks sphericity (two-sided edges, closed boundary walks, single vertex
// links, connectivity, V - E + F = 2), face-template conformance, and
// formal triviality of every interior vertex label.
ValidationReport validate(const HowieDiagram& d);

struct DiagramLabels {
  // vertex id -> clockwise corner product; face id -> anticlockwise
  // edge-and-corner word. Both defined up to cyclic shift.
  std::map<std::string, std::string> vertex_labels;
  std::map<std::string, std::string> face_labels;
};
DiagramLabels labels(const HowieDiagram& d);

struct ReducednessReport {
  bool reduced = false;
  bool strongly_reduced = false;
  std::optional<std::string> witness_edge;
};

// reduced: no edge whose two distinct faces have mutually inverse labels
// read from that edge. strongly reduced: additionally no two distinct B
// faces and no two distinct C faces share an edge.
ReducednessReport reducedness_report(const HowieDiagram& d);

// Erases a common edge of two distinct same-type B or C faces, multiplying
// the corner labels at its endpoints. Throws NotMergeable when the faces at
// the edge do not form such a pair or when the pair is reducible.
HowieDiagram reduce_step(const HowieDiagram& d, const std::string& edge_id);

// Piecewise-linear car motion along a face boundary. Positions live on
// [0, boundary length) with one unit per edge; corner i sits at position
// (i + 1) mod len. Every segment covers exactly one edge traversal.
struct ScheduleSegment {
  Rat t0, t1;
  size_t traversal = 0;
  Rat speed;
};

struct FaceSchedule {
  std::string face;
  size_t boundary_len = 0;
  Rat period;           // 4m
  Rat minimal_period;   // 2 for C faces, 4m otherwise
  std::vector<ScheduleSegment> segments;  // chronological cover of [0, 4m)

  std::vector<Rat> times_at_position(size_t corner_pos) const;
  Rat position_at(const Rat& tau) const;
};

// The regular motion: B cars run at speed 1/(2m) anchored at the inverted
// corner; C cars at unit speed anchored at the inverted corner; W cars walk
// the 2m coefficient t-edges at unit speed, the remaining two t-edges at
// speed 2 and the x-edge at speed 1/(2m-1); inverse W cars mirror this.
FaceSchedule schedule_of(const HowieDiagram& d, const std::string& face_id);
std::vector<FaceSchedule> schedules_of(const HowieDiagram& d);

struct CollisionEvent {
  Rat time;  // within [0, 4m)
  bool at_vertex = false;
  std::string location;  // vertex id, or edge id with offset
  Rat edge_offset;       // strictly inside (0,1), measured from the edge tail
  std::vector<std::string> faces;
  bool complete = false;
};

struct CollisionReport {
  std::vector<CollisionEvent> events;            // sorted by time, then location
  std::vector<std::string> complete_points;      // distinct complete-collision locations
};

// Exact event detection over one period: linear meeting equations on every
// edge, and arrival-time set intersection at every vertex. An edge meeting
// is complete by definition; a vertex event is complete when the number of
// distinct cars present equals the vertex degree.
CollisionReport simulate(const HowieDiagram& d);
CollisionReport simulate(const HowieDiagram& d, const std::vector<FaceSchedule>& schedules);

struct ParityViolation {
  std::string face;
  size_t segment = 0;
  Rat t0, t1;
  std::string reason;
};

struct ParityReport {
  bool t_edges_ok = true;
  bool x_edges_ok = true;
  std::vector<ParityViolation> violations;
};

// Symbolic check from schedule breakpoints: cars on t-edges move with the
// edge direction exactly when floor(tau) is even, and cars on x-edges move
// with the edge during [0, 2m] + 4mZ and against it during [2m, 4m] + 4mZ.
ParityReport check_parity_invariant(const HowieDiagram& d);
ParityReport check_parity_invariant(const HowieDiagram& d,
                                    const std::vector<FaceSchedule>& schedules);

// Parses corner strings like "c^-1", "a0", "b b2^-1" (whitespace-separated
// powers of declared symbols).
Element parse_corner(const GroupBackend& corners, const std::string& text);

}  // namespace relpres
