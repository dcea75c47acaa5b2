#pragma once

#include "relpres/howie.hpp"

namespace relpres::fixtures {

// Two C faces glued along their whole boundary (2 vertices, 2 t-edges).
// Valid; the pair is reducible by construction.
HowieDiagram c_balloon(int m = 1);

// Even number of C lunes around an axis; all cars meet at both poles.
HowieDiagram c_beachball(int lunes = 4, int m = 1);

// Three C lunes with word-valued corners: valid, reduced, not strongly
// reduced, and the pair at edge "e2" is mergeable.
HowieDiagram c_flower3(int m = 1);

// W face and its inverse glued along the full (2m+3)-gon. Valid. With
// tweak_corner the inverse face carries a fresh symbol at the exterior
// vertex, which breaks the mirror and makes the diagram reduced.
HowieDiagram mirror_sphere(int m = 1, bool tweak_corner = false);

// Six lunes around an axis: W1|W2 on one t-path, their inverses on the
// other, and two B faces between the x-meridians. Valid and strongly
// reduced; every x-edge separates a B face from a long face.
HowieDiagram lune_sphere(int m = 1);

// lune_sphere with one B face split into two stacked B lunes sharing the
// x-edge "e5": valid, reduced, not strongly reduced, mergeable at "e5".
HowieDiagram lune_sphere_split_b(int m = 1);

// Negative fixtures.
HowieDiagram corrupted_balloon();            // nontrivial interior vertex label
HowieDiagram single_face_diagram();          // edge sides unbalanced
HowieDiagram balloon_with_isolated_vertex(); // disconnected, Euler count off

}  // namespace relpres::fixtures
