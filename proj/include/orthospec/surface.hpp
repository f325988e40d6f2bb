#pragma once

// The central value type: a Fuchsian group presented by construction
// generators (a free basis), boundary words, a basepoint, and - once
// certified - Dirichlet face pairings with the covering radius of the
// Dirichlet polygon intersected with the convex core.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orthospec/geodesic.hpp"
#include "orthospec/hyperboloid.hpp"
#include "orthospec/mat2.hpp"
#include "orthospec/word.hpp"

namespace orthospec {

struct boundary_component {
    word bword;          // boundary word over the generator alphabet
    mat2 holonomy;       // evaluated word (canonical sign)
    double length{0};    // translation length
    double spec_length{0};  // length demanded by the originating spec
    geodesic axis_g;     // oriented repelling -> attracting
    mat2 to_std;         // det-1 map taking axis_g to the imaginary axis
    double foot_origin{0};  // std-coordinate of the basepoint's perp foot
};

struct face_pairing {
    mat2 g;
    word w;  // expression over the construction alphabet
    double disp_cosh{0};
};

struct dirichlet_cert {
    std::vector<face_pairing> faces;  // closed under inverse
    double rho{0};           // max distance base -> vertex of D cap core
    double probe_radius{0};  // radius the face set was derived from
    bool stable{false};      // face set unchanged under +25% probe radius
};

struct fuchsian_surface {
    // Alphabet: index 2k is generator k, index 2k+1 its inverse.
    std::vector<mat2> alphabet;
    std::vector<std::string> gen_names;  // one per generator (k entries)
    std::vector<boundary_component> boundary;
    hpoint base;
    int genus{0};

    std::optional<dirichlet_cert> dirichlet;

    // Provenance: canonical JSON of the originating spec (fingerprint
    // source) and a human-readable kind tag.
    std::string kind;
    std::string spec_json;

    int num_generators() const {
        return static_cast<int>(alphabet.size() / 2);
    }
    int euler_characteristic() const {
        return 2 - 2 * genus - static_cast<int>(boundary.size());
    }

    mat2 letter(int32_t x) const { return alphabet[static_cast<size_t>(x)]; }

    mat2 evaluate(const word& w) const {
        mat2 m = mat2::identity();
        for (int32_t x : w) m = m * letter(x);
        return m;
    }
};

// Fill the derived fields of a boundary component from its word;
// spec_length records the length the originating spec demands.
boundary_component make_boundary_component(const fuchsian_surface& s,
                                           const word& w,
                                           double spec_length);

// Arc-length coordinate on boundary component i of the foot of the
// perpendicular from `other` to the component's axis, measured from the
// basepoint's perpendicular foot, positively in the holonomy's translation
// direction, reduced into [0, length).  Also reports the side (+1 left of
// the oriented axis, -1 right) on which `other` lies, and `turns`, the
// integer number of periods removed by the reduction (so the raw
// coordinate is coord + turns * length).
struct foot_info {
    double coord;
    int side;
    long turns;
};
std::optional<foot_info> foot_on_boundary(const boundary_component& bc,
                                          const geodesic& other);

// Validation report per the surfaces contract: boundary lengths vs spec,
// disjointness of boundary lifts, no elliptics in a ball.
struct validation_report {
    bool pass{true};
    double worst_boundary_length_error{0};
    double worst_violation{0};
    std::vector<std::string> failures;
};

validation_report validate_surface(const fuchsian_surface& s,
                                   double probe_radius = 6.0);

// Distance from the basepoint to boundary axis i plus half that boundary
// length: the reach bound used for enumeration radii.
double boundary_reach(const fuchsian_surface& s, int i);

}  // namespace orthospec
