#pragma once

// Constructors: Fenchel-Nielsen data -> explicit Fuchsian groups.

#include <string>
#include <vector>

#include "orthospec/surface.hpp"

namespace orthospec {

fuchsian_surface build_pants(double l1, double l2, double l3);

fuchsian_surface build_one_holed_torus(double l_alpha, double twist,
                                       double l_gamma);

// Trivalent pants-graph gluing spec (mirrors the JSON schema).
struct pants_graph_spec {
    struct gluing {
        int pants_a, cuff_a, pants_b, cuff_b;
        double length, twist;
    };
    struct leg {
        int pants, cuff;
        double length;
    };
    int pants{0};
    std::vector<gluing> gluings;
    std::vector<leg> legs;
};

fuchsian_surface build_from_pants_graph(const pants_graph_spec& spec);

// Parsed JSON surface spec (kind + parameters); see io.hpp for parsing.
struct surface_spec {
    std::string kind;  // pants | one_holed_torus | pants_graph
    std::vector<double> boundary_lengths;
    struct interior_curve {
        double length, twist;
    };
    std::vector<interior_curve> interior_curves;
    pants_graph_spec graph;
};

fuchsian_surface build_from_spec(const surface_spec& spec);

}  // namespace orthospec
