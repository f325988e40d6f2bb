#pragma once

// Cyclic covers by Reidemeister-Schreier rewriting.
//
// A homomorphism phi from the free surface group onto Z/n is given by the
// generator images q_t.  The kernel is a free subgroup of index n and rank
// n (r - 1) + 1; its preferred basis consists of the nontrivial Schreier
// generators s_{c,t} = t_c x_t t_{c + q_t}^{-1} over the shortlex Schreier
// transversal {t_c} (BFS in alphabet order, so the transversal is
// prefix-closed and exactly n - 1 of the s_{c,t} collapse).  Any kernel
// word rewrites into that basis by walking its letters through the coset
// table.  Boundary circles upstairs: a base boundary word w with
// phi(w) = q splits into gcd(q, n) circles, each covering the base circle
// ord = n / gcd(q, n) times, one per orbit of c -> c + q.

#include <string>
#include <vector>

#include "orthospec/surface.hpp"
#include "orthospec/word.hpp"

namespace orthospec {

struct coset_table {
    int modulus{1};
    std::vector<int> images;       // normalized generator images in [0, n)
    std::vector<word> transversal; // shortlex Schreier representatives
    // Cover generator m <-> (coset c, base generator t); -1 marks the
    // n - 1 tree edges whose Schreier generator is trivial.
    std::vector<std::pair<int, int>> cover_gen; // m -> (c, t)
    std::vector<std::vector<int>> gen_index;    // [c][t] -> m or -1
    std::vector<word> schreier_words;           // m -> word over base letters
};

// Coset structure of the kernel of phi: x_t -> images[t] (mod modulus).
// Throws spec_error on malformed input and construction_error when phi is
// not surjective (the cover would be disconnected).
coset_table subgroup_from_cyclic_hom(int num_generators,
                                     const std::vector<int>& images,
                                     int modulus);

// Rewrite a kernel element (given over base letters) in the cover basis.
// Throws construction_error if the word does not lie in the kernel.
word rewrite_in_cover(const coset_table& ct, const word& base_word);

// The degree-n cyclic cover of `base` determined by the homomorphism.
// The cover reuses the base matrices (the kernel is a subgroup), keeps the
// basepoint, re-derives boundary components from the orbit structure and
// re-certifies its own Dirichlet domain.  modulus 1 returns the base.
fuchsian_surface cyclic_cover(const fuchsian_surface& base,
                              const std::vector<int>& images, int modulus);

// The n-fold-pinched one-holed torus X(n): interior curve of length
// arccosh(3/2) / n, twist 0, boundary length l_gamma.
fuchsian_surface build_special_X(int n, double l_gamma);

// Member m of the standard degree-2^k cover family of X(2^k): generator
// images (2^m mod 2^k, 1), for m in [0, k].  Requires base kind
// "special_x" with parameter n = 2^k.
fuchsian_surface cover_family(const fuchsian_surface& base, int k, int m);

}  // namespace orthospec
