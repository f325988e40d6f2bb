#pragma once

// Serialization: versioned JSON schemas with strict field checking, CSV
// spectrum dumps, and the run manifest embedded in every artifact.
//
// Determinism contract: identical inputs produce byte-identical files.
// Keys are emitted in fixed (insertion) order, doubles in shortest
// round-trip form, and the manifest never records wall-clock data.  The
// surface's originating spec is stored as its exact canonical string, so
// fingerprints survive a round-trip unchanged.

#include <string>

#include <json.hpp>

#include "orthospec/identities.hpp"
#include "orthospec/ortho.hpp"
#include "orthospec/surface.hpp"

namespace orthospec::io {

using ordered_json = nlohmann::ordered_json;

// FNV-1a (64-bit) of a byte string, hex-encoded; used for input hashes.
std::string fnv1a_hex(const std::string& bytes);

struct run_manifest {
    std::string command;      // canonical command line (threads excluded)
    std::string input_hash;   // hash of the input file bytes, "" if none
    double cutoff{0};
    double tolerance{0};
    std::string tool_version;
    std::string certificate_status;  // "certified" | "heuristic" | "n/a"
};

ordered_json manifest_json(const run_manifest& m);

// Surface file, schema "orthospec.surface/1".  Reading recomputes every
// derived field (holonomies, axes, feet) from the stored generators and
// words and verifies the stored fingerprint against the stored spec.
ordered_json surface_to_json(const fuchsian_surface& s,
                             const run_manifest& m);
fuchsian_surface surface_from_json(const ordered_json& j);

// Spectrum file, schema "orthospec.spectrum/1".
ordered_json spectrum_to_json(const ortho_spectrum_t& sp,
                              const run_manifest& m);
ortho_spectrum_t spectrum_from_json(const ordered_json& j);

// CSV dump: header length,boundary_i,boundary_j,foot_i,foot_j.
std::string spectrum_to_csv(const ortho_spectrum_t& sp);

ordered_json report_to_json(const identity_report& r,
                            const run_manifest& m);

// Surface construction from a parsed spec object; dispatches on "kind"
// (pants, one_holed_torus, pants_graph, special_x, cover_family,
// cyclic_cover).  Unknown fields anywhere are spec errors.
fuchsian_surface surface_from_spec_json(const ordered_json& spec);

// File plumbing with library error mapping (spec_error on parse trouble).
ordered_json parse_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace orthospec::io
