#pragma once

#include <iosfwd>

#include "freeness/freeness.hpp"

namespace freeness {

// Instance files:
// {group: id or inline registry table, field: "Q",
//  lattice: {pseudo_basis: [{ideal, coords}], action: {g: matrix}},
//  order: "group_ring" | "associated" | {pseudo_basis}, rank: optional}
// Action keys are element indices or generator names; missing elements are
// filled in from the multiplication table. Rationals are "p/q" strings.
ProblemInstance parse_instance(const std::string& text, const std::string& registry_dir = "");
ProblemInstance load_instance(const std::string& path, const std::string& registry_dir = "");
// Normalized form: HNF pseudo-bases with trivial ideals, every group element in the action.
std::string serialize_instance(const ProblemInstance& inst);

std::string certificate_to_json(const FreenessCertificate& cert);
FreenessCertificate parse_certificate(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// The freegen command line; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace freeness
