#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spancert/geometry.hpp"
#include "spancert/oracle.hpp"
#include "spancert/trace.hpp"
#include "spancert/witness.hpp"

namespace spancert {

// Tabulated families, loaded from a JSON description of f on a regular node
// grid and evaluated by multilinear interpolation:
//
//   {
//     "name": "ramp",
//     "dim": 1,
//     "resolution": {"t": 16, "x": [16]},      // intervals per axis
//     "x_domain": [[0.0, 0.25]],               // optional, default unit
//     "modulus": {"type": "lipschitz", "constant": 4.0},
//     "values": [...]                          // row-major node values in
//   }                                          // [0,1], t slowest, output
//                                              // component fastest (n > 1)
//
// Every value must lie in [0,1], and adjacent nodes may differ by at most the
// declared modulus of the node spacing (plus 1e-12 slack); violations fail
// the load with the offending node pair named.  Evaluation outside t in
// [0,1] or x outside the table's domain throws std::domain_error.
Oracle load_tabulated(const std::string& path);
Oracle load_tabulated(std::istream& in, const std::string& origin);

// Claimed candidate sets: plain text, one box per line "k j0 j1 ... jn",
// blank lines and '#' comments ignored.  All lines must share one level and
// one index count.
BoxSet load_claimed_set(const std::string& path);
BoxSet load_claimed_set(std::istream& in, const std::string& origin);

// One boxes.csv row: a stored box with its component id, the component's
// spanning flag, and the center residual.
struct BoxRow {
    int level = 0;
    std::vector<std::int64_t> index;
    std::int32_t component = 0;
    bool spanning = false;
    double residual = 0.0;
};

std::vector<BoxRow> boxes_rows(const TraceResult& tr);

// boxes.csv: header "level,j0,...,component,spanning,residual"; rows sorted
// by (level, j0, ..., jn); floats printed with %.9g.  All writers in this
// module are byte-stable: identical inputs give identical bytes.
void write_boxes_csv(std::ostream& os, const std::vector<BoxRow>& rows, int dim);
std::vector<BoxRow> read_boxes_csv(std::istream& in, const std::string& origin,
                                   int* dim_out = nullptr);

// components.json: outcome, per-level component table, convergence distances.
void write_components_json(std::ostream& os, const TraceResult& tr);

// witness.json: the separation (side box lists, margin, gap), the certificate
// constants, and the verification report.
void write_witness_json(std::ostream& os, const SeparationWitness& w,
                        const WitnessReport& rep);

// cells.csv: curve-cell coverage, header "order,ju,jv".
void write_cells_csv(std::ostream& os, const BoxSet& cells);

// plot.svg: the (t, x) plane with every stored level's boxes overlaid,
// deeper levels more opaque.  Only for one spatial coordinate (dim == 2).
void write_svg(std::ostream& os, const std::vector<BoxRow>& rows, int dim);

}  // namespace spancert
