#pragma once

#include <complex>
#include <filesystem>
#include <map>
#include <vector>

#include "abcwave/assembly.hpp"
#include "abcwave/geometry.hpp"
#include "abcwave/state.hpp"
#include "abcwave/timeint.hpp"

namespace abcwave {

void ensure_directory(const std::filesystem::path& dir);

// Columns: t,E,L1,L2,diss_inc,identity_residual,mean_u,mean_v.
void write_time_series_csv(const std::filesystem::path& path,
                           const std::vector<EnergyReport>& series);

// Columns: node_id,u,v,w,z. v and z are zero for nodes off the outer
// boundary.
void write_snapshot_csv(const std::filesystem::path& path,
                        const TraceMap& trace, const StateVector& x);

// nodes.csv (node_id,x,y), triangles.csv (tri_id,n0,n1,n2),
// gamma1.csv (order_index,node_id,edge_length).
void write_mesh_csv(const std::filesystem::path& dir, const Mesh2D& mesh,
                    const BoundaryMesh1D& boundary);

// Legacy ASCII VTK unstructured grid; optional named point fields.
void write_mesh_vtk(const std::filesystem::path& path, const Mesh2D& mesh,
                    const std::vector<std::pair<std::string, Vector>>& fields = {});

// Columns: re,im.
void write_spectrum_csv(const std::filesystem::path& path,
                        const std::vector<std::complex<double>>& eigenvalues);

// Columns: order_index,node_id,value.
void write_boundary_profile_csv(const std::filesystem::path& path,
                                const BoundaryMesh1D& boundary,
                                const Vector& values);

// Coordinate text dump: first line "rows cols nnz", then 1-based
// "row col value" triplets.
void write_coordinate_matrix(const std::filesystem::path& path,
                             const SparseMatrix& a);

// CSV of node_id,value pairs; a single "node_id,value" header is allowed.
std::map<int, double> read_nodal_csv(const std::filesystem::path& path);

}  // namespace abcwave
