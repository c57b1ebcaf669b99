#include "abcwave/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace abcwave {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

}  // namespace

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error("cannot create directory " + dir.string() + ": " + ec.message());
  }
}

void write_time_series_csv(const std::filesystem::path& path,
                           const std::vector<EnergyReport>& series) {
  auto out = open_out(path);
  out << "t,E,L1,L2,diss_inc,identity_residual,mean_u,mean_v\n";
  for (const auto& r : series) {
    out << num(r.t) << ',' << num(r.energy) << ',' << num(r.l1) << ','
        << num(r.l2) << ',' << num(r.dissipation_increment) << ','
        << num(r.identity_residual) << ',' << num(r.mean_u) << ','
        << num(r.mean_v) << '\n';
  }
}

void write_snapshot_csv(const std::filesystem::path& path,
                        const TraceMap& trace, const StateVector& x) {
  auto out = open_out(path);
  out << "node_id,u,v,w,z\n";
  std::vector<int> bdry_index(trace.n_bulk, -1);
  for (int j = 0; j < trace.n_boundary(); ++j) {
    bdry_index[trace.boundary_to_bulk[j]] = j;
  }
  for (int i = 0; i < trace.n_bulk; ++i) {
    const int j = bdry_index[i];
    const double v = j >= 0 ? x.v(j) : 0.0;
    const double z = j >= 0 ? x.z(j) : 0.0;
    out << i << ',' << num(x.u(i)) << ',' << num(v) << ',' << num(x.w(i))
        << ',' << num(z) << '\n';
  }
}

void write_mesh_csv(const std::filesystem::path& dir, const Mesh2D& mesh,
                    const BoundaryMesh1D& boundary) {
  {
    auto out = open_out(dir / "nodes.csv");
    out << "node_id,x,y\n";
    for (int i = 0; i < mesh.n_nodes(); ++i) {
      out << i << ',' << num(mesh.nodes[i][0]) << ',' << num(mesh.nodes[i][1])
          << '\n';
    }
  }
  {
    auto out = open_out(dir / "triangles.csv");
    out << "tri_id,n0,n1,n2\n";
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const auto& tri = mesh.triangles[t];
      out << t << ',' << tri[0] << ',' << tri[1] << ',' << tri[2] << '\n';
    }
  }
  {
    auto out = open_out(dir / "gamma1.csv");
    out << "order_index,node_id,edge_length\n";
    for (int j = 0; j < boundary.n_nodes(); ++j) {
      out << j << ',' << boundary.nodes[j] << ','
          << num(boundary.edge_lengths[j]) << '\n';
    }
  }
}

void write_mesh_vtk(const std::filesystem::path& path, const Mesh2D& mesh,
                    const std::vector<std::pair<std::string, Vector>>& fields) {
  auto out = open_out(path);
  out << "# vtk DataFile Version 3.0\n";
  out << "abcwave mesh\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_nodes() << " double\n";
  for (const auto& p : mesh.nodes) {
    out << num(p[0]) << ' ' << num(p[1]) << " 0.0\n";
  }
  out << "CELLS " << mesh.n_triangles() << ' ' << 4 * mesh.n_triangles()
      << '\n';
  for (const auto& t : mesh.triangles) {
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  out << "CELL_TYPES " << mesh.n_triangles() << '\n';
  for (int t = 0; t < mesh.n_triangles(); ++t) out << "5\n";
  if (!fields.empty()) {
    out << "POINT_DATA " << mesh.n_nodes() << '\n';
    for (const auto& [name, values] : fields) {
      if (values.size() != mesh.n_nodes()) {
        throw DimensionMismatchError("point field '" + name +
                                     "' has wrong length");
      }
      out << "SCALARS " << name << " double 1\n";
      out << "LOOKUP_TABLE default\n";
      for (Index i = 0; i < values.size(); ++i) out << num(values(i)) << '\n';
    }
  }
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const std::vector<std::complex<double>>& eigenvalues) {
  auto out = open_out(path);
  out << "re,im\n";
  for (const auto& ev : eigenvalues) {
    out << num(ev.real()) << ',' << num(ev.imag()) << '\n';
  }
}

void write_boundary_profile_csv(const std::filesystem::path& path,
                                const BoundaryMesh1D& boundary,
                                const Vector& values) {
  if (values.size() != boundary.n_nodes()) {
    throw DimensionMismatchError("boundary profile has wrong length");
  }
  auto out = open_out(path);
  out << "order_index,node_id,value\n";
  for (int j = 0; j < boundary.n_nodes(); ++j) {
    out << j << ',' << boundary.nodes[j] << ',' << num(values(j)) << '\n';
  }
}

void write_coordinate_matrix(const std::filesystem::path& path,
                             const SparseMatrix& a) {
  auto out = open_out(path);
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << num(it.value())
          << '\n';
    }
  }
}

std::map<int, double> read_nodal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::map<int, double> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t;
    for (char ch : line) {
      if (ch == '#') break;
      t.push_back(ch);
    }
    while (!t.empty() && (t.back() == '\r' || t.back() == ' ')) t.pop_back();
    if (t.empty()) continue;
    if (line_no == 1 && t.find("node_id") != std::string::npos) continue;
    std::istringstream row(t);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b)) {
      throw Error(path.string() + ":" + std::to_string(line_no) +
                  ": expected node_id,value");
    }
    try {
      const int id = std::stoi(a);
      const double v = std::stod(b);
      if (!out.emplace(id, v).second) {
        throw Error(path.string() + ":" + std::to_string(line_no) +
                    ": duplicate node id " + std::to_string(id));
      }
    } catch (const std::invalid_argument&) {
      throw Error(path.string() + ":" + std::to_string(line_no) +
                  ": malformed row '" + t + "'");
    } catch (const std::out_of_range&) {
      throw Error(path.string() + ":" + std::to_string(line_no) +
                  ": value out of range");
    }
  }
  return out;
}

}  // namespace abcwave
