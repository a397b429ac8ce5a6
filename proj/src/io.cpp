#include "qwave/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qwave {

namespace {

void fail(const std::string& what, const std::string& path) {
  throw std::invalid_argument(what + ": " + path);
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) fail("cannot write file", path);
  return os;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) fail("cannot read file", path);
  return is;
}

void put_i64(std::ostream& os, std::int64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void put_i32(std::ostream& os, std::int32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }

std::int64_t get_i64(std::istream& is) {
  std::int64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}
double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}
std::int32_t get_i32(std::istream& is) {
  std::int32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void put_hash(std::ostream& os, const std::string& config_hash) {
  if (!config_hash.empty()) os << "# config_hash=" << config_hash << "\n";
}

}  // namespace

void write_field(const std::string& path, const SampledField& f) {
  std::ofstream os = open_out(path, true);
  os.write("QWF1", 4);
  put_i64(os, f.box.dim);
  for (int ax = 0; ax < f.box.dim; ++ax) put_i64(os, f.box.n[ax]);
  for (int ax = 0; ax < f.box.dim; ++ax) put_f64(os, f.box.side[ax]);
  for (const cplx& v : f.values) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
  if (!os) fail("cannot write file", path);
}

SampledField read_field(const std::string& path) {
  std::ifstream is = open_in(path, true);
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "QWF1", 4) != 0) fail("corrupt field file", path);
  BoxSpec box;
  box.dim = int(get_i64(is));
  if (box.dim != 2 && box.dim != 4) fail("corrupt field file", path);
  for (int ax = 0; ax < box.dim; ++ax) {
    box.n[ax] = int(get_i64(is));
    if (box.n[ax] <= 0) fail("corrupt field file", path);
  }
  for (int ax = box.dim; ax < 4; ++ax) box.n[ax] = 1;
  for (int ax = 0; ax < box.dim; ++ax) box.side[ax] = get_f64(is);
  SampledField f(box);
  for (cplx& v : f.values) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    v = {re, im};
  }
  if (!is) fail("corrupt field file", path);
  return f;
}

void write_field_csv(const std::string& path, const SampledField& f,
                     const std::string& config_hash) {
  if (f.box.dim != 2) throw std::invalid_argument("field CSV is 2D only");
  std::ofstream os = open_out(path, false);
  put_hash(os, config_hash);
  os << "# box=" << g17(f.box.side[0]) << "," << g17(f.box.side[1]) << ","
     << f.box.n[0] << "," << f.box.n[1] << "\n";
  for (int m0 = 0; m0 < f.box.n[0]; ++m0) {
    for (int m1 = 0; m1 < f.box.n[1]; ++m1) {
      const cplx& v = f.values[std::size_t(m0) * f.box.n[1] + m1];
      if (m1) os << ",";
      os << "\"" << g17(v.real()) << "," << g17(v.imag()) << "\"";
    }
    os << "\n";
  }
  if (!os) fail("cannot write file", path);
}

SampledField read_field_csv(const std::string& path) {
  std::ifstream is = open_in(path, false);
  std::string line;
  BoxSpec box;
  box.dim = 2;
  box.n = {0, 0, 1, 1};
  bool have_box = false;
  std::vector<cplx> values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# box=", 0) == 0) {
        double s0, s1;
        int n0, n1;
        if (std::sscanf(line.c_str() + 6, "%lf,%lf,%d,%d", &s0, &s1, &n0, &n1) != 4)
          fail("corrupt field file", path);
        box.side = {s0, s1, 0, 0};
        box.n = {n0, n1, 1, 1};
        have_box = true;
      }
      continue;
    }
    std::size_t pos = 0;
    while (pos < line.size()) {
      if (line[pos] != '"') fail("corrupt field file", path);
      const std::size_t close = line.find('"', pos + 1);
      if (close == std::string::npos) fail("corrupt field file", path);
      double re, im;
      if (std::sscanf(line.substr(pos + 1, close - pos - 1).c_str(), "%lf,%lf", &re, &im) != 2)
        fail("corrupt field file", path);
      values.emplace_back(re, im);
      pos = close + 1;
      if (pos < line.size() && line[pos] == ',') ++pos;
    }
  }
  if (!have_box || values.size() != box.total()) fail("corrupt field file", path);
  SampledField f(box);
  f.values = std::move(values);
  return f;
}

void write_coefficients(const std::string& path, const CoefficientSet& c) {
  std::ofstream os = open_out(path, true);
  os.write("QWC1", 4);
  if (const auto* g2 = std::get_if<GridSpec2D>(&c.grid)) {
    put_i64(os, 2);
    put_i64(os, std::int64_t(c.values.size()));
    put_f64(os, g2->lambda0);
    put_i64(os, g2->L);
    put_i64(os, g2->t_max);
    put_f64(os, g2->beta0);
    put_f64(os, g2->beta1);
    put_i64(os, g2->m_range);
    put_i64(os, g2->scale_mode == ScaleMode::ring ? 0 : 1);
    for (const GridPoint2D& p : enumerate_grid_2d(*g2)) {
      const std::int32_t idx[8] = {p.t, 0, p.l, 0, p.m0, p.m1, 0, 0};
      for (std::int32_t v : idx) put_i32(os, v);
    }
  } else {
    const auto& g4 = std::get<GridSpec4D>(c.grid);
    put_i64(os, 4);
    put_i64(os, std::int64_t(c.values.size()));
    put_f64(os, g4.lambda01);
    put_f64(os, g4.lambda02);
    put_i64(os, g4.L1);
    put_i64(os, g4.L2);
    put_i64(os, g4.t_max);
    put_i64(os, g4.j_max);
    put_f64(os, g4.beta0);
    put_f64(os, g4.beta1);
    put_f64(os, g4.beta2);
    put_f64(os, g4.beta3);
    put_i64(os, g4.m_range);
    put_i64(os, g4.scale_mode == ScaleMode::ring ? 0 : 1);
    for (const GridPoint4D& p : enumerate_grid_4d(g4)) {
      const std::int32_t idx[8] = {p.t, p.j, p.l, p.k, p.m0, p.m1, p.m2, p.m3};
      for (std::int32_t v : idx) put_i32(os, v);
    }
  }
  for (const cplx& v : c.values) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
  if (!os) fail("cannot write file", path);
}

CoefficientSet read_coefficients(const std::string& path) {
  std::ifstream is = open_in(path, true);
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "QWC1", 4) != 0) fail("corrupt coefficient file", path);
  const std::int64_t dim = get_i64(is);
  const std::int64_t count = get_i64(is);
  if ((dim != 2 && dim != 4) || count < 0) fail("corrupt coefficient file", path);
  CoefficientSet c;
  if (dim == 2) {
    GridSpec2D g;
    g.lambda0 = get_f64(is);
    g.L = int(get_i64(is));
    g.t_max = int(get_i64(is));
    g.beta0 = get_f64(is);
    g.beta1 = get_f64(is);
    g.m_range = int(get_i64(is));
    g.scale_mode = get_i64(is) == 0 ? ScaleMode::ring : ScaleMode::base;
    c.grid = g;
  } else {
    GridSpec4D g;
    g.lambda01 = get_f64(is);
    g.lambda02 = get_f64(is);
    g.L1 = int(get_i64(is));
    g.L2 = int(get_i64(is));
    g.t_max = int(get_i64(is));
    g.j_max = int(get_i64(is));
    g.beta0 = get_f64(is);
    g.beta1 = get_f64(is);
    g.beta2 = get_f64(is);
    g.beta3 = get_f64(is);
    g.m_range = int(get_i64(is));
    g.scale_mode = get_i64(is) == 0 ? ScaleMode::ring : ScaleMode::base;
    c.grid = g;
  }
  is.seekg(std::streamoff(count) * 8 * 4, std::ios::cur);  // skip the index table
  c.values.resize(std::size_t(count));
  for (cplx& v : c.values) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    v = {re, im};
  }
  if (!is) fail("corrupt coefficient file", path);
  return c;
}

void write_coefficients_csv(const std::string& path, const CoefficientSet& c,
                            const std::string& config_hash) {
  std::ofstream os = open_out(path, false);
  put_hash(os, config_hash);
  if (const auto* g2 = std::get_if<GridSpec2D>(&c.grid)) {
    os << "t,l,m0,m1,re,im\n";
    const auto pts = enumerate_grid_2d(*g2);
    if (pts.size() != c.values.size())
      throw std::invalid_argument("coefficient count does not match the grid");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const GridPoint2D& p = pts[i];
      os << p.t << "," << p.l << "," << p.m0 << "," << p.m1 << ","
         << g17(c.values[i].real()) << "," << g17(c.values[i].imag()) << "\n";
    }
  } else {
    const auto& g4 = std::get<GridSpec4D>(c.grid);
    os << "t,j,l,k,m0,m1,m2,m3,re,im\n";
    const auto pts = enumerate_grid_4d(g4);
    if (pts.size() != c.values.size())
      throw std::invalid_argument("coefficient count does not match the grid");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const GridPoint4D& p = pts[i];
      os << p.t << "," << p.j << "," << p.l << "," << p.k << "," << p.m0 << "," << p.m1
         << "," << p.m2 << "," << p.m3 << "," << g17(c.values[i].real()) << ","
         << g17(c.values[i].imag()) << "\n";
    }
  }
  if (!os) fail("cannot write file", path);
}

void write_grid_csv(const std::string& path, const GridSpec2D& g,
                    const std::string& config_hash) {
  std::ofstream os = open_out(path, false);
  put_hash(os, config_hash);
  os << "t,l,m0,m1,a,theta,b0,b1\n";
  for (const GridPoint2D& p : enumerate_grid_2d(g))
    os << p.t << "," << p.l << "," << p.m0 << "," << p.m1 << "," << g17(p.a) << ","
       << g17(p.theta) << "," << g17(p.b[0]) << "," << g17(p.b[1]) << "\n";
  if (!os) fail("cannot write file", path);
}

void write_grid_csv(const std::string& path, const GridSpec4D& g,
                    const std::string& config_hash) {
  std::ofstream os = open_out(path, false);
  put_hash(os, config_hash);
  os << "t,j,l,k,m0,m1,m2,m3,lambda1,lambda2,theta1,theta2,b0,b1,b2,b3\n";
  for (const GridPoint4D& p : enumerate_grid_4d(g))
    os << p.t << "," << p.j << "," << p.l << "," << p.k << "," << p.m0 << "," << p.m1
       << "," << p.m2 << "," << p.m3 << "," << g17(p.A.lambda1) << ","
       << g17(p.A.lambda2) << "," << g17(p.A.theta1) << "," << g17(p.A.theta2) << ","
       << g17(p.b[0]) << "," << g17(p.b[1]) << "," << g17(p.b[2]) << "," << g17(p.b[3])
       << "\n";
  if (!os) fail("cannot write file", path);
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const std::string& config_hash) {
  std::ofstream os = open_out(path, false);
  put_hash(os, config_hash);
  os << "beta,s,S,E,A_candidate,B_candidate,A_emp,B_emp,verdict\n";
  for (const SweepRow& r : rows)
    os << g17(r.beta) << "," << g17(r.report.s_val) << "," << g17(r.report.S_val) << ","
       << g17(r.report.E_val) << "," << g17(r.report.A_candidate) << ","
       << g17(r.report.B_candidate) << "," << g17(r.report.A_emp) << ","
       << g17(r.report.B_emp) << "," << r.report.verdict << "\n";
  if (!os) fail("cannot write file", path);
}

void write_quaternion_csv(const std::string& path, const std::vector<Quaternion>& qs,
                          const std::string& config_hash) {
  std::ofstream os = open_out(path, false);
  put_hash(os, config_hash);
  os << "n,q0,q1,q2,q3\n";
  for (std::size_t n = 0; n < qs.size(); ++n)
    os << n << "," << g17(qs[n].q0) << "," << g17(qs[n].q1) << "," << g17(qs[n].q2)
       << "," << g17(qs[n].q3) << "\n";
  if (!os) fail("cannot write file", path);
}

void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<double>>& rows,
                     const std::string& config_hash) {
  std::ofstream os = open_out(path, false);
  put_hash(os, config_hash);
  os << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << g17(row[i]);
    }
    os << "\n";
  }
  if (!os) fail("cannot write file", path);
}

nlohmann::ordered_json report_json(const FrameReport& rep) {
  nlohmann::ordered_json j;
  j["s"] = rep.s_val;
  j["S"] = rep.S_val;
  j["E"] = rep.E_val;
  j["A_candidate"] = rep.A_candidate;
  j["B_candidate"] = rep.B_candidate;
  j["A_emp"] = rep.A_emp;
  j["B_emp"] = rep.B_emp;
  j["eig_min"] = rep.eig_min;
  j["eig_max"] = rep.eig_max;
  j["const_factor"] = rep.const_factor;
  j["tail_fraction"] = rep.tail_fraction;
  j["probes_converged"] = rep.probes_converged;
  j["dense_used"] = rep.dense_used;
  j["rounds"] = rep.rounds;
  j["probe_count"] = rep.probe_count;
  j["pair_probe_count"] = rep.pair_probe_count;
  j["verdict"] = rep.verdict;
  return j;
}

void write_report_json(const std::string& path, const FrameReport& rep,
                       const nlohmann::ordered_json& inputs_echo,
                       const std::string& config_hash) {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash;
  j["inputs"] = inputs_echo;
  j["results"] = report_json(rep);
  write_json(path, j);
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream os = open_out(path, false);
  os << j.dump(2) << "\n";
  if (!os) fail("cannot write file", path);
}

}  // namespace qwave
