#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qwave/analysis.hpp"
#include "qwave/field.hpp"
#include "qwave/frame_bounds.hpp"
#include "qwave/grid.hpp"
#include "qwave/quaternion.hpp"

namespace qwave {

// All writers are deterministic: no timestamps, floats as %.17g in CSV and
// shortest-round-trip in JSON, so identical data produces identical bytes.
// A nonempty config_hash is embedded as the leading "# config_hash=..." CSV
// comment (JSON carries it as a field).  IO failures and malformed files
// throw std::invalid_argument.

// Field container: little-endian "QWF1" magic, dim as int64, per-axis sample
// counts as int64, per-axis side lengths as float64, then row-major
// interleaved re/im float64 samples.
void write_field(const std::string& path, const SampledField& f);
SampledField read_field(const std::string& path);

// 2D text layout: "# config_hash=..." (optional), "# box=side0,side1,n0,n1",
// then one line per slowest index holding one quoted "re,im" cell per sample.
void write_field_csv(const std::string& path, const SampledField& f,
                     const std::string& config_hash = "");
SampledField read_field_csv(const std::string& path);

// Coefficient container: "QWC1" magic, int64 dim, int64 count, the grid spec
// (2D: lambda0 f64, L i64, t_max i64, beta0 f64, beta1 f64, m_range i64,
// scale_mode i64; 4D: lambda01 f64, lambda02 f64, L1 i64, L2 i64, t_max i64,
// j_max i64, beta0..beta3 f64, m_range i64, scale_mode i64), an index table
// of count * 8 int32 tuples (t, j, l, k, m0..m3; unused slots zero), then
// count re/im float64 pairs in enumeration order.
void write_coefficients(const std::string& path, const CoefficientSet& c);
CoefficientSet read_coefficients(const std::string& path);

// 2D columns t,l,m0,m1,re,im; 4D columns t,j,l,k,m0,m1,m2,m3,re,im.
void write_coefficients_csv(const std::string& path, const CoefficientSet& c,
                            const std::string& config_hash = "");

// One row per grid point with its derived continuous parameters:
// 2D t,l,m0,m1,a,theta,b0,b1;
// 4D t,j,l,k,m0,m1,m2,m3,lambda1,lambda2,theta1,theta2,b0,b1,b2,b3.
void write_grid_csv(const std::string& path, const GridSpec2D& g,
                    const std::string& config_hash = "");
void write_grid_csv(const std::string& path, const GridSpec4D& g,
                    const std::string& config_hash = "");

struct SweepRow {
  double beta = 0;
  FrameReport report;
};

// Columns beta,s,S,E,A_candidate,B_candidate,A_emp,B_emp,verdict.
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const std::string& config_hash = "");

// Quaternionic coefficients: columns n,q0,q1,q2,q3.
void write_quaternion_csv(const std::string& path, const std::vector<Quaternion>& qs,
                          const std::string& config_hash = "");

// Free-form numeric table: a header line and %.17g rows, for residual and
// error studies.
void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<double>>& rows,
                     const std::string& config_hash = "");

nlohmann::ordered_json report_json(const FrameReport& rep);

// {"config_hash": ..., "inputs": <echo>, "results": <report>}
void write_report_json(const std::string& path, const FrameReport& rep,
                       const nlohmann::ordered_json& inputs_echo,
                       const std::string& config_hash);

void write_json(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace qwave
