#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "qwave/field.hpp"

namespace qwave {

namespace {
// FFTW's planner is not thread-safe; execution of independent plans is.
std::mutex planner_mutex;
}  // namespace

void dft_inplace(std::vector<cplx>& data, const BoxSpec& box, int sign) {
  int ns[4] = {};
  for (int ax = 0; ax < box.dim; ++ax) {
    const int n = box.n[ax];
    if (n <= 0 || (n & (n - 1)) != 0) throw std::domain_error("unsupported size");
    ns[ax] = n;
  }
  if (data.size() != box.total()) throw std::invalid_argument("box mismatch");

  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft(box.dim, ns, ptr, ptr,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fft planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / std::sqrt(double(data.size()));
  for (auto& v : data) v *= scale;
}

SampledField fft(const SampledField& f) {
  SampledField out;
  out.box = f.box;
  out.values = f.values;
  dft_inplace(out.values, out.box, -1);
  return out;
}

SampledField ifft(const SampledField& f) {
  SampledField out;
  out.box = f.box;
  out.values = f.values;
  dft_inplace(out.values, out.box, +1);
  return out;
}

const std::vector<cplx>& SampledField::ensure_spectrum() {
  if (!spectrum) {
    std::vector<cplx> s = values;
    dft_inplace(s, box, -1);
    spectrum = std::move(s);
  }
  return *spectrum;
}

}  // namespace qwave
