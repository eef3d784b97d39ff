// Copyright 2026 The Spotbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spotbench/similarity.h"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "spotbench/errors.h"
#include "spotbench/format.h"
#include "spotbench/rng.h"

namespace spotbench::sim {
namespace {

namespace fs = std::filesystem;
using Cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void RequireSameSize(const GrayImage& a, const GrayImage& b, int min_side, const char* what) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw ArgumentError(std::string(what) + ": image dimensions differ");
  }
  if (std::min(a.width(), a.height()) < min_side) {
    throw ArgumentError(std::string(what) + ": images must be at least " +
                        std::to_string(min_side) + " pixels on each side");
  }
}

std::vector<double> Gaussian1d() {
  std::vector<double> g(kSsimWindow);
  const int half = kSsimWindow / 2;
  double sum = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - half;
    g[i] = std::exp(-(d * d) / (2.0 * kSsimSigma * kSsimSigma));
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return g;
}

// 'valid' separable filtering of a w x h field.
std::vector<double> FilterValid(const std::vector<double>& f, int w, int h,
                                const std::vector<double>& g) {
  const int k = static_cast<int>(g.size());
  const int ow = w - k + 1;
  const int oh = h - k + 1;
  std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += g[i] * f[static_cast<std::size_t>(y) * w + x + i];
      tmp[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += g[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  return out;
}

// Zero-padded 2-D convolution returning the central part ('same').
std::vector<double> ConvSame(const std::vector<double>& f, int w, int h,
                             const std::vector<double>& kernel, int kw, int kh) {
  std::vector<double> out(f.size());
  const int cx = kw / 2;
  const int cy = kh / 2;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int v = 0; v < kh; ++v) {
        const int sy = y + cy - v;
        if (sy < 0 || sy >= h) continue;
        for (int u = 0; u < kw; ++u) {
          const int sx = x + cx - u;
          if (sx < 0 || sx >= w) continue;
          s += f[static_cast<std::size_t>(sy) * w + sx] * kernel[static_cast<std::size_t>(v) * kw + u];
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = s;
    }
  }
  return out;
}

void Fft2(std::vector<Cplx>& data, int rows, int cols, bool inverse) {
  Eigen::FFT<double> fft;
  std::vector<Cplx> in(cols);
  std::vector<Cplx> out;
  for (int r = 0; r < rows; ++r) {
    std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(r) * cols, cols, in.begin());
    if (inverse) {
      fft.inv(out, in);
    } else {
      fft.fwd(out, in);
    }
    std::copy(out.begin(), out.end(), data.begin() + static_cast<std::ptrdiff_t>(r) * cols);
  }
  in.resize(rows);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) in[r] = data[static_cast<std::size_t>(r) * cols + c];
    if (inverse) {
      fft.inv(out, in);
    } else {
      fft.fwd(out, in);
    }
    for (int r = 0; r < rows; ++r) data[static_cast<std::size_t>(r) * cols + c] = out[r];
  }
}

// Frequency coordinates of an n-point axis, already in unshifted order.
std::vector<double> FrequencyAxis(int n) {
  std::vector<double> shifted(n);
  for (int i = 0; i < n; ++i) {
    shifted[i] = n % 2 ? (i - (n - 1) / 2.0) / (n - 1) : (i - n / 2.0) / n;
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = shifted[(i + n / 2) % n];
  return out;
}

constexpr int kScales = 4;
constexpr int kOrients = 4;
constexpr double kMinWaveLength = 6.0;
constexpr double kMult = 2.0;
constexpr double kSigmaOnf = 0.55;
constexpr double kDThetaOnSigma = 1.2;
constexpr double kNoiseK = 2.0;
constexpr double kEpsilon = 1e-4;

struct LogGaborBank {
  int rows = 0;
  int cols = 0;
  std::vector<double> filter[kOrients][kScales];
  double em_n[kOrients] = {};
  double noise_sum_an2[kOrients] = {};
  double noise_sum_aiaj[kOrients] = {};
};

std::shared_ptr<const LogGaborBank> BuildBank(int rows, int cols) {
  auto bank = std::make_shared<LogGaborBank>();
  bank->rows = rows;
  bank->cols = cols;
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  const auto fx = FrequencyAxis(cols);
  const auto fy = FrequencyAxis(rows);
  std::vector<double> radius(n), sintheta(n), costheta(n), lowpass(n);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * cols + c;
      const double rad = std::hypot(fx[c], fy[r]);
      lowpass[i] = 1.0 / (1.0 + std::pow(rad / 0.45, 2 * 15));
      radius[i] = rad;
      const double theta = std::atan2(-fy[r], fx[c]);
      sintheta[i] = std::sin(theta);
      costheta[i] = std::cos(theta);
    }
  }
  radius[0] = 1.0;

  std::vector<double> log_gabor[kScales];
  for (int s = 0; s < kScales; ++s) {
    const double fo = 1.0 / (kMinWaveLength * std::pow(kMult, s));
    const double denom = 2.0 * std::log(kSigmaOnf) * std::log(kSigmaOnf);
    log_gabor[s].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double l = std::log(radius[i] / fo);
      log_gabor[s][i] = std::exp(-(l * l) / denom) * lowpass[i];
    }
    log_gabor[s][0] = 0.0;
  }

  const double theta_sigma = kPi / kOrients / kDThetaOnSigma;
  const double scale = std::sqrt(static_cast<double>(n));
  for (int o = 0; o < kOrients; ++o) {
    const double angle = o * kPi / kOrients;
    std::vector<double> spread(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double ds = sintheta[i] * std::cos(angle) - costheta[i] * std::sin(angle);
      const double dc = costheta[i] * std::cos(angle) + sintheta[i] * std::sin(angle);
      const double dtheta = std::abs(std::atan2(ds, dc));
      spread[i] = std::exp(-(dtheta * dtheta) / (2.0 * theta_sigma * theta_sigma));
    }
    std::vector<std::vector<double>> spatial(kScales);
    for (int s = 0; s < kScales; ++s) {
      auto& f = bank->filter[o][s];
      f.resize(n);
      for (std::size_t i = 0; i < n; ++i) f[i] = log_gabor[s][i] * spread[i];
      std::vector<Cplx> tmp(f.begin(), f.end());
      Fft2(tmp, rows, cols, true);
      spatial[s].resize(n);
      for (std::size_t i = 0; i < n; ++i) spatial[s][i] = tmp[i].real() * scale;
    }
    double em = 0.0;
    for (double v : bank->filter[o][0]) em += v * v;
    bank->em_n[o] = em;
    double an2 = 0.0;
    double aiaj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (int s = 0; s < kScales; ++s) an2 += spatial[s][i] * spatial[s][i];
      for (int si = 0; si < kScales - 1; ++si) {
        for (int sj = si + 1; sj < kScales; ++sj) aiaj += spatial[si][i] * spatial[sj][i];
      }
    }
    bank->noise_sum_an2[o] = an2;
    bank->noise_sum_aiaj[o] = aiaj;
  }
  return bank;
}

std::shared_ptr<const LogGaborBank> BankFor(int rows, int cols) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const LogGaborBank>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{rows, cols}];
  if (!slot) slot = BuildBank(rows, cols);
  return slot;
}

double Median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

std::vector<double> PhaseCongruency(const std::vector<double>& img, int rows, int cols) {
  const auto bank = BankFor(rows, cols);
  const std::size_t n = img.size();
  std::vector<Cplx> spectrum(img.begin(), img.end());
  Fft2(spectrum, rows, cols, false);

  std::vector<double> energy_all(n, 0.0);
  std::vector<double> an_all(n, 0.0);
  std::vector<Cplx> eo[kScales];
  for (int o = 0; o < kOrients; ++o) {
    std::vector<double> sum_e(n, 0.0), sum_o(n, 0.0), sum_an(n, 0.0);
    for (int s = 0; s < kScales; ++s) {
      const auto& f = bank->filter[o][s];
      eo[s].resize(n);
      for (std::size_t i = 0; i < n; ++i) eo[s][i] = spectrum[i] * f[i];
      Fft2(eo[s], rows, cols, true);
      for (std::size_t i = 0; i < n; ++i) {
        sum_an[i] += std::abs(eo[s][i]);
        sum_e[i] += eo[s][i].real();
        sum_o[i] += eo[s][i].imag();
      }
    }
    std::vector<double> energy(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double x_energy = std::hypot(sum_e[i], sum_o[i]) + kEpsilon;
      const double mean_e = sum_e[i] / x_energy;
      const double mean_o = sum_o[i] / x_energy;
      for (int s = 0; s < kScales; ++s) {
        const double e = eo[s][i].real();
        const double od = eo[s][i].imag();
        energy[i] += e * mean_e + od * mean_o - std::abs(e * mean_o - od * mean_e);
      }
    }
    std::vector<double> first_power(n);
    for (std::size_t i = 0; i < n; ++i) first_power[i] = std::norm(eo[0][i]);
    const double mean_e2n = -Median(std::move(first_power)) / std::log(0.5);
    const double noise_power = mean_e2n / bank->em_n[o];
    const double est_noise_energy2 =
        2.0 * noise_power * bank->noise_sum_an2[o] + 4.0 * noise_power * bank->noise_sum_aiaj[o];
    const double tau = std::sqrt(est_noise_energy2 / 2.0);
    const double est_noise_energy = tau * std::sqrt(kPi / 2.0);
    const double est_noise_sigma = std::sqrt((2.0 - kPi / 2.0) * tau * tau);
    const double t = (est_noise_energy + kNoiseK * est_noise_sigma) / 1.7;
    for (std::size_t i = 0; i < n; ++i) {
      energy_all[i] += std::max(energy[i] - t, 0.0);
      an_all[i] += sum_an[i];
    }
  }
  std::vector<double> pc(n);
  for (std::size_t i = 0; i < n; ++i) pc[i] = an_all[i] > 0.0 ? energy_all[i] / an_all[i] : 0.0;
  return pc;
}

Eigen::MatrixXd Covariance(const FeatureMatrix& m, Eigen::VectorXd& mean) {
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      x(m.values().data(), m.rows(), m.dim());
  mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(m.rows() - 1);
  return 0.5 * (cov + cov.transpose());
}

Eigen::MatrixXd SqrtPsd(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = std::sqrt(std::max(ev[i], 0.0));
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

FeatureMatrix::FeatureMatrix(int rows, int dim, std::vector<double> values,
                             std::vector<std::string> ids)
    : rows_(rows), dim_(dim), values_(std::move(values)), ids_(std::move(ids)) {
  if (rows < 0 || dim <= 0) throw ArgumentError("feature matrix needs positive dimensions");
  if (values_.size() != static_cast<std::size_t>(rows) * dim) {
    throw ArgumentError("feature value count does not match rows x dim");
  }
  if (!ids_.empty() && ids_.size() != static_cast<std::size_t>(rows)) {
    throw ArgumentError("feature id count does not match rows");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ArgumentError("feature matrix holds a non-finite value");
  }
}

FeatureMatrix ReadFeatureCsv(const std::string& path) {
  const std::string content = ReadFile(path);
  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  int dim = -1;
  std::vector<double> values;
  std::vector<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const auto cells = CsvSplit(line);
    if (cells.size() < 2) throw ParseError(path, lineno, "expected image_id and features");
    double probe = 0.0;
    if (ids.empty() && dim < 0 && !ParseReal(cells[1], probe)) {
      dim = static_cast<int>(cells.size()) - 1;
      continue;
    }
    const int row_dim = static_cast<int>(cells.size()) - 1;
    if (dim >= 0 && row_dim != dim) {
      throw ParseError(path, lineno,
                       "expected " + std::to_string(dim) + " features, got " +
                           std::to_string(row_dim));
    }
    dim = row_dim;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double v = 0.0;
      if (!ParseReal(cells[c], v) || !std::isfinite(v)) {
        throw ParseError(path, lineno, "bad feature value '" + cells[c] + "'");
      }
      values.push_back(v);
    }
    ids.push_back(std::string(Trim(cells[0])));
  }
  if (ids.empty()) throw ParseError(path, lineno, "no feature rows");
  const int rows = static_cast<int>(ids.size());
  return FeatureMatrix(rows, dim, std::move(values), std::move(ids));
}

std::vector<double> SsimWindow() {
  const auto g = Gaussian1d();
  std::vector<double> w(kSsimWindow * kSsimWindow);
  for (int y = 0; y < kSsimWindow; ++y) {
    for (int x = 0; x < kSsimWindow; ++x) w[y * kSsimWindow + x] = g[y] * g[x];
  }
  return w;
}

double Ssim(const GrayImage& a, const GrayImage& b) {
  RequireSameSize(a, b, kSsimWindow, "ssim");
  const int w = a.width();
  const int h = a.height();
  const auto& pa = a.pixels();
  const auto& pb = b.pixels();
  std::vector<double> aa(pa.size()), bb(pa.size()), ab(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    aa[i] = pa[i] * pa[i];
    bb[i] = pb[i] * pb[i];
    ab[i] = pa[i] * pb[i];
  }
  const auto g = Gaussian1d();
  const auto mu_a = FilterValid(pa, w, h, g);
  const auto mu_b = FilterValid(pb, w, h, g);
  const auto e_aa = FilterValid(aa, w, h, g);
  const auto e_bb = FilterValid(bb, w, h, g);
  const auto e_ab = FilterValid(ab, w, h, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i];
    const double mb = mu_b[i];
    const double va = e_aa[i] - ma * ma;
    const double vb = e_bb[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    sum += ((2.0 * ma * mb + kSsimC1) * (2.0 * cov + kSsimC2)) /
           ((ma * ma + mb * mb + kSsimC1) * (va + vb + kSsimC2));
  }
  return sum / static_cast<double>(mu_a.size());
}

FsimMaps ComputeFsimMaps(const GrayImage& img) {
  int w = img.width();
  int h = img.height();
  std::vector<double> y = img.pixels();
  const int f = std::max(1, static_cast<int>(std::lround(std::min(w, h) / 256.0)));
  if (f > 1) {
    const std::vector<double> box(static_cast<std::size_t>(f) * f, 1.0 / (f * f));
    const auto smoothed = ConvSame(y, w, h, box, f, f);
    const int dw = (w + f - 1) / f;
    const int dh = (h + f - 1) / f;
    y.assign(static_cast<std::size_t>(dw) * dh, 0.0);
    for (int r = 0; r < dh; ++r) {
      for (int c = 0; c < dw; ++c) {
        y[static_cast<std::size_t>(r) * dw + c] =
            smoothed[static_cast<std::size_t>(r) * f * w + static_cast<std::size_t>(c) * f];
      }
    }
    w = dw;
    h = dh;
  }
  FsimMaps out;
  out.width = w;
  out.height = h;
  out.phase_congruency = PhaseCongruency(y, h, w);
  const std::vector<double> dx = {3.0 / 16, 0, -3.0 / 16, 10.0 / 16, 0, -10.0 / 16,
                                  3.0 / 16, 0, -3.0 / 16};
  const std::vector<double> dy = {3.0 / 16,  10.0 / 16,  3.0 / 16, 0, 0, 0,
                                  -3.0 / 16, -10.0 / 16, -3.0 / 16};
  const auto gx = ConvSame(y, w, h, dx, 3, 3);
  const auto gy = ConvSame(y, w, h, dy, 3, 3);
  out.gradient.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out.gradient[i] = std::hypot(gx[i], gy[i]);
  return out;
}

double FsimFromMaps(const FsimMaps& a, const FsimMaps& b) {
  if (a.width != b.width || a.height != b.height) {
    throw ArgumentError("fsim: map dimensions differ");
  }
  constexpr double kT1 = 0.85;
  constexpr double kT2 = 160.0;
  double weighted = 0.0;
  double weight = 0.0;
  double plain = 0.0;
  const std::size_t n = a.gradient.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double p1 = a.phase_congruency[i];
    const double p2 = b.phase_congruency[i];
    const double g1 = a.gradient[i];
    const double g2 = b.gradient[i];
    const double s_pc = (2.0 * p1 * p2 + kT1) / (p1 * p1 + p2 * p2 + kT1);
    const double s_g = (2.0 * g1 * g2 + kT2) / (g1 * g1 + g2 * g2 + kT2);
    const double pcm = std::max(p1, p2);
    weighted += s_pc * s_g * pcm;
    weight += pcm;
    plain += s_pc * s_g;
  }
  if (weight > 0.0) return weighted / weight;
  return plain / static_cast<double>(n);
}

double Fsim(const GrayImage& a, const GrayImage& b) {
  RequireSameSize(a, b, 32, "fsim");
  return FsimFromMaps(ComputeFsimMaps(a), ComputeFsimMaps(b));
}

double Fid(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.dim() != b.dim()) throw ArgumentError("fid: feature dimensions differ");
  if (a.rows() < 2 || b.rows() < 2) throw ArgumentError("fid: each side needs at least 2 rows");
  Eigen::VectorXd mu_a, mu_b;
  const Eigen::MatrixXd sa = Covariance(a, mu_a);
  const Eigen::MatrixXd sb = Covariance(b, mu_b);
  const Eigen::MatrixXd root_a = SqrtPsd(sa);
  Eigen::MatrixXd m = root_a * sb * root_a;
  m = 0.5 * (m + m.transpose());
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                                 m, Eigen::EigenvaluesOnly)
                                 .eigenvalues();
  const double floor = -1e-8 * std::max(std::abs(m.trace()), 1e-300);
  double tr_sqrt = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double v = ev[i];
    if (v < 0.0 && v > floor) v = 0.0;
    tr_sqrt += std::sqrt(std::max(v, 0.0));
  }
  const double value = (mu_a - mu_b).squaredNorm() + sa.trace() + sb.trace() - 2.0 * tr_sqrt;
  return std::max(value, 0.0);
}

std::vector<double> BuiltinDescriptor(const GrayImage& img) {
  if (img.width() < 16 || img.height() < 16) {
    throw ArgumentError("builtin descriptor needs an image of at least 16x16");
  }
  std::vector<double> out(kDescriptorGrid * kDescriptorGrid);
  for (int gy = 0; gy < kDescriptorGrid; ++gy) {
    const int y0 = gy * img.height() / kDescriptorGrid;
    const int y1 = (gy + 1) * img.height() / kDescriptorGrid;
    for (int gx = 0; gx < kDescriptorGrid; ++gx) {
      const int x0 = gx * img.width() / kDescriptorGrid;
      const int x1 = (gx + 1) * img.width() / kDescriptorGrid;
      double sum = 0.0;
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) sum += img.at(x, y);
      }
      out[gy * kDescriptorGrid + gx] = sum / (255.0 * (y1 - y0) * (x1 - x0));
    }
  }
  return out;
}

std::vector<NamedImage> LoadImageDirectory(const std::string& directory,
                                           std::vector<std::string>& warnings) {
  if (!fs::is_directory(directory)) throw IoError("not a directory: " + directory);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<NamedImage> out;
  for (const auto& p : files) {
    try {
      out.push_back({p.stem().string(), ReadPgm(p.string())});
    } catch (const std::exception& e) {
      warnings.push_back("skipped unreadable image " + p.string() + ": " + e.what());
    }
  }
  if (out.empty()) throw IoError("no readable PGM images in " + directory);
  return out;
}

std::vector<GrayImage> TextRegionCrops(const GrayImage& img,
                                       const annot::ImageAnnotations& annotations) {
  std::vector<GrayImage> out;
  for (const auto& inst : annotations.instances) {
    if (inst.ignore) continue;
    double x0 = inst.polygon[0].x, x1 = x0, y0 = inst.polygon[0].y, y1 = y0;
    for (const auto& p : inst.polygon.vertices()) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    const int ix0 = static_cast<int>(std::floor(x0));
    const int iy0 = static_cast<int>(std::floor(y0));
    const int ix1 = static_cast<int>(std::ceil(x1));
    const int iy1 = static_cast<int>(std::ceil(y1));
    if (std::min(ix1, img.width()) <= std::max(ix0, 0) ||
        std::min(iy1, img.height()) <= std::max(iy0, 0)) {
      continue;
    }
    out.push_back(Crop(img, ix0, iy0, ix1, iy1));
  }
  return out;
}

std::vector<std::pair<int, int>> SamplePairs(int num_src, int num_tgt,
                                             const SimilarityConfig& cfg) {
  if (num_src <= 0 || num_tgt <= 0) throw ArgumentError("both datasets must be non-empty");
  if (cfg.pair_samples <= 0) throw ArgumentError("pair_samples must be positive");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(cfg.pair_samples);
  if (cfg.pair_mode == PairMode::kIdentical) {
    if (num_src != num_tgt) throw ArgumentError("identical pair mode needs equal dataset sizes");
    for (int k = 0; k < cfg.pair_samples; ++k) pairs.emplace_back(k % num_src, k % num_src);
    return pairs;
  }
  Rng rng(cfg.seed);
  for (int k = 0; k < cfg.pair_samples; ++k) {
    const int s = static_cast<int>(rng.Below(static_cast<std::uint64_t>(num_src)));
    const int t = static_cast<int>(rng.Below(static_cast<std::uint64_t>(num_tgt)));
    pairs.emplace_back(s, t);
  }
  return pairs;
}

SimilarityRow DatasetPairSimilarity(const std::string& source_name,
                                    const std::vector<GrayImage>& source,
                                    const std::string& target_name,
                                    const std::vector<GrayImage>& target,
                                    const SimilarityConfig& cfg,
                                    const FeatureMatrix* source_features,
                                    const FeatureMatrix* target_features, Exec exec) {
  if (source.empty() || target.empty()) throw ArgumentError("both datasets must be non-empty");
  if (cfg.common_size < 32) throw ArgumentError("common_size must be at least 32");
  if ((source_features == nullptr) != (target_features == nullptr)) {
    throw ArgumentError("external features must be given for both datasets or neither");
  }
  const int size = cfg.common_size;
  std::vector<GrayImage> src(source.size()), tgt(target.size());
  ForEachIndex(src.size(), exec, [&](std::size_t i) { src[i] = ResizeNearest(source[i], size, size); });
  ForEachIndex(tgt.size(), exec, [&](std::size_t i) { tgt[i] = ResizeNearest(target[i], size, size); });

  const auto pairs =
      SamplePairs(static_cast<int>(src.size()), static_cast<int>(tgt.size()), cfg);

  std::vector<double> ssim(pairs.size());
  ForEachIndex(pairs.size(), exec, [&](std::size_t k) {
    ssim[k] = Ssim(src[pairs[k].first], tgt[pairs[k].second]);
  });

  std::vector<double> fsim(pairs.size(), 0.0);
  if (cfg.compute_fsim) {
    std::vector<char> src_used(src.size(), 0), tgt_used(tgt.size(), 0);
    for (const auto& [s, t] : pairs) {
      src_used[s] = 1;
      tgt_used[t] = 1;
    }
    std::vector<FsimMaps> src_maps(src.size()), tgt_maps(tgt.size());
    ForEachIndex(src.size(), exec, [&](std::size_t i) {
      if (src_used[i]) src_maps[i] = ComputeFsimMaps(src[i]);
    });
    ForEachIndex(tgt.size(), exec, [&](std::size_t i) {
      if (tgt_used[i]) tgt_maps[i] = ComputeFsimMaps(tgt[i]);
    });
    ForEachIndex(pairs.size(), exec, [&](std::size_t k) {
      fsim[k] = FsimFromMaps(src_maps[pairs[k].first], tgt_maps[pairs[k].second]);
    });
  }

  SimilarityRow row;
  row.source_dataset = source_name;
  row.target_dataset = target_name;
  double ssim_sum = 0.0;
  double fsim_sum = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    ssim_sum += ssim[k];
    fsim_sum += fsim[k];
  }
  row.ssim = ssim_sum / static_cast<double>(pairs.size());
  row.fsim = fsim_sum / static_cast<double>(pairs.size());

  if (source_features != nullptr) {
    row.fid = Fid(*source_features, *target_features);
  } else {
    const auto describe = [&](const std::vector<GrayImage>& images) {
      constexpr int kDim = kDescriptorGrid * kDescriptorGrid;
      std::vector<double> values(images.size() * kDim);
      ForEachIndex(images.size(), exec, [&](std::size_t i) {
        const auto d = BuiltinDescriptor(images[i]);
        std::copy(d.begin(), d.end(), values.begin() + static_cast<std::ptrdiff_t>(i * kDim));
      });
      return FeatureMatrix(static_cast<int>(images.size()), kDim, std::move(values));
    };
    row.fid = Fid(describe(src), describe(tgt));
  }
  return row;
}

}  // namespace spotbench::sim
