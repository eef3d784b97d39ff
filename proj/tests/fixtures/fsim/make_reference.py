# Copyright 2026 The Spotbench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the 64x64 FSIM fixture pair and prints the reference score.

Standalone numpy implementation of the feature-similarity index, kept
separate from the C++ code it checks.
"""

import math
import pathlib

import numpy as np
from scipy.signal import convolve2d

HERE = pathlib.Path(__file__).resolve().parent


def fixture_pair():
    y, x = np.mgrid[0:64, 0:64].astype(float)
    a = 128 + 60 * np.sin(x / 5.0) * np.cos(y / 7.0) + 30 * ((7 * x + 13 * y) % 17) / 17.0
    a[20:44, 24:40] += 40
    b = 120 + 55 * np.sin((x + 3) / 5.5) * np.cos((y - 2) / 6.5) + 25 * ((5 * x + 11 * y) % 13) / 13.0
    b[18:40, 26:44] -= 35
    return np.clip(np.floor(a), 0, 255), np.clip(np.floor(b), 0, 255)


def write_pgm(path, img):
    h, w = img.shape
    path.write_bytes(b"P5\n%d %d\n255\n" % (w, h) + img.astype(np.uint8).tobytes())


def axis(n):
    if n % 2:
        r = np.arange(-(n - 1) / 2, (n - 1) / 2 + 1) / (n - 1)
    else:
        r = np.arange(-n / 2, n / 2) / n
    return r


def phase_congruency(im):
    nscale, norient = 4, 4
    min_wave, mult, sigma_onf = 6, 2, 0.55
    d_theta_on_sigma, k, eps = 1.2, 2.0, 1e-4
    theta_sigma = math.pi / norient / d_theta_on_sigma
    rows, cols = im.shape
    image_fft = np.fft.fft2(im)
    x, y = np.meshgrid(axis(cols), axis(rows))
    radius = np.sqrt(x ** 2 + y ** 2)
    theta = np.arctan2(-y, x)
    lowpass = np.fft.ifftshift(1.0 / (1.0 + (radius / 0.45) ** 30))
    radius = np.fft.ifftshift(radius)
    theta = np.fft.ifftshift(theta)
    radius[0, 0] = 1
    sin_t, cos_t = np.sin(theta), np.cos(theta)
    log_gabor = []
    for s in range(nscale):
        fo = 1.0 / (min_wave * mult ** s)
        lg = np.exp(-(np.log(radius / fo)) ** 2 / (2 * math.log(sigma_onf) ** 2)) * lowpass
        lg[0, 0] = 0
        log_gabor.append(lg)
    energy_all = np.zeros((rows, cols))
    an_all = np.zeros((rows, cols))
    for o in range(norient):
        ang = o * math.pi / norient
        ds = sin_t * math.cos(ang) - cos_t * math.sin(ang)
        dc = cos_t * math.cos(ang) + sin_t * math.sin(ang)
        spread = np.exp(-np.abs(np.arctan2(ds, dc)) ** 2 / (2 * theta_sigma ** 2))
        eo, ifilt = [], []
        for s in range(nscale):
            filt = log_gabor[s] * spread
            ifilt.append(np.real(np.fft.ifft2(filt)) * math.sqrt(rows * cols))
            eo.append(np.fft.ifft2(image_fft * filt))
            if s == 0:
                em_n = np.sum(filt ** 2)
        sum_e = sum(np.real(e) for e in eo)
        sum_o = sum(np.imag(e) for e in eo)
        sum_an = sum(np.abs(e) for e in eo)
        x_energy = np.sqrt(sum_e ** 2 + sum_o ** 2) + eps
        mean_e, mean_o = sum_e / x_energy, sum_o / x_energy
        energy = np.zeros((rows, cols))
        for e in eo:
            er, ei = np.real(e), np.imag(e)
            energy += er * mean_e + ei * mean_o - np.abs(er * mean_o - ei * mean_e)
        mean_e2n = -np.median(np.abs(eo[0]) ** 2) / math.log(0.5)
        noise_power = mean_e2n / em_n
        an2 = sum(np.sum(f ** 2) for f in ifilt)
        aiaj = sum(np.sum(ifilt[i] * ifilt[j]) for i in range(nscale) for j in range(i + 1, nscale))
        tau = math.sqrt((2 * noise_power * an2 + 4 * noise_power * aiaj) / 2)
        t = (tau * math.sqrt(math.pi / 2) + k * math.sqrt((2 - math.pi / 2) * tau ** 2)) / 1.7
        energy_all += np.maximum(energy - t, 0)
        an_all += sum_an
    return energy_all / an_all


def fsim(a, b):
    dx = np.array([[3, 0, -3], [10, 0, -10], [3, 0, -3]]) / 16.0
    dy = np.array([[3, 10, 3], [0, 0, 0], [-3, -10, -3]]) / 16.0
    pc1, pc2 = phase_congruency(a), phase_congruency(b)
    g1 = np.hypot(convolve2d(a, dx, mode="same"), convolve2d(a, dy, mode="same"))
    g2 = np.hypot(convolve2d(b, dx, mode="same"), convolve2d(b, dy, mode="same"))
    s_pc = (2 * pc1 * pc2 + 0.85) / (pc1 ** 2 + pc2 ** 2 + 0.85)
    s_g = (2 * g1 * g2 + 160) / (g1 ** 2 + g2 ** 2 + 160)
    pcm = np.maximum(pc1, pc2)
    return float(np.sum(s_pc * s_g * pcm) / np.sum(pcm))


if __name__ == "__main__":
    a, b = fixture_pair()
    write_pgm(HERE / "pair_a.pgm", a)
    write_pgm(HERE / "pair_b.pgm", b)
    print("%.12f" % fsim(a, b))
