#!/usr/bin/env python3
"""Regenerates tests/fixtures/cos_k2 with numpy.

The matrices come from the counter-based generator documented in
core/include/moikit/rng.hpp, ported below, so the C++ tests can rebuild
them from the seed and compare. The expected derivative is a central
finite difference of numpy's eigh-based cos(A), independent of the
library.
"""
import json
import math
import pathlib

import numpy as np

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class CounterRng:
    def __init__(self, seed, stream=0):
        self.key = seed ^ mix64(stream)
        self.counter = 0

    def next_u64(self):
        self.counter += 1
        return mix64((self.key + self.counter * GOLDEN) & MASK)

    def uniform(self):
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self):
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def complex_normal(self):
        re = self.normal()
        im = self.normal()
        return complex(re * math.sqrt(2.0) / 2.0, im * math.sqrt(2.0) / 2.0)


def random_hermitian(rng, n):
    g = np.array([[rng.complex_normal() for _ in range(n)] for _ in range(n)])
    h = 0.5 * (g + g.conj().T)
    return h - 1j * np.diag(np.diag(h).imag)


def matrix_doc(m):
    return {"n": m.shape[0], "re": m.real.tolist(), "im": m.imag.tolist()}


def cos_of(m):
    w, v = np.linalg.eigh(m)
    return (v * np.cos(w)) @ v.conj().T


def fd_second(a, b1, b2, h):
    acc = np.zeros_like(a)
    for s1 in (-1.0, 1.0):
        for s2 in (-1.0, 1.0):
            acc += s1 * s2 * cos_of(a + h * (s1 * b1 + s2 * b2))
    return acc / (2.0 * h) ** 2


def main():
    out = pathlib.Path(__file__).resolve().parent / "cos_k2"
    out.mkdir(exist_ok=True)
    n = 4
    rng = CounterRng(42, 7)
    a = 0.5 * random_hermitian(rng, n)
    b1 = 0.25 * random_hermitian(rng, n)
    b2 = 0.25 * random_hermitian(rng, n)

    # Richardson-refined central difference, step 1e-4 (1 + ||A||).
    h = 1e-4 * (1.0 + np.linalg.norm(a, 2))
    expected = (4.0 * fd_second(a, b1, b2, h / 2) - fd_second(a, b1, b2, h)) / 3.0

    files = {"A.json": a, "B1.json": b1, "B2.json": b2, "expected.json": expected}
    for name, m in files.items():
        (out / name).write_text(json.dumps(matrix_doc(m)) + "\n")
    (out / "function.json").write_text(
        json.dumps({"kind": "builtin", "name": "cos", "params": {"omega": 1.0}}) + "\n")
    config = {
        "function": "function.json",
        "matrices": ["A.json", "B1.json", "B2.json"],
        "order": 2,
        "strategy": "moi",
        "seed": 42,
    }
    (out / "config.json").write_text(json.dumps(config, indent=2) + "\n")


if __name__ == "__main__":
    main()
