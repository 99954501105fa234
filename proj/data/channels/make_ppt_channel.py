#!/usr/bin/env python3
# Copyright 2026 The qcap Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes ppt_shield_4.json, a 4 -> 4 channel with a PPT Choi matrix.

The Choi state lives on a key pair AB and a shield pair A'B' (all qubits):

    rho = a|00><00| (x) X + a|11><11| (x) X + a|00><11| (x) Y + a|11><00| (x) Y^T
        + b|01><01| (x) Z + b|10><10| (x) Z

with a = 1/(2 + sqrt 2), b = a / sqrt 2, X = I/4, Z = diag(1/2, 0, 0, 1/2) and
Y = sum_ij h_ij |ij><ji| / 4 for h = [[1, 1], [1, -1]]. The partial transpose
on BB' is positive semidefinite (it sits on the boundary) and the AA'
marginal is I/4, so J = 4 rho is the Choi matrix of a CPTP map from AA' to
BB'. This is a reconstruction for exercising the analysis code; it is not a
published channel.

Usage: make_ppt_channel.py [OUTPUT]
"""

import json
import sys

import numpy as np


def choi_state():
    a = 1.0 / (2.0 + np.sqrt(2.0))
    b = a / np.sqrt(2.0)
    x = np.eye(4) / 4.0
    z = np.diag([0.5, 0.0, 0.0, 0.5])
    h = np.array([[1.0, 1.0], [1.0, -1.0]])
    y = np.zeros((4, 4))
    for i in range(2):
        for j in range(2):
            y[i * 2 + j, j * 2 + i] = h[i, j] / 4.0

    def e(i, j):
        return np.outer(np.eye(4)[i], np.eye(4)[j])

    rho = (a * np.kron(e(0, 0), x) + a * np.kron(e(3, 3), x)
           + a * np.kron(e(0, 3), y) + a * np.kron(e(3, 0), y.T)
           + b * np.kron(e(1, 1), z) + b * np.kron(e(2, 2), z))
    # Order A, B, A', B' -> (A A') (B B').
    return rho.reshape([2] * 8).transpose(0, 2, 1, 3, 4, 6, 5, 7).reshape(16, 16)


def kraus_from_choi(j, d_in, d_out):
    vals, vecs = np.linalg.eigh(j)
    ops = []
    for k in range(len(vals)):
        if vals[k] <= 1e-12:
            continue
        v = np.sqrt(vals[k]) * vecs[:, k]
        ops.append(v.reshape(d_in, d_out).T)
    return ops


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "ppt_shield_4.json"
    j = 4.0 * choi_state()
    ops = kraus_from_choi(j, 4, 4)
    completeness = sum(k.conj().T @ k for k in ops)
    assert np.allclose(completeness, np.eye(4), atol=1e-13)
    pt = j.reshape(4, 4, 4, 4).transpose(0, 3, 2, 1).reshape(16, 16)
    assert np.linalg.eigvalsh(pt).min() > -1e-12
    doc = {
        "dim_in": 4,
        "dim_out": 4,
        "kraus": [[[[float(z.real), float(z.imag)] for z in row] for row in k]
                  for k in ops],
    }
    with open(out, "w") as f:
        json.dump(doc, f)
        f.write("\n")
    print(f"wrote {out}: {len(ops)} Kraus operators")


if __name__ == "__main__":
    main()
