#!/usr/bin/env python3
# Copyright 2026 The EPSM Authors. All Rights Reserved.
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
"""50-digit reference values for the pedestrian injury regressions."""

import pathlib

from mpmath import mp, mpf, exp

mp.dps = 50


def logistic(z):
    return 1 / (1 + exp(-z))


def p_k(v, a):
    return logistic(mpf("-8.0941") + mpf("0.0012") * v * v + mpf("0.0525") * a)


def p_ksi(v, a):
    return logistic(mpf("-2.9893") + mpf("0.0013") * v * v + mpf("0.0286") * a)


out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "pedestrian_grid.csv"
rows = ["v_kmh,age,p_k,p_ksi"]
for v in range(0, 100, 10):
    for a in (5, 25, 45, 65, 85):
        rows.append(f"{v},{a},{mp.nstr(p_k(mpf(v), mpf(a)), 25)},{mp.nstr(p_ksi(mpf(v), mpf(a)), 25)}")
out.write_text("\n".join(rows) + "\n")
