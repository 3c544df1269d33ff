"""Build every model of e6, check Jacobi exactly, and print the grading types.

    python3 demos/build_models.py
"""

import time

from e6weyl.gradings import EXPECTED_TYPES, REALIZATIONS, build_gamma
from e6weyl.models import PRIMARY_MODELS, build_model

for name in PRIMARY_MODELS:
    t = time.perf_counter()
    M = build_model(name)
    rep = M.algebra.check_jacobi()
    blocks = ", ".join(f"{k}:{len(r)}" for k, r in M.blocks.items())
    print(f"{name:16s} dim {M.dim}  Jacobi {'ok' if rep.ok else 'FAILS'}  [{blocks}]  {time.perf_counter() - t:.1f}s")

print()
for gid, reals in REALIZATIONS.items():
    for real in reals:
        gr = build_gamma(gid, realization=real)
        fmt = "(" + ",".join(map(str, gr.type())) + ")"
        print(f"Gamma{gid} on {real:13s} over {gr.signature.describe():14s} type {fmt:16s} claimed {EXPECTED_TYPES[gid]}")
