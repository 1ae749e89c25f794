"""Compare the compiled and NumPy field kernels.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. Both
backends evaluate the dual-polarization fields of random constant-modulus
weights over a full (theta, phi) grid; the script reports the best wall
time per backend and the largest absolute difference between them.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from asibeam import _backend
from asibeam.geometry import UraGeometry, angle_grid, phase_y, phase_z


def _case(m: int, n: int, step: float, rng: np.random.Generator):
    g = UraGeometry(m, n)
    d = angle_grid(step)
    wa = np.exp(2j * np.pi * rng.random((m, n)))
    wb = np.exp(2j * np.pi * rng.random((m, n)))
    psi_y = np.ascontiguousarray(np.broadcast_to(phase_y(g, d), d.shape), dtype=float)
    psi_z = np.ascontiguousarray(np.broadcast_to(phase_z(g, d), d.shape), dtype=float)
    return wa, wb, psi_y, psi_z


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--step", type=float, default=0.5, help="grid step in degrees")
    args = ap.parse_args()

    backends = {"python": _backend.python_kernels}
    if _backend.compiled_kernels is not None:
        backends["cython"] = _backend.compiled_kernels
    else:
        print("compiled extension not available; timing the NumPy kernel only")

    rng = np.random.default_rng(0)
    print(f"{'array':>8} {'points':>8} " + " ".join(f"{b:>10}" for b in backends) + "   max|diff|")
    for m, n in ((1, 8), (8, 8), (16, 16), (32, 32)):
        wa, wb, py, pz = _case(m, n, args.step, rng)
        times, outs = [], []
        for mod in backends.values():
            outs.append(mod.dual_pol_fields(wa, wb, py, pz))
            t = min(timeit.repeat(lambda: mod.dual_pol_fields(wa, wb, py, pz), number=1, repeat=args.repeat))
            times.append(t)
        diff = 0.0
        if len(outs) == 2:
            diff = max(float(np.max(np.abs(a - b))) for a, b in zip(outs[0], outs[1]))
        print(f"{m:>3}x{n:<4} {py.size:>8} " + " ".join(f"{t * 1e3:>8.2f}ms" for t in times) + f"   {diff:.2e}")


if __name__ == "__main__":
    main()
