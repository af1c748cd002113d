"""Benchmark the hot kernels: numba-compiled vs pure-numpy fallback.

Run:

    python benchmarks/bench_kernels.py

The script times the kernels in the current process (jitted when numba is
available) and then re-times them in a subprocess with QCHERNOFF_NO_NUMBA=1,
printing both alongside the speedup.
"""

import json
import os
import subprocess
import sys
import time

import numpy as np


def _spectral_case(rng, d=4):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    h = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    sigma = h @ h.conj().T
    sigma /= np.trace(sigma).real
    lam0, u0 = np.linalg.eigh(rho)
    lam1, u1 = np.linalg.eigh(sigma)
    w = np.abs(u0.conj().T @ u1) ** 2
    return (
        np.clip(lam0, 0.0, None),
        np.clip(lam1, 0.0, None),
        np.ascontiguousarray(w),
    )


def run_benchmarks():
    from qchernoff import kernels
    from qchernoff._accel import NUMBA_ENABLED

    rng = np.random.default_rng(0)
    lam0, lam1, w = _spectral_case(rng)
    x = np.array([0.1, 1.2, 0.9, 0.4])
    r0 = np.array([0.0, 0.0, 0.7])
    r1 = np.array([0.7, 0.0, 0.0])

    cases = {
        "bernoulli_chernoff": (kernels.bernoulli_chernoff, (0.81, 0.33), 200_000),
        "qubit_q_s": (kernels.qubit_q_s, (0.9, 0.7, 0.75, 0.4), 200_000),
        "q_s_spectral": (kernels.q_s_spectral, (lam0, lam1, w, 0.37), 50_000),
        "min_q_s_spectral": (kernels.min_q_s_spectral, (lam0, lam1, w), 2_000),
        "dcc_objective": (kernels.dcc_objective, (x, r0, r1), 100_000),
    }

    results = {}
    for name, (fn, args, reps) in cases.items():
        fn(*args)  # warm-up / compile
        t0 = time.perf_counter()
        for _ in range(reps):
            fn(*args)
        per_call = (time.perf_counter() - t0) / reps
        results[name] = per_call
    return {"numba": NUMBA_ENABLED, "per_call_s": results}


def main():
    here = run_benchmarks()
    if os.environ.get("QCHERNOFF_BENCH_CHILD"):
        print(json.dumps(here))
        return
    env = dict(os.environ, QCHERNOFF_NO_NUMBA="1", QCHERNOFF_BENCH_CHILD="1")
    child = subprocess.run(
        [sys.executable, os.path.abspath(__file__)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    other = json.loads(child.stdout.strip().splitlines()[-1])
    jitted, plain = (here, other) if here["numba"] else (other, here)
    if not jitted["numba"]:
        print("numba unavailable: both paths are pure numpy")
    print(f"{'kernel':<26}{'numba [us]':>12}{'numpy [us]':>12}{'speedup':>9}")
    for name in here["per_call_s"]:
        tj = jitted["per_call_s"][name] * 1e6
        tp = plain["per_call_s"][name] * 1e6
        print(f"{name:<26}{tj:>12.2f}{tp:>12.2f}{tp / tj:>9.1f}")


if __name__ == "__main__":
    main()
