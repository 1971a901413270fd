"""Compare the compiled kernels with the numpy fallback.

Each backend runs in its own interpreter (the backend is fixed at import).

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, math, time
import numpy as np
import distorder
from distorder import CharacteristicRoot, eval_h, termwise_deriv, solve_cauchy
from distorder import _kernels
from distorder.verification import manufactured_cauchy

beta = math.sqrt(2.0)
repeat = int(REPEAT)

def best(fn):
    t = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        t.append(time.perf_counter() - t0)
    return min(t)

nu = np.linspace(-1.0, 40.0, 4096)
lam = CharacteristicRoot(3, beta)
vals = np.exp(1j * np.linspace(0.0, 3.0, 3000))
w = _kernels.gl_weights(0.5, vals.size)
p, _ = manufactured_cauchy()
out = {
    "backend": distorder.BACKEND,
    "h_integrand (4096 nodes x 200)": best(lambda: [_kernels.h_integrand(nu, 0.3, lam.log, 0.0, False) for _ in range(200)]),
    "rgamma (4096 nodes x 200)": best(lambda: [_kernels.rgamma(nu + 1.5) for _ in range(200)]),
    "gl_convolve (3000 samples x 20)": best(lambda: [_kernels.gl_convolve(vals, w) for _ in range(20)]),
    "eval_h (50 points)": best(lambda: [eval_h(0.2 + 0.1 * i, lam) for i in range(50)]),
    "termwise_deriv (20 points)": best(lambda: [termwise_deriv(0.5 + 0.2 * i, lam, 0.7) for i in range(20)]),
    "solve_cauchy (manufactured)": best(lambda: solve_cauchy(p)),
}
print(json.dumps(out))
"""


def run(pure, repeat):
    env = dict(os.environ)
    if pure:
        env["DISTORDER_PURE_PYTHON"] = "1"
    else:
        env.pop("DISTORDER_PURE_PYTHON", None)
    code = WORKLOAD.replace("REPEAT", str(repeat))
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] != "compiled":
        print("compiled extension not available; both runs use the numpy fallback")
    print(f"{'workload':34s} {'compiled [s]':>13s} {'python [s]':>11s} {'speedup':>8s}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:34s} {fast[key]:13.4f} {slow[key]:11.4f} {slow[key] / fast[key]:7.1f}x")


if __name__ == "__main__":
    main()
