"""Manufactured-solution round trip through the command line.

Writes phi sampled from c*_k = 1/(1 + k^2), |k| <= 3, to a CSV file, solves
with ``distorder solve cauchy`` and compares the returned coefficients.
Exit status 0 when every |c_k - c*_k| <= 1e-8.
"""
import argparse
import json
import os
import subprocess
import sys
import tempfile

from distorder.verification import manufactured_cauchy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=float, default=1.0)
    ap.add_argument("--nodes", type=int, default=513)
    ap.add_argument("--kmax", type=int, default=8)
    ap.add_argument("--tol", type=float, default=1e-8)
    args = ap.parse_args()

    p, coefs = manufactured_cauchy(a=args.a, k_max=args.kmax, nodes=args.nodes)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "phi.csv")
        with open(path, "w") as fh:
            fh.write("alpha,re,im\n")
            for al, val in zip(p.phi.alphas, p.phi.values):
                fh.write(f"{float(al)!r},{float(val.real)!r},{float(val.imag)!r}\n")
        res = subprocess.run(
            [sys.executable, "-m", "distorder.cli", "solve", "cauchy", "--a", repr(args.a),
             "--phi", f"csv:{path}", "--kmax", str(args.kmax)],
            capture_output=True, text=True,
        )
    if res.returncode != 0:
        sys.stderr.write(res.stderr)
        return res.returncode
    got = {e["k"]: complex(e["re"], e["im"]) for e in json.loads(res.stdout)["coefficients"]}
    worst = 0.0
    for k in sorted(got):
        err = abs(got[k] - coefs.get(k, 0.0))
        worst = max(worst, err)
        print(f"k={k:+3d}  c_k={got[k].real:+.15f}{got[k].imag:+.2e}j  expected={coefs.get(k, 0.0):.15f}  err={err:.2e}")
    ok = worst <= args.tol
    print(f"max error {worst:.3e} ({'PASS' if ok else 'FAIL'} at {args.tol:g})")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
