"""Regenerate crates/core/tests/data/faddeeva_reference.csv.

Reference values of w(z) = exp(-z^2) erfc(-iz) computed with mpmath at 40
significant digits on a deterministic sample covering the near-origin disc,
the intermediate annulus, the far field, the real axis, the lower half-plane
and very large arguments.
"""
import random
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40


def w(z):
    return mp.exp(-z * z) * mp.erfc(-1j * z)


def sample():
    rng = random.Random(20240611)
    pts = []
    for _ in range(400):  # |z| <= 3, both half-planes
        r = 3 * rng.random() ** 0.5
        a = rng.uniform(-mp.pi, mp.pi)
        pts.append(complex(r * mp.cos(a), r * mp.sin(a)))
    for _ in range(400):  # annulus / far field, upper half-plane
        r = 10 ** rng.uniform(0.3, 3)
        a = rng.uniform(0, float(mp.pi))
        pts.append(complex(r * mp.cos(a), r * mp.sin(a)))
    for _ in range(200):  # lower half-plane with representable exp(-z^2)
        x = rng.uniform(-25, 25)
        y = -rng.uniform(0, min(25.0, abs(x) + 4.0))
        if y * y - x * x < 600:
            pts.append(complex(x, y))
    for _ in range(100):  # close to the real axis
        x = rng.uniform(-12, 12)
        y = 10 ** rng.uniform(-12, -1)
        pts.append(complex(x, y))
    for x in [0.5, 1.0, 2.0, 3.5, 5.0, 6.3, 8.0, 20.0]:
        pts.append(complex(x, 0.0))
    for s in [1e4, 1e6, 1e8]:
        pts.append(complex(s, s))
        pts.append(complex(-s, 0.5 * s))
        pts.append(complex(0.0, s))
    return pts


def main():
    out = Path(__file__).resolve().parent.parent / "crates/core/tests/data/faddeeva_reference.csv"
    lines = ["re,im,w_re,w_im"]
    for z in sample():
        v = w(mp.mpc(z.real, z.imag))
        lines.append(f"{z.real!r},{z.imag!r},{mp.nstr(v.real, 20)},{mp.nstr(v.imag, 20)}")
    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
