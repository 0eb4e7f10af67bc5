#!/usr/bin/env python3
"""Regenerate tests/data/specfun_fixtures.json with mpmath at 50 digits.

Run from the repository root:

    python3 tools/gen_specfun_fixtures.py

The point set is deterministic (fixed seed).  Lower-half-plane Faddeeva
arguments are kept at moderate modulus: w there is dominated by
2 exp(-z^2) whose phase has condition number ~ |Im z^2|, so a 1e-12
comparison against any correctly rounded implementation is only meaningful
where that conditioning stays bounded.
"""

from __future__ import annotations

import json
import math
import random
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "specfun_fixtures.json"


def w_of_z(z: complex):
    zz = mp.mpc(z)
    return mp.exp(-zz * zz) * mp.erfc(-1j * zz)


def c2l(v) -> list[float]:
    return [float(v.real), float(v.imag)]


def main() -> None:
    rng = random.Random(20260822)
    entries = []

    # Faddeeva, upper half plane: all magnitudes, well conditioned everywhere
    for _ in range(20):
        r = 10.0 ** rng.uniform(-3, 3)
        th = rng.uniform(0.02, math.pi - 0.02)
        z = complex(r * math.cos(th), r * math.sin(th))
        entries.append(("wofz", z, complex(w_of_z(z))))

    # Faddeeva, lower half plane, moderate modulus
    for _ in range(15):
        r = 10.0 ** rng.uniform(-2, 1)
        th = rng.uniform(-math.pi + 0.02, -0.02)
        z = complex(r * math.cos(th), r * math.sin(th))
        entries.append(("wofz", z, complex(w_of_z(z))))

    # Faddeeva on the real axis
    for x in [-8.5, -3.0, -1.2, -0.31, -0.004, 0.0, 0.02, 0.77, 2.4, 6.0]:
        entries.append(("wofz", complex(x, 0.0), complex(w_of_z(complex(x)))))

    # complex erf, |z| <= 6, all quadrants plus both axes
    erf_pts = [
        1e-7 + 3e-8j, 0.004 - 0.006j, 0.3 + 0.2j, -0.45 + 0.1j,
        0.49999j, -0.52j, 1.0 + 1.0j, -1.3 + 0.8j, 2.0 - 0.5j,
        -2.2 - 1.9j, 3.1 + 0.4j, 0.25 - 3.3j, -4.0 + 0.3j, 4.5 - 0.2j,
        5.8 + 0.6j, -5.5 - 0.5j, 0.9, -1.7, 3.3, -6.0,
        0.05 + 2.5j, -0.08 - 4.4j, 1.9 + 2.1j, -2.8 + 2.6j, 0.6 - 1.1j,
    ]
    for z in erf_pts:
        z = complex(z)
        entries.append(("erf", z, complex(mp.erf(mp.mpc(z)))))

    # Dawson integral on the real axis
    for x in [-30.0, -4.2, -0.7, -0.09, -1e-6,
              2e-7, 0.03, 1.0, 2.8, 24.0]:
        entries.append(("dawsn", complex(x, 0.0),
                        complex(float(mp.sqrt(mp.pi) / 2 * mp.exp(-mp.mpf(x) ** 2) * mp.erfi(x)), 0.0)))

    # scaled complementary error function, real axis
    for x in [-25.0, -12.0, -5.5, -1.9, -0.4, 0.0, 0.8, 3.5, 17.0, 90.0]:
        entries.append(("erfcx", complex(x, 0.0),
                        complex(float(mp.exp(mp.mpf(x) ** 2) * mp.erfc(x)), 0.0)))

    # imaginary error function, real axis (values grow like exp(x^2)/x)
    for x in [-24.0, -9.0, -3.1, -1.1, -0.2, 0.15, 1.4, 4.8, 12.0, 25.0]:
        entries.append(("erfi", complex(x, 0.0),
                        complex(float(mp.erfi(x)), 0.0)))

    assert len(entries) == 100, len(entries)
    payload = {
        "dps": mp.mp.dps,
        "count": len(entries),
        "entries": [
            {"fn": fn, "z": c2l(z), "val": c2l(v)} for fn, z, v in entries
        ],
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(payload, indent=1) + "\n")
    print(f"wrote {OUT} ({len(entries)} entries)")


if __name__ == "__main__":
    main()
