#!/usr/bin/env python3
"""Regenerates the boundary-value reference solutions in data/.

The two-point problem is x''(t) = x(t)^2 - t on [0, 10] with x(0) = 0 and
x(10) = sqrt(10). It has two smooth isolated solutions: one rises with
positive initial slope and stays near the upper equilibrium branch
+sqrt(t); the other starts with slope about -3.792, dips to roughly -2.9
near t = 1 and then climbs back to meet the right boundary value.

The positive branch converges directly from a +sqrt(t) guess. The negative
branch sits close to a separatrix, so collocation from a crude guess
diverges; it is found by bisecting the initial slope of the forward
initial-value problem between early blow-up and capture into the
oscillatory well, then polished by collocation. Both solutions are written
on a uniform 2001-point grid as CSV (t, x, dx) with tolerance 1e-10.
"""

import pathlib

import numpy as np
from scipy.integrate import solve_bvp, solve_ivp

SPAN = 10.0
POINTS = 2001


def rhs(t, y):
    return np.vstack([y[1], y[0] ** 2 - t])


def bc(ya, yb):
    return np.array([ya[0], yb[0] - np.sqrt(SPAN)])


def shoot(slope):
    sol = solve_ivp(lambda t, y: [y[1], y[0] ** 2 - t], (0.0, SPAN),
                    [0.0, slope], rtol=1e-12, atol=1e-14, dense_output=True)
    if sol.t[-1] < SPAN - 1e-9:
        return 1e9, sol  # blew up before the right endpoint
    return sol.sol(SPAN)[0] - np.sqrt(SPAN), sol


def negative_guess():
    # g(lo) = +1e9 (early blow-up), g(hi) < 0 (captured, ends near the
    # lower branch); the root between them crosses sqrt(10) exactly at the
    # right endpoint.
    lo, hi = -3.80, -3.78
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        g, _ = shoot(mid)
        if g > 0:
            lo = mid
        else:
            hi = mid
    _, sol = shoot(0.5 * (lo + hi))
    t = np.linspace(0.0, SPAN, 401)
    return t, sol.sol(t)


def positive_guess():
    t = np.linspace(0.0, SPAN, 201)
    guess = np.sqrt(t)
    return t, np.vstack([guess, np.gradient(guess, t)])


def solve(branch):
    t, y0 = positive_guess() if branch == "positive" else negative_guess()
    sol = solve_bvp(rhs, bc, t, y0, tol=1e-10, max_nodes=200000)
    if sol.status != 0:
        raise RuntimeError(f"{branch}: solver failed: {sol.message}")
    return sol


def main():
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "data"
    out_dir.mkdir(exist_ok=True)
    grid = np.linspace(0.0, SPAN, POINTS)
    for branch in ("positive", "negative"):
        sol = solve(branch)
        x, dx = sol.sol(grid)
        slope = sol.sol(0.0)[1]
        assert (slope > 0) == (branch == "positive"), (branch, slope)
        path = out_dir / f"painleve_{branch}.csv"
        with open(path, "w") as f:
            f.write("t,x,dx\n")
            for row in zip(grid, x, dx):
                f.write(",".join(f"{v:.17g}" for v in row) + "\n")
        print(f"{path}: x(0)={x[0]:.3e} x(10)={x[-1]:.12f} x'(0)={slope:.9f} "
              f"min={x.min():.4f} max={x.max():.4f} nodes={sol.x.size}")


if __name__ == "__main__":
    main()
