#!/usr/bin/env python3
"""Reference basis-pursuit solutions from a general-purpose conic solver.

Writes tests/data/bp_oracle.json: ten complex BP instances (dense Gaussian
A, 30 x 128) with the CLARABEL optimum of min ||b||_1 s.t. A b = y. The
C++ recovery tests read this file and compare the ADMM output against it.
"""
import json
import pathlib

import cvxpy as cp
import numpy as np

M, N = 30, 128
SPARSITIES = [5] * 5 + [11] * 5


def instance(rng, s):
    a = rng.standard_normal((M, N)) / np.sqrt(M)
    beta = np.zeros(N, dtype=complex)
    support = rng.choice(N, size=s, replace=False)
    beta[support] = (rng.standard_normal(s) + 1j * rng.standard_normal(s)) / np.sqrt(2)
    beta /= np.linalg.norm(beta)
    return a, beta, a @ beta


def solve(a, y):
    x = cp.Variable(N, complex=True)
    prob = cp.Problem(cp.Minimize(cp.norm1(x)), [a @ x == y])
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10)
    assert prob.status == cp.OPTIMAL, prob.status
    return x.value, prob.value


def main():
    rng = np.random.default_rng(20240611)
    out = []
    for s in SPARSITIES:
        a, beta, y = instance(rng, s)
        sol, objective = solve(a, y)
        out.append({
            "sparsity": s,
            "rows": M,
            "cols": N,
            "a": a.flatten(order="C").tolist(),
            "beta_true_re": beta.real.tolist(),
            "beta_true_im": beta.imag.tolist(),
            "y_re": y.real.tolist(),
            "y_im": y.imag.tolist(),
            "solution_re": sol.real.tolist(),
            "solution_im": sol.imag.tolist(),
            "objective": objective,
        })
    path = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "bp_oracle.json"
    path.write_text(json.dumps({"solver": "CLARABEL", "instances": out}))
    for inst in out:
        sol = np.array(inst["solution_re"]) + 1j * np.array(inst["solution_im"])
        beta = np.array(inst["beta_true_re"]) + 1j * np.array(inst["beta_true_im"])
        print(inst["sparsity"], inst["objective"], np.linalg.norm(sol - beta) / np.linalg.norm(beta))


if __name__ == "__main__":
    main()
