"""Shared fixtures: the test-suite systems and hand-built solver states."""

import random

from ffkronecker.kronecker import SolverConfig, analyze, make_state
from ffkronecker.slp import LinearForms, apply_linear_change, parse_system

CIRCLE = "field p={p}\nvars X1 X2\npoly X1^2 + X2^2 - 1\n"
CIRCLE_LINE = "field p={p}\nvars X1 X2\npoly X1^2 + X2^2 - 1\npoly X2 - X1\n"
PARABOLA = "field p={p}\nvars X1 X2\npoly X2^2 - X1\n"
MODEL = "field p={p}\nvars X1 X2 X3\npoly X3^2 - X1 - X2\npoly X2^2 - X1\n"

# name -> template; every entry is a reduced regular sequence for all p in 11..31
ORACLE_SUITE = {
    "circle": CIRCLE,
    "circle-line": "field p={p}\nvars X1 X2\npoly X1^2 + X2^2 - 1\npoly X1 + 3*X2 - 2\n",
    "model": MODEL,
    "sphere": "field p={p}\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n",
    "cubic-surface": "field p={p}\nvars X1 X2 X3\npoly X1*X2*X3 - X1 - 1\n",
    "two-quadrics": "field p={p}\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\npoly X1*X2 - X3\n",
    "quadric-pair-4": "field p={p}\nvars X1 X2 X3 X4\npoly X1^2 + X2^2 - X3^2 - 1\npoly X1*X4 - X2 + X3\n",
    "twisted-cubic": "field p={p}\nvars X1 X2 X3\npoly X2 - X1^2\npoly X3 - X1*X2\n",
    "quartic-surface": "field p={p}\nvars X1 X2 X3\npoly X1^4 + X2^3 + X3^2 - X1*X2 - 1\n",
}

# absolutely irreducible systems meeting the field size requirement
END_TO_END = {
    "sphere": "field p=10007\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n",
    "paraboloid": "field p=10007\nvars X1 X2 X3\npoly X3 - X1^2 - X2^2\n",
    "sphere4": "field p=10007\nvars X1 X2 X3 X4\npoly X1^2 + X2^2 + X3^2 + X4^2 - 1\n",
    "cubic": "field p=20011\nvars X1 X2 X3\npoly X1*X2*X3 - 1\n",
    "model": "field p=40009\nvars X1 X2 X3\npoly X3^2 - X1 - X2\npoly X2^2 - X1\n",
}

LOOSE = SolverConfig(extension_degree=1, check_preconditions=False, enforce_field_size=False)


def manual_state(text, matrix=None, shift=None, point=(), config=LOOSE, seed=0):
    """A solver state with prescribed forms and lifting point over K = F_q."""
    F, polys = parse_system(text)
    problem = analyze(polys, config)
    state = make_state(problem, config, random.Random(seed))
    n = problem.n
    if matrix is None:
        forms = LinearForms.identity(state.field, n)
    else:
        forms = LinearForms.make(state.field, matrix, shift)
    state.forms = forms
    state.point = tuple(state.field.normalize(c) for c in point)
    state.system_y = [apply_linear_change(s, forms) for s in state.system]
    state._progs = {}
    return state
