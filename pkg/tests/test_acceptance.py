"""Acceptance gate: every shipped guarantee, one pass/fail line each.

The checks live in ``conetorsion.cli.ACCEPTANCE_CHECKS`` — the identical
battery behind ``conetorsion selftest`` — and each enforces both its numeric
tolerance and its wall-clock budget.  Criteria covered, in order:

 1.  disc-value                    closed-form flat-disc value, 1e-12
 2.  angle-closed-form             closed form at (1,1), (1,2), (2,1), exact
 3.  cone-vs-disc                  assembled circle cone == closed form, 1e-10
 4.  model-determinant-oracle      numeric log-det anchor + full dual grid
 5.  first-sector-regularized-sum  2000-zero regularized sum vs closed form
 6.  expansion-polynomials         exact polynomials + cross-identities r<=10
 7.  zero-shift-identity           J_nu zeros == shifted-boundary zeros, 1e-10
 8.  remainder-collapse-asymptote  collapse at 0- and deep-lambda (a, b) fits
 9.  three-dim-dual-path           torus cone assembly == 3d closed form, 1e-8
 10. harmonic-sector               bitwise harmonic values for both bases
 11. mutation-sensitivity          the identity checks can actually fail
"""

import time

import pytest

from conetorsion.cli import ACCEPTANCE_CHECKS, TOL_DEFAULT


@pytest.mark.parametrize(
    "name,budget,fn",
    ACCEPTANCE_CHECKS,
    ids=[name for name, _, _ in ACCEPTANCE_CHECKS],
)
def test_acceptance(name, budget, fn):
    started = time.perf_counter()
    ok, detail = fn(TOL_DEFAULT)
    elapsed = time.perf_counter() - started
    assert ok, f"{name}: {detail}"
    assert elapsed <= budget, (
        f"{name} exceeded its {budget:g}s budget: {elapsed:.3f}s ({detail})")
