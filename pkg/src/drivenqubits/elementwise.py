"""Independent two-qubit oracle: symbolically expanded scalar ODE system.

The 16 coupled first-order equations for the components rho_11 .. rho_44
are derived with sympy by expanding the master equation elementwise in the
product basis {|uu>, |ud>, |du>, |dd>}, then lambdified into a numeric
coefficient matrix.  This shares no linear-algebra code with the numpy
Liouvillian builder, so agreement between the two is a real cross-check.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import sympy as sp
from scipy.integrate import solve_ivp

from .errors import ParameterError
from .linalg import DensityMatrix
from .dynamics import InitialState, StepDiagnostics, Trajectory
from .model import SystemParams
from .numerics import DEFAULT, NumericalSettings


@lru_cache(maxsize=1)
def _coefficient_matrix_fn():
    """Lambdified 16x16 matrix M(params) with d r/dt = M r, where r lists
    the density-matrix entries row by row."""
    om1, om2, d1, d2, jj, g1, g2, nb = sp.symbols(
        "Omega1 Omega2 delta1 delta2 J Gamma1 Gamma2 nbar", real=True
    )
    eye = sp.eye(2)
    sz = sp.Matrix([[1, 0], [0, -1]])
    sx = sp.Matrix([[0, 1], [1, 0]])
    sp_op = sp.Matrix([[0, 1], [0, 0]])
    sm_op = sp.Matrix([[0, 0], [1, 0]])

    def kron(a, b):
        return sp.Matrix(sp.kronecker_product(a, b))

    sz1, sz2 = kron(sz, eye), kron(eye, sz)
    sx1, sx2 = kron(sx, eye), kron(eye, sx)
    sp1, sp2 = kron(sp_op, eye), kron(eye, sp_op)
    sm1, sm2 = kron(sm_op, eye), kron(eye, sm_op)

    h = (
        d1 / 2 * sz1
        + d2 / 2 * sz2
        - jj * sz1 * sz2
        + om1 * sx1
        + om2 * sx2
        - sp.I * g1 * (nb + 1) * sp1 * sm1
        - sp.I * g1 * nb * sm1 * sp1
        - sp.I * g2 * (nb + 1) * sp2 * sm2
        - sp.I * g2 * nb * sm2 * sp2
    )

    rho_syms = [[sp.Symbol(f"rho_{i + 1}{j + 1}", complex=True) for j in range(4)] for i in range(4)]
    rho = sp.Matrix(rho_syms)

    rhs = -sp.I * h * rho + sp.I * rho * h.conjugate().T
    for g, spk, smk in ((g1, sp1, sm1), (g2, sp2, sm2)):
        rhs += 2 * g * (nb + 1) * smk * rho * spk
        rhs += 2 * g * nb * spk * rho * smk

    flat = [rho_syms[i][j] for i in range(4) for j in range(4)]
    coeff = sp.zeros(16, 16)
    for row in range(16):
        expr = sp.expand(rhs[row // 4, row % 4])
        for col, s in enumerate(flat):
            coeff[row, col] = expr.coeff(s)
    return sp.lambdify((om1, om2, d1, d2, jj, g1, g2, nb), coeff, modules="numpy")


def coefficient_matrix(p: SystemParams) -> np.ndarray:
    """Numeric coefficient matrix of the scalar ODE system for p."""
    if p.n_qubits != 2:
        raise ParameterError("elementwise oracle is defined for exactly 2 qubits")
    fn = _coefficient_matrix_fn()
    return np.asarray(
        fn(
            p.omega[0],
            p.omega[1],
            p.delta[0],
            p.delta[1],
            p.coupling_j,
            p.gamma[0],
            p.gamma[1],
            p.nbar,
        ),
        dtype=complex,
    )


def evolve_elementwise_n2(
    p: SystemParams,
    rho0,
    t_end: float,
    sample_count: int = 200,
    settings: NumericalSettings = DEFAULT,
) -> Trajectory:
    """Integrate the 16 scalar component ODEs on a uniform grid."""
    if t_end <= 0:
        raise ParameterError(f"t_end must be positive, got {t_end}")
    if sample_count < 2:
        raise ParameterError(f"sample_count must be >= 2, got {sample_count}")
    if isinstance(rho0, InitialState):
        rho0 = rho0.density_matrix(2)
    elif not isinstance(rho0, DensityMatrix):
        rho0 = DensityMatrix(rho0, (2, 2), settings)

    m = coefficient_matrix(p)
    t_grid = np.linspace(0.0, float(t_end), int(sample_count))
    sol = solve_ivp(
        lambda _t, y: m @ y,
        (0.0, float(t_end)),
        rho0.entries.reshape(-1),  # row-major component order
        t_eval=t_grid,
        method="RK45",
        rtol=settings.rtol,
        atol=settings.atol,
    )
    if not sol.success:
        raise ParameterError(f"elementwise integration failed: {sol.message}")
    from .dynamics import _hermitized

    states = tuple(
        DensityMatrix(_hermitized(sol.y[:, i].reshape(4, 4)), (2, 2), settings)
        for i in range(len(t_grid))
    )
    return Trajectory(t_grid, states, StepDiagnostics(sol.t.size, 0, 0.0))
