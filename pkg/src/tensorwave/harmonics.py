"""Vector and rank-2 tensor spherical harmonics with quadrature checks.

The central object is the tensor harmonic

    F_lm = Y_lm e_r(x)e_r + X_lm(x)e_theta + (e_r x X_lm)(x)e_phi

stored as a 3x3 complex matrix whose row index is the field-space factor
and whose column index is the frame factor of each dyad, so a field is
synthesized as the plain matrix-vector product F_lm @ v.

X_lm is evaluated through the Cartesian ladder route: the three Cartesian
components of L Y_lm are exact combinations of Y_{l,m} and Y_{l,m+-1},
which are then rotated into the local spherical frame.  Nothing in that
path divides by sin(theta), so the poles are handled exactly.  A second,
independent construction (`flm_explicit`) uses the theta-derivative ladder
identity and the m/sin(theta) form; the two must agree away from the poles
and that agreement is part of the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import ModeIndex, ladder_minus, ladder_plus, ylm
from .tensor3 import E_PHI, E_R, E_THETA

__all__ = [
    "AngularPoint",
    "OrthoBasis",
    "QuadratureRule",
    "xlm",
    "flm",
    "flm_explicit",
    "glm",
    "ortho_matrix",
    "l_squared_check",
    "lz_check",
    "l_dot_xlm_residual",
    "l_dot_er_cross_xlm_residual",
    "xlm_grid",
    "flm_grid",
]


@dataclass(frozen=True)
class AngularPoint:
    """Point on the unit sphere, theta in [0, pi], phi in [0, 2*pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")


@dataclass(frozen=True)
class OrthoBasis:
    """Orthonormal triple (a, b, c) of complex unit vectors.

    Orthonormality is checked with the Hermitian inner product to 1e-14.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = np.array(getattr(self, name), dtype=complex)
            if v.shape != (3,):
                raise ValueError(f"basis vector {name} must have shape (3,)")
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        vs = (self.a, self.b, self.c)
        for i in range(3):
            if abs(np.vdot(vs[i], vs[i]) - 1.0) > 1e-14:
                raise ValueError("basis vectors must be unit length")
            for j in range(i + 1, 3):
                if abs(np.vdot(vs[i], vs[j])) > 1e-14:
                    raise ValueError("basis vectors must be mutually orthogonal")

    @classmethod
    def spherical(cls) -> "OrthoBasis":
        return cls(E_R, E_THETA, E_PHI)


@dataclass(frozen=True)
class QuadratureRule:
    """Product rule: Gauss-Legendre in cos(theta) times uniform phi."""

    cos_nodes: np.ndarray
    weights: np.ndarray
    n_phi: int

    def __post_init__(self):
        cn = np.array(self.cos_nodes, dtype=float)
        w = np.array(self.weights, dtype=float)
        if cn.ndim != 1 or cn.shape != w.shape:
            raise ValueError("cos_nodes and weights must be 1-d and congruent")
        if np.any(w <= 0.0):
            raise ValueError("quadrature weights must be positive")
        if abs(w.sum() - 2.0) > 1e-12:
            raise ValueError("theta weights must sum to 2 (the measure of [-1,1])")
        if self.n_phi < 1:
            raise ValueError("n_phi must be >= 1")
        cn.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "cos_nodes", cn)
        object.__setattr__(self, "weights", w)

    @classmethod
    def with_counts(cls, n_theta: int, n_phi: int) -> "QuadratureRule":
        nodes, weights = np.polynomial.legendre.leggauss(n_theta)
        return cls(nodes, weights, n_phi)

    @classmethod
    def for_degree(cls, lmax: int) -> "QuadratureRule":
        """Rule resolving products of harmonics up to degree lmax."""
        return cls.with_counts(2 * lmax + 2, 4 * lmax + 4)

    def refined(self) -> "QuadratureRule":
        return self.with_counts(2 * len(self.cos_nodes), 2 * self.n_phi)

    @property
    def thetas(self) -> np.ndarray:
        return np.arccos(self.cos_nodes)

    @property
    def phis(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.n_phi) / self.n_phi

    def integrate_grid(self, values: np.ndarray) -> np.ndarray:
        """Integrate node values of shape (n_theta, n_phi, ...) over the sphere."""
        w = self.weights * (2.0 * math.pi / self.n_phi)
        return np.tensordot(w, values.sum(axis=1), axes=(0, 0))


# --- vector harmonic --------------------------------------------------------


def _xlm_tp(mode: ModeIndex, theta, phi):
    """Tangential components (v_theta, v_phi) of X_lm, broadcast over angles.

    The e_r component of L Y_lm vanishes identically, so it is not formed.
    """
    l, m = mode.l, mode.m
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if l == 0:
        shape = np.broadcast(theta, phi).shape
        z = np.zeros(shape, dtype=complex)
        return z, z
    cp, up = ladder_plus(mode)
    cm, dn = ladder_minus(mode)
    yp = ylm(up, theta, phi) if up is not None else 0.0
    ym = ylm(dn, theta, phi) if dn is not None else 0.0
    lx = 0.5 * (cp * yp + cm * ym)
    ly = (cp * yp - cm * ym) / 2j
    lz = m * ylm(mode, theta, phi)
    ct, st = np.cos(theta), np.sin(theta)
    cf, sf = np.cos(phi), np.sin(phi)
    inv = 1.0 / math.sqrt(l * (l + 1))
    v_theta = (ct * cf * lx + ct * sf * ly - st * lz) * inv
    v_phi = (cf * ly - sf * lx) * inv
    return np.asarray(v_theta, dtype=complex), np.asarray(v_phi, dtype=complex)


def xlm(mode: ModeIndex, p: AngularPoint) -> np.ndarray:
    """Vector spherical harmonic X_lm = L Y_lm / sqrt(l(l+1)).

    Returns the components over (e_r, e_theta, e_phi); the e_r component
    is exactly zero.  X_00 is the zero vector.
    """
    vt, vp = _xlm_tp(mode, p.theta, p.phi)
    return np.array([0.0 + 0.0j, complex(vt[()]), complex(vp[()])])


def xlm_grid(mode: ModeIndex, theta, phi) -> np.ndarray:
    """X_lm components stacked along the last axis for angle arrays."""
    vt, vp = _xlm_tp(mode, theta, phi)
    out = np.zeros(vt.shape + (3,), dtype=complex)
    out[..., 1] = vt
    out[..., 2] = vp
    return out


# --- tensor harmonic --------------------------------------------------------


def _assemble_f(y, vt, vp) -> np.ndarray:
    f = np.zeros(np.shape(y) + (3, 3), dtype=complex)
    f[..., 0, 0] = y
    f[..., 1, 1] = vt
    f[..., 2, 1] = vp
    f[..., 1, 2] = -vp
    f[..., 2, 2] = vt
    return f


def flm(mode: ModeIndex, p: AngularPoint) -> np.ndarray:
    """Tensor harmonic F_lm as a 3x3 complex matrix.

    Columns over (e_r, e_theta, e_phi) are Y_lm e_r, X_lm and e_r x X_lm.
    """
    y = ylm(mode, p.theta, p.phi)
    vt, vp = _xlm_tp(mode, p.theta, p.phi)
    return _assemble_f(y, complex(vt[()]), complex(vp[()]))


def flm_grid(mode: ModeIndex, theta, phi) -> np.ndarray:
    """F_lm over angle arrays; shape broadcast(theta, phi) + (3, 3)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    y = ylm(mode, theta, phi)
    vt, vp = _xlm_tp(mode, theta, phi)
    y, vt, vp = np.broadcast_arrays(y, vt, vp)
    return _assemble_f(y, vt, vp)


def flm_explicit(mode: ModeIndex, p: AngularPoint) -> np.ndarray:
    """Second construction of F_lm from the explicit component formulas.

    Uses X_theta = -m Y_lm / (sin(theta) sqrt(l(l+1))) and
    X_phi = -i (dY_lm/dtheta) / sqrt(l(l+1)) with the theta derivative
    expanded through the ladder identity
    dY/dtheta = (e^{-i phi} L+ Y - e^{+i phi} L- Y) / 2.
    Valid away from the poles; serves as a cross-check on `flm`.
    """
    l, m = mode.l, mode.m
    theta, phi = p.theta, p.phi
    y = ylm(mode, theta, phi)
    if l == 0:
        return _assemble_f(y, 0.0, 0.0)
    st = math.sin(theta)
    if st == 0.0:
        raise ValueError("explicit form is singular at the poles; use flm")
    cp, up = ladder_plus(mode)
    cm, dn = ladder_minus(mode)
    yp = ylm(up, theta, phi) if up is not None else 0.0
    ym = ylm(dn, theta, phi) if dn is not None else 0.0
    dy_dtheta = 0.5 * (cp * np.exp(-1j * phi) * yp - cm * np.exp(1j * phi) * ym)
    inv = 1.0 / math.sqrt(l * (l + 1))
    vt = -m * y / st * inv
    vp = -1j * dy_dtheta * inv
    return _assemble_f(y, vt, vp)


def glm(mode: ModeIndex, p: AngularPoint, basis: OrthoBasis) -> np.ndarray:
    """Generalized tensor harmonic Y e_r(x)a + X(x)b + (e_r x X)(x)c."""
    if not isinstance(basis, OrthoBasis):
        basis = OrthoBasis(*basis)
    y = ylm(mode, p.theta, p.phi)
    vt, vp = _xlm_tp(mode, p.theta, p.phi)
    x = np.array([0.0, complex(vt[()]), complex(vp[()])])
    er_x = np.array([0.0, -x[2], x[1]])
    return (
        y * np.outer(E_R, basis.a)
        + np.outer(x, basis.b)
        + np.outer(er_x, basis.c)
    )


# --- orthonormality quadrature ----------------------------------------------


def _gram(mode_a: ModeIndex, mode_b: ModeIndex, rule: QuadratureRule) -> np.ndarray:
    thetas = rule.thetas[:, None]
    phis = rule.phis[None, :]
    fa = flm_grid(mode_a, thetas, phis)
    fb = flm_grid(mode_b, thetas, phis)
    w = rule.weights[:, None] * (2.0 * math.pi / rule.n_phi)
    w = np.broadcast_to(w, fa.shape[:2])
    return np.einsum("tp,tpki,tpkj->ij", w, fa.conj(), fb)


def ortho_matrix(
    mode_a: ModeIndex,
    mode_b: ModeIndex,
    rule: QuadratureRule | None = None,
    check: bool = True,
) -> np.ndarray:
    """Angular Gram tensor of two tensor harmonics.

    Computes the integral of F_a^dagger F_b over the sphere with the frame
    vectors held fixed.  For l >= 1 modes the exact value is the identity
    when the modes coincide and zero otherwise; the (0,0) harmonic has only
    its longitudinal dyad, so its self-Gram is dyad(e_r, e_r).

    With `check` enabled the rule is doubled once and a RuntimeError is
    raised if the two results differ by more than 1e-12 (under-resolved
    quadrature).
    """
    if rule is None:
        rule = QuadratureRule.for_degree(max(mode_a.l, mode_b.l, 1))
    g = _gram(mode_a, mode_b, rule)
    if check:
        g2 = _gram(mode_a, mode_b, rule.refined())
        if np.max(np.abs(g - g2)) > 1e-12:
            raise RuntimeError(
                f"quadrature under-resolved for modes {mode_a}, {mode_b}: "
                f"refinement moved the result by {np.max(np.abs(g - g2)):.3e}"
            )
    return g


# --- ladder-operator identities ---------------------------------------------
#
# A "combo" is a dict mapping ModeIndex -> coefficient, representing an
# exact finite combination of scalar harmonics.  The angular momentum
# components map combos to combos with no numerical differentiation.


def _combo_add(acc: dict, mode: ModeIndex, coeff: complex) -> None:
    if coeff != 0.0:
        acc[mode] = acc.get(mode, 0.0 + 0.0j) + coeff


def _op_z(combo: dict) -> dict:
    out: dict = {}
    for mode, coeff in combo.items():
        _combo_add(out, mode, coeff * mode.m)
    return out


def _op_plus(combo: dict) -> dict:
    out: dict = {}
    for mode, coeff in combo.items():
        c, up = ladder_plus(mode)
        if up is not None:
            _combo_add(out, up, coeff * c)
    return out


def _op_minus(combo: dict) -> dict:
    out: dict = {}
    for mode, coeff in combo.items():
        c, dn = ladder_minus(mode)
        if dn is not None:
            _combo_add(out, dn, coeff * c)
    return out


def _op_x(combo: dict) -> dict:
    out = _op_plus(combo)
    for mode, coeff in _op_minus(combo).items():
        _combo_add(out, mode, coeff)
    return {mode: 0.5 * c for mode, c in out.items()}


def _op_y(combo: dict) -> dict:
    out = {mode: c for mode, c in _op_plus(combo).items()}
    for mode, coeff in _op_minus(combo).items():
        _combo_add(out, mode, -coeff)
    return {mode: c / 2j for mode, c in out.items()}


def _eval_combo(combo: dict, theta: float, phi: float) -> complex:
    return sum(
        (coeff * ylm(mode, theta, phi) for mode, coeff in combo.items()),
        start=0.0 + 0.0j,
    )


def l_squared_check(mode: ModeIndex, p: AngularPoint) -> float:
    """|L^2 Y_lm - l(l+1) Y_lm| with L^2 = Lz^2 + (L+L- + L-L+)/2."""
    base = {mode: 1.0 + 0.0j}
    total: dict = {}
    for mode2, coeff in _op_z(_op_z(base)).items():
        _combo_add(total, mode2, coeff)
    for mode2, coeff in _op_plus(_op_minus(base)).items():
        _combo_add(total, mode2, 0.5 * coeff)
    for mode2, coeff in _op_minus(_op_plus(base)).items():
        _combo_add(total, mode2, 0.5 * coeff)
    val = _eval_combo(total, p.theta, p.phi)
    target = mode.l * (mode.l + 1) * ylm(mode, p.theta, p.phi)
    return abs(val - target)


def lz_check(mode: ModeIndex, p: AngularPoint) -> float:
    """|Lz Y_lm - m Y_lm| with Lz realized as the commutator [L+, L-]/2."""
    base = {mode: 1.0 + 0.0j}
    total: dict = {}
    for mode2, coeff in _op_plus(_op_minus(base)).items():
        _combo_add(total, mode2, 0.5 * coeff)
    for mode2, coeff in _op_minus(_op_plus(base)).items():
        _combo_add(total, mode2, -0.5 * coeff)
    val = _eval_combo(total, p.theta, p.phi)
    return abs(val - mode.m * ylm(mode, p.theta, p.phi))


def _cartesian_x_combos(mode: ModeIndex):
    """Cartesian component combos of X_lm (exact ladder combinations)."""
    base = {mode: 1.0 + 0.0j}
    inv = 1.0 / math.sqrt(mode.l * (mode.l + 1))
    return tuple(
        {m2: c * inv for m2, c in comp.items()}
        for comp in (_op_x(base), _op_y(base), _op_z(base))
    )


_EPS3 = {
    (0, 1, 2): 1.0,
    (1, 2, 0): 1.0,
    (2, 0, 1): 1.0,
    (0, 2, 1): -1.0,
    (2, 1, 0): -1.0,
    (1, 0, 2): -1.0,
}

_OPS = (_op_x, _op_y, _op_z)


def l_dot_xlm_residual(mode: ModeIndex, p: AngularPoint) -> float:
    """|L . X_lm - sqrt(l(l+1)) Y_lm| via exact ladder composition."""
    if mode.l == 0:
        return 0.0
    xc = _cartesian_x_combos(mode)
    val = sum(
        _eval_combo(_OPS[i](xc[i]), p.theta, p.phi) for i in range(3)
    )
    target = math.sqrt(mode.l * (mode.l + 1)) * ylm(mode, p.theta, p.phi)
    return abs(val - target)


def l_dot_er_cross_xlm_residual(mode: ModeIndex, p: AngularPoint) -> float:
    """|L . (e_r x X_lm)| assembled by the exact operator product rule.

    With V_i = eps_{ijk} rhat_j X_k, each L_i V_i splits into the commutator
    term [L_i, rhat_j] = i eps_{ijm} rhat_m acting multiplicatively plus
    rhat_j (L_i X_k); both pieces are exact ladder evaluations at the point,
    so the returned residual is pure rounding when the identity holds.
    """
    if mode.l == 0:
        return 0.0
    theta, phi = p.theta, p.phi
    rhat = (
        math.sin(theta) * math.cos(phi),
        math.sin(theta) * math.sin(phi),
        math.cos(theta),
    )
    xc = _cartesian_x_combos(mode)
    x_vals = [_eval_combo(xc[k], theta, phi) for k in range(3)]
    lx_vals = [
        [_eval_combo(_OPS[i](xc[k]), theta, phi) for k in range(3)] for i in range(3)
    ]
    total = 0.0 + 0.0j
    for (i, j, k), sign in _EPS3.items():
        comm = 0.0 + 0.0j
        for m2 in range(3):
            comm += _EPS3.get((i, j, m2), 0.0) * rhat[m2]
        total += sign * (1j * comm * x_vals[k] + rhat[j] * lx_vals[i][k])
    return abs(total)
