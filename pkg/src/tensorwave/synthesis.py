"""Partial-wave synthesis, angular projection, multipole amplitudes, and
the homogeneous-sphere boundary match.

A partial wave is one (l, m) term of the field expansion: a pair of
constant coefficient 2-vectors (c1, c2) over (e_theta, e_phi) attached to
two radial function kinds.  Fields are assembled as

    E(r, theta, phi) = sum_waves  F_lm(theta, phi) @ El(r)
    H(r, theta, phi) = sum_waves  F_lm(theta, phi) @ Hl(r)

where the tangential parts of El, Hl come from the closed-form radial
blocks and the radial parts from the longitudinal reconstruction.
Projection inverts this with the angular Gram identity of F_lm, one mode
at a time, as a plain quadrature at fixed radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .harmonics import QuadratureRule, _assemble_f, _xlm_tp
from .maxwell_radial import (
    Medium,
    TangentialState,
    fundamental_matrix,
    homogeneous_eta_zeta,
    longitudinal_components,
    _as_k,
)
from .specfun import ModeIndex, RadialKind, ylm

__all__ = [
    "PartialWave",
    "FieldSample",
    "MultipoleAmplitudes",
    "synthesize",
    "project",
    "project_sampled",
    "recover_coefficients",
    "multipole_amplitudes",
    "match_sphere",
]


@dataclass(frozen=True, eq=False)
class PartialWave:
    """Coefficients (c1, c2) and radial kinds of a single (l, m) wave."""

    mode: ModeIndex
    c1: np.ndarray
    c2: np.ndarray
    kinds: tuple

    def __post_init__(self):
        if self.mode.l < 1:
            raise ValueError(
                "partial waves need l >= 1; the (0,0) harmonic carries no "
                "transverse field"
            )
        for name in ("c1", "c2"):
            v = np.array(getattr(self, name), dtype=complex)
            if v.shape != (2,):
                raise ValueError(f"{name} must be a 2-vector on (e_theta, e_phi)")
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        kinds = tuple(self.kinds)
        if len(kinds) != 2 or not all(isinstance(kk, RadialKind) for kk in kinds):
            raise ValueError("kinds must be a pair of RadialKind values")
        object.__setattr__(self, "kinds", kinds)


@dataclass(frozen=True, eq=False)
class FieldSample:
    """Full E, H vectors in the local spherical frame at one point."""

    r: float
    theta: float
    phi: float
    e: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("field samples require r > 0")
        for name in ("e", "h"):
            v = np.array(getattr(self, name), dtype=complex)
            if v.shape != (3,):
                raise ValueError(f"{name} must have shape (3,)")
            v.setflags(write=False)
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class MultipoleAmplitudes:
    """Electric/magnetic multipole strengths keyed by (l, m)."""

    a_e: dict = field(default_factory=dict)
    a_m: dict = field(default_factory=dict)


def _radial_vectors(wave: PartialWave, k: float, med: Medium, r: float):
    """(Hl, El) full 3-vectors of one wave at radius r."""
    l = wave.mode.l
    eta1, eta2, zeta1, zeta2 = homogeneous_eta_zeta(
        l, wave.kinds[0], wave.kinds[1], k, r, med
    )
    h_t = eta1 @ wave.c1 + eta2 @ wave.c2
    e_t = zeta1 @ wave.c1 + zeta2 @ wave.c2
    w = TangentialState.from_components(h_t[0], h_t[1], e_t[0], e_t[1])
    e_r, h_r = longitudinal_components(l, k, r, med, w)
    return (
        np.array([h_r, h_t[0], h_t[1]]),
        np.array([e_r, e_t[0], e_t[1]]),
    )


def synthesize(waves, k, med: Medium, points) -> list:
    """Evaluate the summed field of `waves` at the given (r, theta, phi) points.

    `points` is an (N, 3) array-like of positions with r > 0; the medium is
    homogeneous (layered problems are synthesized region by region with the
    coefficient sets belonging to each region).  Returns FieldSample objects
    in input order.
    """
    k = _as_k(k)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError("points must be an (N, 3) array of (r, theta, phi)")
    if np.any(pts[:, 0] <= 0):
        raise ValueError("synthesis points require r > 0")
    n = len(pts)
    e_out = np.zeros((n, 3), dtype=complex)
    h_out = np.zeros((n, 3), dtype=complex)
    radii, inverse = np.unique(pts[:, 0], return_inverse=True)
    for wave in waves:
        y = ylm(wave.mode, pts[:, 1], pts[:, 2])
        vt, vp = _xlm_tp(wave.mode, pts[:, 1], pts[:, 2])
        y, vt, vp = np.broadcast_arrays(
            np.asarray(y, dtype=complex), vt, vp
        )
        f_all = _assemble_f(y, vt, vp)
        hl = np.empty((len(radii), 3), dtype=complex)
        el = np.empty((len(radii), 3), dtype=complex)
        for i, r in enumerate(radii):
            hl[i], el[i] = _radial_vectors(wave, k, med, r)
        h_out += np.einsum("nij,nj->ni", f_all, hl[inverse])
        e_out += np.einsum("nij,nj->ni", f_all, el[inverse])
    return [
        FieldSample(pts[i, 0], pts[i, 1], pts[i, 2], e_out[i], h_out[i])
        for i in range(n)
    ]


def project_sampled(
    e_grid: np.ndarray,
    h_grid: np.ndarray,
    mode: ModeIndex,
    rule: QuadratureRule,
):
    """Project field values sampled on the rule's (theta, phi) grid.

    `e_grid`, `h_grid` have shape (n_theta, n_phi, 3) in the local frame.
    Returns (Hl, El), the per-mode radial 3-vectors at the sampling radius.
    """
    nt, nphi = len(rule.cos_nodes), rule.n_phi
    e_grid = np.asarray(e_grid, dtype=complex)
    h_grid = np.asarray(h_grid, dtype=complex)
    if e_grid.shape != (nt, nphi, 3) or h_grid.shape != (nt, nphi, 3):
        raise ValueError(
            f"field grids must have shape ({nt}, {nphi}, 3) matching the rule"
        )
    thetas = rule.thetas[:, None]
    phis = rule.phis[None, :]
    y = ylm(mode, thetas, phis)
    vt, vp = _xlm_tp(mode, thetas, phis)
    y, vt, vp = np.broadcast_arrays(np.asarray(y, dtype=complex), vt, vp)
    f_grid = _assemble_f(y, vt, vp)
    w = rule.weights[:, None] * (2.0 * math.pi / rule.n_phi)
    w = np.broadcast_to(w, (nt, nphi))
    hl = np.einsum("tp,tpki,tpk->i", w, f_grid.conj(), h_grid)
    el = np.einsum("tp,tpki,tpk->i", w, f_grid.conj(), e_grid)
    return hl, el


def project(
    field_fn,
    mode: ModeIndex,
    rule: QuadratureRule | None = None,
    check: bool = True,
):
    """Project a field callable onto one mode at fixed radius.

    `field_fn(theta, phi)` must accept scalar angles and return the pair
    (e, h) of local-frame 3-vectors of the field at the caller's radius.
    Returns (Hl, El).  With `check` enabled the quadrature is doubled once
    and a RuntimeError raised if the projection moves by more than 1e-12.
    """
    if rule is None:
        rule = QuadratureRule.for_degree(max(mode.l, 1))

    def run(rl: QuadratureRule):
        nt, nphi = len(rl.cos_nodes), rl.n_phi
        e_grid = np.empty((nt, nphi, 3), dtype=complex)
        h_grid = np.empty((nt, nphi, 3), dtype=complex)
        for i, th in enumerate(rl.thetas):
            for j, ph in enumerate(rl.phis):
                e, h = field_fn(float(th), float(ph))
                e_grid[i, j] = e
                h_grid[i, j] = h
        return project_sampled(e_grid, h_grid, mode, rl)

    hl, el = run(rule)
    if check:
        hl2, el2 = run(rule.refined())
        drift = max(np.max(np.abs(hl - hl2)), np.max(np.abs(el - el2)))
        if drift > 1e-12:
            raise RuntimeError(
                f"projection quadrature under-resolved for {mode}: "
                f"refinement moved the result by {drift:.3e}"
            )
    return hl, el


def recover_coefficients(
    hl,
    el,
    mode: ModeIndex,
    k,
    r: float,
    med: Medium,
    kinds: tuple,
):
    """Invert the radial solution basis at radius r for (c1, c2).

    `hl`, `el` are the projected per-mode 3-vectors; only their tangential
    parts enter (the radial parts are determined by them and serve as a
    consistency check elsewhere).
    """
    k = _as_k(k)
    hl = np.asarray(hl, dtype=complex)
    el = np.asarray(el, dtype=complex)
    u = r * np.array([hl[1], hl[2], el[1], el[2]])
    phi = fundamental_matrix(mode.l, kinds[0], kinds[1], k, r, med)
    try:
        c = np.linalg.solve(phi, u)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(
            f"radial basis {kinds} is degenerate at r={r}; cannot recover "
            "coefficients"
        ) from exc
    return c[0:2], c[2:4]


def multipole_amplitudes(waves) -> MultipoleAmplitudes:
    """Read off a_E = c1 . e_theta and a_M = c1 . e_phi per mode.

    Requires every wave to be in multipole form: outgoing Hankel-1 first
    kind and c2 = 0.  Duplicate modes are rejected.
    """
    a_e: dict = {}
    a_m: dict = {}
    for wave in waves:
        key = (wave.mode.l, wave.mode.m)
        if key in a_e:
            raise ValueError(f"duplicate mode {key} in multipole set")
        if wave.kinds[0] is not RadialKind.HANKEL1:
            raise ValueError(
                f"mode {key}: multipole amplitudes need kind1 = hankel1, "
                f"got {wave.kinds[0].value}"
            )
        if np.any(wave.c2 != 0):
            raise ValueError(
                f"mode {key}: multipole amplitudes need c2 = 0 (pure outgoing)"
            )
        a_e[key] = complex(wave.c1[0])
        a_m[key] = complex(wave.c1[1])
    return MultipoleAmplitudes(a_e, a_m)


def match_sphere(
    l: int,
    k,
    sphere: Medium,
    host: Medium,
    radius: float,
    incident: PartialWave,
):
    """Match a regular incident wave on a homogeneous sphere of the given radius.

    Continuity of the tangential state at r = radius fixes the outgoing
    scattered coefficients in the host and the regular interior ones.  The
    two polarizations decouple into 2x2 systems:

        theta:  j(x_i) d            - h(x_h) s            = j(x_h) c
                (1/eps_i) Dj(x_i) d - (1/eps_h) Dh(x_h) s = (1/eps_h) Dj(x_h) c
        phi:    same with eps -> mu

    with x_i = n_i k a, x_h = n_h k a and Df = d(r f)/dr.  Returns
    (scattered, interior) PartialWave objects; scattered carries Hankel-1,
    interior the regular Bessel kind, both with c2 = 0.
    """
    if l < 1:
        raise ValueError("sphere matching needs l >= 1")
    if radius <= 0:
        raise ValueError("sphere radius must be positive")
    k = _as_k(k)
    if incident.mode.l != l:
        raise ValueError(
            f"incident wave has l={incident.mode.l}, expected l={l}"
        )
    if incident.kinds[0] is not RadialKind.BESSEL_J or np.any(incident.c2 != 0):
        raise ValueError(
            "incident wave must be regular: kind1 = bessel_j and c2 = 0"
        )

    from .specfun import spherical_radial

    xi = sphere.n * k * radius
    xh = host.n * k * radius
    fj_i, dj_i = spherical_radial(RadialKind.BESSEL_J, l, xi)
    fj_h, dj_h = spherical_radial(RadialKind.BESSEL_J, l, xh)
    fh_h, dh_h = spherical_radial(RadialKind.HANKEL1, l, xh)

    def solve_pol(w_in: complex, w_host: complex, c: complex):
        a = np.array(
            [
                [fj_i, -fh_h],
                [dj_i / w_in, -dh_h / w_host],
            ],
            dtype=complex,
        )
        rhs = np.array([fj_h, dj_h / w_host], dtype=complex) * c
        try:
            sol = np.linalg.solve(a, rhs)
        except np.linalg.LinAlgError as exc:
            raise RuntimeError(
                f"singular matching matrix at l={l}, k={k}, radius={radius}"
            ) from exc
        return sol[0], sol[1]  # interior, scattered

    d_theta, s_theta = solve_pol(sphere.eps, host.eps, incident.c1[0])
    d_phi, s_phi = solve_pol(sphere.mu, host.mu, incident.c1[1])

    scattered = PartialWave(
        incident.mode,
        np.array([s_theta, s_phi]),
        np.zeros(2, dtype=complex),
        (RadialKind.HANKEL1, RadialKind.HANKEL2),
    )
    interior = PartialWave(
        incident.mode,
        np.array([d_theta, d_phi]),
        np.zeros(2, dtype=complex),
        (RadialKind.BESSEL_J, RadialKind.BESSEL_Y),
    )
    return scattered, interior
