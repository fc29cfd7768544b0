"""Deterministic self-check suites behind the `verify` CLI command.

Each suite returns a list of report entries
{"check", "max_error", "tolerance", "pass"}; a suite passes when every
entry does.  Nothing here draws random numbers: angular sample points
come from a Fibonacci lattice, coefficients from fixed per-mode formulas,
so repeated runs are bit-identical.
"""

from __future__ import annotations

import math

import numpy as np

from . import harmonics as _h
from .harmonics import (
    AngularPoint,
    QuadratureRule,
    flm,
    flm_explicit,
    l_dot_er_cross_xlm_residual,
    l_dot_xlm_residual,
    l_squared_check,
    lz_check,
    xlm,
)
from .maxwell_radial import (
    Medium,
    RadialProfile,
    TangentialState,
    fundamental_matrix,
    transfer_closed_form,
    propagate,
    wtheta_ode_residual,
)
from .specfun import ModeIndex, RadialKind, spherical_radial, ylm
from .synthesis import PartialWave, synthesize
from .tensor3 import E_R, IDENTITY, adjoint, det, dual, dyad, trace

__all__ = ["ortho_suite", "invariants_suite", "maxwell_suite", "run_suite"]


def _entry(name: str, err: float, tol: float) -> dict:
    return {
        "check": name,
        "max_error": float(err),
        "tolerance": float(tol),
        "pass": bool(err <= tol),
    }


def _fib_lattice(n: int):
    """n well-spread deterministic points, poles excluded."""
    i = np.arange(n)
    theta = np.arccos(1.0 - 2.0 * (i + 0.5) / n)
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    phi = (2.0 * math.pi * i / golden) % (2.0 * math.pi)
    return theta, phi


def _modes(lmin: int, lmax: int):
    return [
        ModeIndex(l, m) for l in range(lmin, lmax + 1) for m in range(-l, l + 1)
    ]


def _grid_stacks(modes, rule: QuadratureRule):
    thetas = rule.thetas[:, None]
    phis = rule.phis[None, :]
    y = np.empty((len(modes), len(rule.cos_nodes), rule.n_phi), dtype=complex)
    x = np.zeros(y.shape + (3,), dtype=complex)
    f = np.zeros(y.shape + (3, 3), dtype=complex)
    for a, mode in enumerate(modes):
        ya = np.broadcast_to(
            np.asarray(ylm(mode, thetas, phis), dtype=complex), y.shape[1:]
        )
        vt, vp = _h._xlm_tp(mode, thetas, phis)
        vt = np.broadcast_to(vt, y.shape[1:])
        vp = np.broadcast_to(vp, y.shape[1:])
        y[a] = ya
        x[a, ..., 1] = vt
        x[a, ..., 2] = vp
        f[a] = _h._assemble_f(ya, vt, vp)
    w = np.broadcast_to(
        rule.weights[:, None] * (2.0 * math.pi / rule.n_phi), y.shape[1:]
    )
    return y, x, f, w


def ortho_suite(lmax: int = 4, tol: float = 1e-10) -> list:
    """Quadrature orthonormality of the scalar, vector and tensor harmonics."""
    modes = _modes(0, lmax)
    rule = QuadratureRule.for_degree(lmax)
    y, x, f, w = _grid_stacks(modes, rule)

    gram_f = np.einsum("tp,atpki,btpkj->abij", w, f.conj(), f)
    expected = np.zeros_like(gram_f)
    for a, mode in enumerate(modes):
        expected[a, a] = IDENTITY if mode.l >= 1 else dyad(E_R, E_R)
    err_f = np.max(np.abs(gram_f - expected))

    gram_y = np.einsum("tp,atp,btp->ab", w, y.conj(), y)
    err_y = np.max(np.abs(gram_y - np.eye(len(modes))))

    sel = [a for a, mode in enumerate(modes) if mode.l >= 1]
    xs = x[sel]
    gram_x = np.einsum("tp,atpk,btpk->ab", w, xs.conj(), xs)
    err_x = np.max(np.abs(gram_x - np.eye(len(sel))))

    # e_r . (X_a* cross X_b) integrates to zero for every pair
    cross = np.einsum(
        "tp,atp,btp->ab", w, xs[..., 1].conj(), xs[..., 2]
    ) - np.einsum("tp,atp,btp->ab", w, xs[..., 2].conj(), xs[..., 1])
    err_cross = np.max(np.abs(cross))

    y2, x2, f2, w2 = _grid_stacks(modes, rule.refined())
    gram_f2 = np.einsum("tp,atpki,btpkj->abij", w2, f2.conj(), f2)
    err_conv = np.max(np.abs(gram_f - gram_f2))

    return [
        _entry("f_gram_identity", err_f, tol),
        _entry("y_orthonormality", err_y, tol),
        _entry("x_orthonormality", err_x, tol),
        _entry("x_cross_product_integral", err_cross, tol),
        _entry("quadrature_convergence", err_conv, 1e-12),
    ]


def invariants_suite(lmax: int = 4, n_points: int = 100, tol: float = 1e-12) -> list:
    """Pointwise tensor identities and operator eigenrelations."""
    thetas, phis = _fib_lattice(n_points)
    er_cross = dual(E_R)

    err_trace = err_det = err_adj = err_tradj = err_trsq = 0.0
    err_comm = err_paths = 0.0
    err_l2 = err_lz = err_ldx = err_ldrx = 0.0

    for mode in _modes(0, lmax):
        for th, ph in zip(thetas, phis):
            p = AngularPoint(float(th), float(ph))
            fmat = flm(mode, p)
            y = ylm(mode, th, ph)
            xv = xlm(mode, p)
            s = np.linalg.norm(fmat)
            s = max(s, 1e-30)
            xdotx = complex(np.sum(xv * xv))

            err_trace = max(err_trace, abs(trace(fmat) - (y + 2.0 * xv[1])) / s)
            err_det = max(err_det, abs(det(fmat) - y * xdotx) / s**3)
            adj = adjoint(fmat)
            err_adj = max(
                err_adj,
                np.max(np.abs(adj @ fmat - det(fmat) * np.eye(3))) / s**3,
                np.max(np.abs(fmat @ adj - det(fmat) * np.eye(3))) / s**3,
            )
            err_tradj = max(
                err_tradj, abs(trace(adj) - (xdotx + 2.0 * y * xv[1])) / s**2
            )
            err_trsq = max(
                err_trsq,
                abs(trace(fmat @ fmat) - (trace(fmat) ** 2 - 2.0 * trace(adj)))
                / s**2,
            )
            err_comm = max(
                err_comm,
                np.max(np.abs(fmat @ er_cross - er_cross @ fmat)) / s,
                np.max(np.abs(fmat @ IDENTITY - IDENTITY @ fmat)) / s,
            )
            err_paths = max(
                err_paths, np.max(np.abs(fmat - flm_explicit(mode, p))) / s
            )
            err_l2 = max(err_l2, l_squared_check(mode, p))
            err_lz = max(err_lz, lz_check(mode, p))
            err_ldx = max(err_ldx, l_dot_xlm_residual(mode, p))
            err_ldrx = max(err_ldrx, l_dot_er_cross_xlm_residual(mode, p))

    return [
        _entry("trace_identity", err_trace, tol),
        _entry("det_identity", err_det, tol),
        _entry("adjoint_identity", err_adj, tol),
        _entry("trace_adjoint_identity", err_tradj, tol),
        _entry("trace_square_identity", err_trsq, tol),
        _entry("frame_commutation", err_comm, 1e-14),
        _entry("construction_paths_agree", err_paths, tol),
        _entry("l_squared_eigenrelation", err_l2, 1e-10),
        _entry("lz_eigenrelation", err_lz, 1e-10),
        _entry("l_dot_x_relation", err_ldx, 1e-10),
        _entry("l_dot_er_cross_x_relation", err_ldrx, 1e-10),
    ]


def _fields_at(waves, k, med, pts):
    samples = synthesize(waves, k, med, pts)
    e = np.array([s.e for s in samples])
    h = np.array([s.h for s in samples])
    return e, h


def _curl_fd(waves, k, med, r, th, ph, h_rel=1e-4):
    """Central-difference curl of both fields at one point."""
    hr, ha = h_rel * r, h_rel
    pts = [
        [r, th, ph],
        [r + hr, th, ph],
        [r - hr, th, ph],
        [r, th + ha, ph],
        [r, th - ha, ph],
        [r, th, ph + ha],
        [r, th, ph - ha],
    ]
    e, h = _fields_at(waves, k, med, pts)

    def curl(v):
        v0 = v[0]
        dr = (v[1] - v[2]) / (2 * hr)
        dt = (v[3] - v[4]) / (2 * ha)
        dp = (v[5] - v[6]) / (2 * ha)
        st, ct = math.sin(th), math.cos(th)
        return np.array(
            [
                (ct * v0[2] + st * dt[2] - dp[1]) / (r * st),
                dp[0] / (r * st) - (v0[2] + r * dr[2]) / r,
                (v0[1] + r * dr[1]) / r - dt[0] / r,
            ]
        )

    return e[0], h[0], curl(e), curl(h)


def maxwell_suite(lmax: int = 3, tol: float = 1e-5) -> list:
    """Field-level checks: curl equations, radial ODE, propagator agreement."""
    k = 1.1
    med = Medium(1.0, 1.0)
    waves = []
    for l in range(1, lmax + 1):
        m = min(1, l - 1)
        waves.append(
            PartialWave(
                ModeIndex(l, m),
                np.array([1.0, 0.5j]) / l,
                np.array([0.3, -0.2j]) / l,
                (RadialKind.HANKEL1, RadialKind.HANKEL2),
            )
        )
    err_curl = 0.0
    for r, th, ph in [(1.7, 1.0, 0.7), (2.4, 2.0, 4.0)]:
        e0, h0, ce, ch = _curl_fd(waves, k, med, r, th, ph)
        scale_h = np.max(np.abs(k * h0))
        scale_e = np.max(np.abs(k * e0))
        err_curl = max(
            err_curl,
            np.max(np.abs(ce - 1j * k * med.mu * h0)) / scale_h,
            np.max(np.abs(ch + 1j * k * med.eps * e0)) / scale_e,
        )

    med2 = Medium(2.25, 1.0)
    err_ode = 0.0
    for l in range(1, lmax + 1):
        r_mid = max(2.0 * l, 4.0) / (abs(med2.n) * k)
        r = np.linspace(0.95 * r_mid, 1.05 * r_mid, 401)
        for kind in (RadialKind.BESSEL_J, RadialKind.HANKEL1):
            f = np.array(
                [spherical_radial(kind, l, med2.n * k * rr)[0] for rr in r]
            )
            err_ode = max(err_ode, wtheta_ode_residual(l, k, med2, r, f))

    err_prop = 0.0
    prof2 = RadialProfile((3.0 / k,), (Medium(2.25, 1.0), Medium(1.0, 1.21)))
    for l in range(1, min(lmax, 4) + 1):
        phi0 = fundamental_matrix(
            l, RadialKind.BESSEL_J, RadialKind.BESSEL_Y, k, 0.5 / k, med2
        )
        c = np.array([1.0, -0.5j, 0.25, 1.5j]) / l
        w0 = TangentialState.from_vector4(phi0 @ c / (0.5 / k))
        w1 = propagate(l, k, med2, 0.5 / k, 10.0 / k, w0)
        t = transfer_closed_form(l, k, 0.5 / k, 10.0 / k, med2)
        ref = t @ (w0.as_vector4() * (0.5 / k))
        err_prop = max(
            err_prop,
            np.max(np.abs(w1.as_vector4() - ref / (10.0 / k)))
            / np.max(np.abs(ref / (10.0 / k))),
        )
        w2 = propagate(l, k, prof2, 0.5 / k, 10.0 / k, w0)
        t1 = transfer_closed_form(l, k, 0.5 / k, 3.0 / k, prof2.media[0])
        t2 = transfer_closed_form(l, k, 3.0 / k, 10.0 / k, prof2.media[1])
        ref2 = t2 @ (t1 @ (w0.as_vector4() * (0.5 / k)))
        err_prop = max(
            err_prop,
            np.max(np.abs(w2.as_vector4() - ref2 / (10.0 / k)))
            / np.max(np.abs(ref2 / (10.0 / k))),
        )

    return [
        _entry("curl_equations", err_curl, tol),
        _entry("wtheta_ode_residual", err_ode, 1e-6),
        _entry("propagate_vs_closed_form", err_prop, 1e-8),
    ]


_SUITES = {
    "ortho": ortho_suite,
    "invariants": invariants_suite,
    "maxwell": maxwell_suite,
}


def run_suite(name: str, lmax: int | None = None, tol: float | None = None) -> list:
    """Dispatch a named suite with optional overrides of lmax and tolerance."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(_SUITES)}")
    kwargs = {}
    if lmax is not None:
        if lmax < 1:
            raise ValueError("lmax must be >= 1")
        kwargs["lmax"] = lmax
    if tol is not None:
        if not tol > 0:
            raise ValueError("tolerance must be positive")
        kwargs["tol"] = tol
    return _SUITES[name](**kwargs)
