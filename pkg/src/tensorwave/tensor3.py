"""Complex 3-vector and 3x3 tensor algebra over the local spherical frame.

Components are always ordered (r, theta, phi) against the right-handed
orthonormal triad (e_r, e_theta, e_phi) with e_r x e_theta = e_phi.
Vectors are numpy arrays of shape (3,), tensors of shape (3, 3), both
complex dtype. Every function is pure and never mutates its arguments.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "E_R",
    "E_THETA",
    "E_PHI",
    "IDENTITY",
    "TANGENTIAL",
    "cvec3",
    "ctensor3",
    "dyad",
    "dual",
    "trace",
    "det",
    "adjoint",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


E_R = _frozen(np.array([1.0, 0.0, 0.0], dtype=complex))
E_THETA = _frozen(np.array([0.0, 1.0, 0.0], dtype=complex))
E_PHI = _frozen(np.array([0.0, 0.0, 1.0], dtype=complex))

IDENTITY = _frozen(np.eye(3, dtype=complex))

# Projector onto the tangent plane of the sphere, 1 - e_r (x) e_r.
# Equals -dual(E_R) @ dual(E_R); see the splitting identity in the tests.
TANGENTIAL = _frozen(np.diag([0.0, 1.0, 1.0]).astype(complex))


def cvec3(v_r: complex, v_theta: complex, v_phi: complex) -> np.ndarray:
    """Assemble a complex 3-vector from its (r, theta, phi) components."""
    return np.array([v_r, v_theta, v_phi], dtype=complex)


def ctensor3(rows) -> np.ndarray:
    """Coerce a 3x3 array-like to a complex tensor, validating the shape."""
    t = np.array(rows, dtype=complex)
    if t.shape != (3, 3):
        raise ValueError(f"expected a 3x3 tensor, got shape {t.shape}")
    return t


def dyad(u, v) -> np.ndarray:
    """Outer product u (x) v with components u_i v_j."""
    return np.outer(np.asarray(u, dtype=complex), np.asarray(v, dtype=complex))


def dual(v) -> np.ndarray:
    """Antisymmetric tensor v^x realizing the cross product.

    dual(v) @ a == cross(v, a) and a @ dual(v) == cross(a, v) for any a.
    """
    v = np.asarray(v, dtype=complex)
    z = 0.0 + 0.0j
    return np.array(
        [
            [z, -v[2], v[1]],
            [v[2], z, -v[0]],
            [-v[1], v[0], z],
        ]
    )


def trace(t) -> complex:
    t = np.asarray(t)
    return complex(t[0, 0] + t[1, 1] + t[2, 2])


def det(t) -> complex:
    """Determinant by cofactor expansion along the first row."""
    t = np.asarray(t, dtype=complex)
    return complex(
        t[0, 0] * (t[1, 1] * t[2, 2] - t[1, 2] * t[2, 1])
        - t[0, 1] * (t[1, 0] * t[2, 2] - t[1, 2] * t[2, 0])
        + t[0, 2] * (t[1, 0] * t[2, 1] - t[1, 1] * t[2, 0])
    )


def adjoint(t) -> np.ndarray:
    """Adjugate tensor: adjoint(T) @ T == T @ adjoint(T) == det(T) * identity.

    Written out explicitly for the fixed 3x3 case, so no pivoting and no
    trouble with singular T (the adjugate of a rank-deficient tensor is
    still well defined).
    """
    t = np.asarray(t, dtype=complex)
    a, b, c = t[0]
    d, e, f = t[1]
    g, h, i = t[2]
    return np.array(
        [
            [e * i - f * h, c * h - b * i, b * f - c * e],
            [f * g - d * i, a * i - c * g, c * d - a * f],
            [d * h - e * g, b * g - a * h, a * e - b * d],
        ]
    )
