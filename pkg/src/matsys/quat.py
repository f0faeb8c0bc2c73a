"""Quaternion power-sum system a+b+c = u, a^2+b^2+c^2 = v, a^3+b^3+c^3 = w."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classify import cardano, power_sums_to_cubic

BOUNDARY_TOL = 1e-9
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class Quaternion:
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0
    x4: float = 0.0

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        return cls(*(float(x) for x in arr))

    @classmethod
    def from_complex(cls, z: complex, rho: "Quaternion | None" = None) -> "Quaternion":
        rho = rho or I
        return Quaternion(z.real) + rho * z.imag

    def to_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3, self.x4])

    def __add__(self, o):
        o = _as_quat(o)
        return Quaternion(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3, self.x4 + o.x4)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.x1, -self.x2, -self.x3, -self.x4)

    def __sub__(self, o):
        return self + (-_as_quat(o))

    def __rsub__(self, o):
        return _as_quat(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, float)):
            return Quaternion(self.x1 * o, self.x2 * o, self.x3 * o, self.x4 * o)
        return quat_mul(self, o)

    def __rmul__(self, o):
        return self * o

    def __pow__(self, k: int):
        out = Quaternion(1.0)
        for _ in range(k):
            out = out * self
        return out

    def conj(self) -> "Quaternion":
        return quat_conj(self)

    def norm(self) -> float:
        return quat_norm(self)

    def is_real(self, tol: float = 1e-12) -> bool:
        return max(abs(self.x2), abs(self.x3), abs(self.x4)) <= tol

    def close(self, o: "Quaternion", tol: float = 1e-9) -> bool:
        return float(np.max(np.abs(self.to_array() - o.to_array()))) <= tol

    def __str__(self):
        return f"{self.x1:.10g} + {self.x2:.10g}i + {self.x3:.10g}j + {self.x4:.10g}k"


def _as_quat(x) -> Quaternion:
    return x if isinstance(x, Quaternion) else Quaternion(float(x))


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    a1, a2, a3, a4 = p.x1, p.x2, p.x3, p.x4
    b1, b2, b3, b4 = q.x1, q.x2, q.x3, q.x4
    return Quaternion(
        a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
        a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
        a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
        a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1,
    )


def quat_conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.x1, -q.x2, -q.x3, -q.x4)


def quat_norm(q: Quaternion) -> float:
    return math.sqrt(q.x1 ** 2 + q.x2 ** 2 + q.x3 ** 2 + q.x4 ** 2)


ONE, I, J, K = Quaternion(1.0), Quaternion(0, 1.0), Quaternion(0, 0, 1.0), Quaternion(0, 0, 0, 1.0)


# ---------- commuting solutions ----------

def _imag(q: Quaternion) -> np.ndarray:
    return np.array([q.x2, q.x3, q.x4])


def commuting_solutions(u: Quaternion, v: Quaternion, w: Quaternion) -> list[tuple[Quaternion, Quaternion, Quaternion]]:
    """The solution commuting with rho, where u, v, w all lie in R + R rho.

    For all-real data rho is free; the solution is returned for rho = i and any unit imaginary rho works.
    """
    data = [_as_quat(x) for x in (u, v, w)]
    imags = [_imag(q) for q in data]
    big = max(imags, key=lambda x: float(np.linalg.norm(x)))
    if np.linalg.norm(big) <= 1e-12:
        rho = I
    else:
        rho = Quaternion(0.0, *(big / np.linalg.norm(big)))
    rvec = _imag(rho)
    coords = []
    for q, im in zip(data, imags):
        mu = float(np.dot(im, rvec))
        if np.linalg.norm(im - mu * rvec) > 1e-9 * (1 + np.linalg.norm(im)):
            raise ValueError("u, v, w do not commute")
        coords.append(complex(q.x1, mu))
    cubic = power_sums_to_cubic(*coords)
    roots = cardano(cubic.coeffs)
    return [tuple(Quaternion.from_complex(z, rho) for z in roots)]


def power_sum_residual(sol, u, v, w) -> float:
    a, b, c = sol
    res = [a + b + c - u, a * a + b * b + c * c - v, a ** 3 + b ** 3 + c ** 3 - w]
    return max(float(np.max(np.abs(r.to_array()))) for r in res)


# ---------- the region of non-commuting solutions ----------

def delta_value(v1: float, v2: float) -> float:
    return 3 * v1 ** 3 + 4 * v2 ** 6 + 18 * v1 * v2 ** 2 - 18


def separator_value(v1: float, v2: float) -> float:
    return v2 ** 2 - 3 * v1 ** 2


@dataclass
class RegionVerdict:
    v1: float
    v2: float
    delta_value: float
    separator_value: float
    exists_noncommuting: bool | None
    on_boundary: bool

    def to_json(self) -> dict:
        return dict(v1=self.v1, v2=self.v2, delta=self.delta_value, separator=self.separator_value,
                    exists_noncommuting=self.exists_noncommuting, on_boundary=self.on_boundary)


def region_verdict(v1: float, v2: float) -> RegionVerdict:
    if v2 <= 0:
        raise ValueError("v2 must be positive (conjugate the data otherwise)")
    d, s = delta_value(v1, v2), separator_value(v1, v2)
    boundary = abs(d) <= BOUNDARY_TOL or abs(s) <= BOUNDARY_TOL
    exists = None if boundary else (d > 0 and s < 0)
    return RegionVerdict(v1, v2, d, s, exists, boundary)


def l_threshold(v1: float, tol: float = 1e-10) -> float:
    """Positive v2 with delta(v1, v2) = 0, from bisection on 4 s^3 + 18 v1 s + 3 v1^3 - 18 with s = v2^2."""
    def g(s):
        return 4 * s ** 3 + 18 * v1 * s + 3 * v1 ** 3 - 18

    # g is eventually increasing; start to the right of its critical point
    lo = math.sqrt(max(-1.5 * v1, 0.0))
    if g(lo) > 0:
        raise ValueError("delta(v1, .) has no positive root")
    hi = max(1.0, 2 * lo)
    while g(hi) <= 0:
        hi *= 2
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            hi = mid
        else:
            lo = mid
    s = 0.5 * (lo + hi)
    if s <= 0:
        raise ValueError("delta(v1, .) has no positive root")
    return math.sqrt(s)


# ---------- numeric search for non-commuting solutions ----------

def _left(q: np.ndarray) -> np.ndarray:
    a1, a2, a3, a4 = q
    return np.array([[a1, -a2, -a3, -a4], [a2, a1, -a4, a3], [a3, a4, a1, -a2], [a4, -a3, a2, a1]])


def _right(q: np.ndarray) -> np.ndarray:
    b1, b2, b3, b4 = q
    return np.array([[b1, -b2, -b3, -b4], [b2, b1, b4, -b3], [b3, -b4, b1, b2], [b4, b3, -b2, b1]])


def _mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return _left(p) @ q


def _sq_and_jac(x):
    return _mul(x, x), _left(x) + _right(x)


def _cube_and_jac(x):
    x2 = _mul(x, x)
    return _mul(x2, x), _left(x2) + _left(x) @ _right(x) + _right(x2)


def _system(z: np.ndarray, v: np.ndarray, w: np.ndarray):
    """Residual and Jacobian of (a^2+b^2+c^2 - v, a^3+b^3+c^3 - w) with c = -a - b."""
    a, b = z[:4], z[4:]
    s = a + b
    a2, ja2 = _sq_and_jac(a)
    b2, jb2 = _sq_and_jac(b)
    s2, js2 = _sq_and_jac(s)
    a3, ja3 = _cube_and_jac(a)
    b3, jb3 = _cube_and_jac(b)
    s3, js3 = _cube_and_jac(s)
    f = np.concatenate([a2 + b2 + s2 - v, a3 + b3 - s3 - w])
    jac = np.block([[ja2 + js2, jb2 + js2], [ja3 - js3, jb3 - js3]])
    return f, jac


@dataclass
class QuatSolution:
    a: Quaternion
    b: Quaternion
    c: Quaternion
    residual: float

    def triple(self):
        return self.a, self.b, self.c

    def key(self, digits: int = 7) -> tuple:
        return tuple(round(x, digits) + 0.0 for q in (self.a, self.b) for x in q.to_array())

    def to_json(self) -> dict:
        return {"a": list(self.a.to_array()), "b": list(self.b.to_array()), "c": list(self.c.to_array()),
                "residual": self.residual}


def _newton(z, v, w, max_iter: int = 200):
    f, jac = _system(z, v, w)
    norm = float(np.linalg.norm(f))
    for _ in range(max_iter):
        if np.max(np.abs(f)) <= RESIDUAL_TOL * 1e-2:
            break
        step = np.linalg.lstsq(jac, -f, rcond=None)[0]
        t = 1.0
        while t > 1e-6:
            cand = z + t * step
            fc, jc = _system(cand, v, w)
            nc = float(np.linalg.norm(fc))
            if nc < norm:
                z, f, jac, norm = cand, fc, jc, nc
                break
            t *= 0.5
        else:
            break
    return z, float(np.max(np.abs(f)))


def _make_solution(z, residual) -> QuatSolution:
    a, b = Quaternion.from_array(z[:4]), Quaternion.from_array(z[4:])
    return QuatSolution(a, b, -a - b, residual)


def solution_orbit(sol: QuatSolution, v: Quaternion | None = None, w: Quaternion = ONE) -> list[QuatSolution]:
    """The four variants from negating (a3, b3) and/or (a4, b4); each is re-verified."""
    out = []
    for s3 in (1, -1):
        for s4 in (1, -1):
            sign = np.array([1, 1, s3, s4])
            a = Quaternion.from_array(sol.a.to_array() * sign)
            b = Quaternion.from_array(sol.b.to_array() * sign)
            c = -a - b
            res = sol.residual
            if v is not None:
                res = power_sum_residual((a, b, c), Quaternion(), v, w)
                if res > max(RESIDUAL_TOL, 10 * sol.residual):
                    raise AssertionError("sign variant is not a solution")
            out.append(QuatSolution(a, b, c, res))
    return out


def rotate_jk(sol: QuatSolution, theta: float) -> QuatSolution:
    """Conjugate by cos(theta/2) + i sin(theta/2); fixes complex data and rotates the (j, k) parts by theta."""
    h = Quaternion(math.cos(theta / 2), math.sin(theta / 2))
    hinv = h.conj()
    a, b = h * sol.a * hinv, h * sol.b * hinv
    return QuatSolution(a, b, -a - b, sol.residual)


def _normalized(sol: QuatSolution) -> QuatSolution:
    """Rotate so that a3 = a4 > 0; both sign flips then give distinct triples."""
    angle = math.atan2(sol.a.x4, sol.a.x3)
    return rotate_jk(sol, math.pi / 4 - angle)


def _canonical(sol: QuatSolution) -> tuple:
    # a3 > 0, a4 = 0 picks one point per rotation circle; the sign flips act on what remains
    flat = rotate_jk(sol, -math.atan2(sol.a.x4, sol.a.x3))
    return min(s.key(6) for s in solution_orbit(flat))


def find_noncommuting(v1: float, v2: float, attempts: int = 400, seed: int = 0,
                      max_iter: int = 200) -> list[QuatSolution]:
    """Multistart Newton for solutions with (a3, a4) != 0.

    Solutions come in circles (rotation of the j, k parts) and sign orbits; one normalized
    representative is kept per class.
    """
    rng = np.random.default_rng(seed)
    v = np.array([v1, v2, 0.0, 0.0])
    w = np.array([1.0, 0.0, 0.0, 0.0])
    found: dict[tuple, QuatSolution] = {}
    for _ in range(attempts):
        z0 = rng.uniform(-3, 3, size=8)
        z, res = _newton(z0, v, w, max_iter)
        if res > RESIDUAL_TOL:
            continue
        if math.hypot(z[2], z[3]) <= 1e-6:
            continue
        sol = _make_solution(z, res)
        found.setdefault(_canonical(sol), sol)
    out = []
    vq, wq = Quaternion(v1, v2), ONE
    for k in sorted(found):
        rep = _normalized(found[k])
        rep.residual = power_sum_residual(rep.triple(), Quaternion(), vq, wq)
        out.append(rep)
    return out


def commutator_norm(x: Quaternion, y: Quaternion) -> float:
    return quat_norm(x * y - y * x)
